#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwsearch {

using cplx = std::complex<double>;

enum class GraphFamily { lattice, hypercube, generic };

// Identifies a graph family together with its size parameter:
// side length √N for the torus lattice, dimension n for the hypercube.
struct GraphDescriptor {
  GraphFamily family = GraphFamily::generic;
  int size = 0;

  std::uint64_t vertex_count() const;  // N
  int coin_dim() const;                // d: 4 (lattice) or n (hypercube)
  double hilbert_dim() const;          // d·N (double: exact for all sizes used)
  std::string name() const;
};

GraphDescriptor lattice_graph(int sqrt_n);
GraphDescriptor hypercube_graph(int n);

// Ordered set of distinct marked vertices, stored as flat labels:
// x·√N + y for the lattice, the bit-vector value for the hypercube.
// The ordering fixes the row/column convention of every |M|×|M| block.
struct MarkedSet {
  std::vector<std::uint64_t> vertices;

  int count() const { return static_cast<int>(vertices.size()); }
};

// Validates range and distinctness; throws InvalidMarkedSet.
MarkedSet make_marked_set(std::vector<std::uint64_t> vertices,
                          std::uint64_t vertex_count);

// One distinct eigenphase φ of the unperturbed walk operator together with
// the marked-restricted block of the spectral projector,
// G[m,m′] = ⟨d_c,m|P_φ|d_c,m′⟩.  `degeneracy` counts the eigenvectors
// folded into the block.
struct PhaseGroup {
  double phase = 0.0;
  Eigen::MatrixXcd block;
  std::int64_t degeneracy = 1;
};

// Everything the solver needs about a walk instance: the phase groups,
// the initial-state overlaps u[m] = ⟨ψ(0)|d_c,m⟩, and bookkeeping.
struct SpectralModel {
  std::vector<PhaseGroup> groups;
  Eigen::VectorXcd initial_overlaps;
  int zero_phase_index = -1;
  double hilbert_dim = 0.0;
  GraphDescriptor graph;
  MarkedSet marked;
  // Diagnostics for models built numerically: rank of the zero-phase
  // overlap block, and whether clustering produced a near-zero group that
  // does not sit at 0 exactly.
  int zero_phase_rank = 1;
  bool zero_phase_straddle = false;

  int marked_count() const { return marked.count(); }
  double phi_min() const;  // smallest positive group phase
};

struct SeriesCoefficients {
  double A = 0, B = 0, C = 0, D = 0, E = 0;
};

struct SolverDiagnostics {
  double null_residual = 0.0;        // ‖Λx‖/‖x‖ at the root
  double normalization_error = 0.0;  // |constraint − 1| after scaling
  int sign_changes = 0;              // bracket-grid sign changes observed
  int bracket_rounds = 0;            // grid densification rounds used
};

struct FindLambdaResult {
  double lambda = 0.0;
  double residual = 0.0;  // |g(λ*)| with g(λ) = λ^|M|·det(Λ^λ)
  int sign_changes = 0;
  int bracket_rounds = 0;
};

struct LambdaSolution {
  double lambda = 0.0;
  double t_opt = 0.0;
  double p_succ = 0.0;
  double t_run = 0.0;
  double alpha = 0.0;
  double det_residual = 0.0;
  Eigen::VectorXcd marked_amplitudes;  // x[m] = ⟨d_c,m|λ⟩
  cplx initial_overlap{0.0, 0.0};      // ⟨λ|ψ(0)⟩
  SolverDiagnostics diagnostics;
};

// p(t) sampled at every integer step t = 0..t_max.
struct ProbabilityCurve {
  std::vector<double> p;
  int t_peak = 0;
  double p_peak = 0.0;
};

struct LatticeSums {
  double S1 = 0, S2 = 0, S3 = 0;
  double c_estimate = 0;
};

struct HypercubeSums {
  double S_odd = 0, S_even = 0;
  std::uint64_t v0 = 0;
};

enum class Regime {
  lattice_adjacent,
  lattice_antipodal,
  hypercube_m2,
  hypercube_conjecture,
};

struct AsymptoticPrediction {
  double lambda = 0, t_opt = 0, p_succ = 0;
  Regime regime = Regime::hypercube_m2;
};

struct ScalingRow {
  int n = 0;
  double N = 0;
  int m_count = 0;
  double lambda = 0, t_opt = 0, p_succ = 0, t_run = 0, rescaled_t = 0;
  std::string error;  // empty on success
};

}  // namespace qwsearch
