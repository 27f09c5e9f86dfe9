#pragma once

#include <utility>
#include <vector>

#include "qwsearch/types.hpp"

namespace qwsearch::simulator {

// Grover coin 2J/d − I (J all-ones); orthogonal and symmetric.
Eigen::MatrixXd grover_coin(int d);

// Dense amplitude vector over coin⊗position space, coin-major layout:
// index = a·N + v.
struct WalkState {
  std::vector<cplx> amplitudes;
  GraphDescriptor graph;

  double norm() const;  // compensated L2 norm
};

// Brute-force evolution of the coined walk with oracle: one step applies
// the marked-state reflection, then the Grover coin, then the flip-flop
// shift, all matrix-free in O(d·N).
class Walk {
 public:
  static constexpr int kDenseDimCap = 12288;

  Walk(GraphDescriptor graph, MarkedSet marked);

  const GraphDescriptor& graph() const { return graph_; }
  const MarkedSet& marked() const { return marked_; }

  // Uniform superposition over the whole coined space.
  WalkState initial_state() const;

  void apply_step(WalkState& state) const;

  // Σ_m |⟨d_c,m|ψ⟩|² for the current state.
  double marked_probability(const WalkState& state) const;

  // p(t) for t = 0..t_max from the uniform start.
  ProbabilityCurve probability_curve(int t_max) const;

  // Materialized one-step operator (entries are real for both families).
  Eigen::MatrixXcd dense_operator() const;

  // (λ, residual): smallest |eigenphase| above 1e-9 of the dense operator,
  // and the gap to the next distinct |eigenphase|.
  std::pair<double, double> smallest_nonzero_eigenphase() const;

 private:
  GraphDescriptor graph_;
  MarkedSet marked_;
  std::vector<std::uint64_t> shift_targets_;  // per (coin, vertex) move table
  std::vector<int> coin_flips_;               // coin relabeling under the shift

  void check_dense_cap() const;
  Eigen::MatrixXd dense_real_operator() const;
};

// Default curve horizon ceil(3π√N/4): covers the first probability peak
// with margin for every studied case.
int default_t_max(const GraphDescriptor& graph);

}  // namespace qwsearch::simulator
