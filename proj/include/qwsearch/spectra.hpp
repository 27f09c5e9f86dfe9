#pragma once

#include <vector>

#include "qwsearch/types.hpp"

namespace qwsearch::spectra {

// Krawtchouk polynomial K_k(u;n) = Σ_j (−1)^j C(u,j) C(n−u,k−j),
// evaluated in O(n) without enumerating wavevectors.
double krawtchouk(int k, int u, int n);

// Analytic spectral model of the coined walk on the √N×√N torus with the
// Grover coin and flip-flop shift.  One group per (k,ℓ,±) momentum sector
// (phases cos θ = (cos 2πk/√N + cos 2πℓ/√N)/2), a single full-weight group
// at the θ = π sector present for even √N, and the zero-phase group carrying
// only the uniform state (block 1/N).
SpectralModel build_lattice_model(int sqrt_n, const MarkedSet& marked);

// Analytic spectral model of the coined walk on the n-hypercube: groups at
// φ = 0 (uniform state, block 1/N), φ = π (block (−1)^{h(m)+h(m′)}/N), and
// ±ω_k for 1 ≤ k ≤ n−1 with cos ω_k = 1 − 2k/n and block
// K_k(h(m⊕m′);n)/(2N).
SpectralModel build_hypercube_model(int n, const MarkedSet& marked);

// Numerical fallback for arbitrary unitaries: joint diagonalization of the
// Hermitian pair H = (U+U†)/2, K = (U−U†)/(2i), eigenphases clustered with
// `cluster_tol`, blocks assembled from marked-state projections only.
SpectralModel build_generic_model(const Eigen::MatrixXcd& unitary,
                                  const std::vector<Eigen::VectorXcd>& marked_states,
                                  const Eigen::VectorXcd& initial_state,
                                  double cluster_tol = 1e-8);

}  // namespace qwsearch::spectra
