#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwsearch/types.hpp"

namespace qwsearch::asymptotics {

// S1 = Σ_{(k,ℓ)≠(0,0)} 1/(1 − cos θ_{kℓ}) over the √N×√N momentum grid.
double lattice_s1(int sqrt_n);

// S2 = Σ_{(k,ℓ)≠(0,0)} sin²(π(k·x0+ℓ·y0)/√N) / (sin²(πk/√N)+sin²(πℓ/√N)).
// (x0,y0) is canonicalized so the k↔ℓ interchange symmetry is exact.
double lattice_s2(int sqrt_n, int x0, int y0);

// S3 = Σ_{(k,ℓ)∈[0,√N/2]²∖(0,0)} (1+(−1)^{k+ℓ})/(k+ℓ)² = ln N/2 + O(1).
double lattice_s3(int sqrt_n);

// c_estimate(√N) = S1/(N ln N); converges to ≈ 0.32 and is bounded by
// 2/π² ≤ c ≤ 1.
double c_estimate(int sqrt_n);

LatticeSums lattice_sums(int sqrt_n, int x0, int y0);

// Closed forms for the two marked-pair placements, evaluated with the
// finite-size c from lattice_s1: adjacent t_opt = π√(S1)/(2√2) with
// p = 1/(4c ln N); antipodal t_opt = π√(S1)/4 with p = 1/(2c ln N).
// Antipodal placement requires even √N (OddSideForAntipodal).
AsymptoticPrediction lattice_closed_forms(int sqrt_n, Regime regime);

// S_odd/S_even = (n/N)·Σ over wavevectors with odd/even overlap with v0 of
// 1/weight; computed in O(n²) from the weight-only total and the signed
// difference (never by 2^n enumeration).  Throws ZeroVector.
HypercubeSums hypercube_sums(int n, std::uint64_t v0);

// 2^n enumeration oracle for tests (n ≤ 24).
HypercubeSums hypercube_sums_brute(int n, std::uint64_t v0);

// Fubini (ordered Bell) numbers a_0..a_kmax via a_k = (1/2)Σ_i i^k/2^i.
std::vector<double> fubini_numbers(int kmax);

// lhs = (n/2^n)·Σ_k C(n,k)/k;
// rhs = 2·Σ_{k=0}^{8} a_k/n^k − (n/2^n)(H_n + 2/n).
std::pair<double, double> lemma_b1_check(int n);

// Next-term truncation bound 10·a_9/n⁹.
double lemma_b1_bound(int n);

// lhs = Σ_{vec k≠0} (−1)^{k·v0}/weight(k): by enumeration when brute,
// else as the Krawtchouk-weighted sum Σ_w K_w(v;n)/w;
// rhs = C(n,v)⁻¹ Σ_{k=1}^{n−v} C(n,v+k)/k − H_v (digamma term exact for
// integer arguments).
std::pair<double, double> lemma_b2_check(int n, int v, bool brute);

double harmonic(int v);  // H_v

// λ = 2/√N, t_opt = π√N/4, p_succ = 1/2.
AsymptoticPrediction hypercube_m2_prediction(int n);

// t_opt = (π/(2√2))·√(N/m), λ = √(2m/N), p_succ = 1/2.
AsymptoticPrediction conjecture_prediction(int n, int m);

}  // namespace qwsearch::asymptotics
