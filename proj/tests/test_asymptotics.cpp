#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwsearch/asymptotics.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/kahan.hpp"
#include "qwsearch/solver.hpp"
#include "qwsearch/spectra.hpp"
#include "oracles.hpp"

using namespace qwsearch;
using namespace qwsearch::asymptotics;

namespace {

constexpr double kPi = std::numbers::pi;

// Extended-precision (long double) re-evaluation of the S1 double loop —
// an independent accumulation path for the oracle comparison.
double s1_extended(int s) {
  long double total = 0.0L;
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      if (k == 0 && l == 0) continue;
      const long double ck = std::cos(2.0L * static_cast<long double>(kPi) * k / s);
      const long double cl = std::cos(2.0L * static_cast<long double>(kPi) * l / s);
      total += 1.0L / (1.0L - 0.5L * (ck + cl));
    }
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("lattice S1 small and frozen values") {
  CHECK(lattice_s1(2) == doctest::Approx(oracle::kS1Side2).epsilon(1e-14));
  CHECK(lattice_s1(64) == doctest::Approx(oracle::kS1Side64).epsilon(1e-9));
  CHECK(lattice_s1(256) == doctest::Approx(oracle::kS1Side256).epsilon(1e-9));
  CHECK(lattice_s1(1024) == doctest::Approx(oracle::kS1Side1024).epsilon(1e-9));
}

TEST_CASE("lattice S1 against an extended-precision accumulation") {
  CHECK(std::abs(lattice_s1(64) - s1_extended(64)) / s1_extended(64) <= 1e-10);
}

TEST_CASE("c estimate at 256 and 1024 and bounds everywhere") {
  CHECK(std::abs(c_estimate(256) - 0.32) <= 0.02);
  CHECK(c_estimate(1024) == doctest::Approx(oracle::kC1024).epsilon(1e-4));
  CHECK(c_estimate(2) ==
        doctest::Approx(2.5 / (4.0 * std::log(4.0))).epsilon(1e-14));
  for (int s : {16, 32, 64, 128, 256}) {
    const double c = c_estimate(s);
    CHECK(c >= 2.0 / (kPi * kPi));
    CHECK(c <= 1.0);
  }
}

TEST_CASE("c estimate converges monotonically along the doubling sequence") {
  const double deltas[4] = {
      std::abs(c_estimate(128) - c_estimate(64)),
      std::abs(c_estimate(256) - c_estimate(128)),
      std::abs(c_estimate(512) - c_estimate(256)),
      std::abs(c_estimate(1024) - c_estimate(512)),
  };
  CHECK(deltas[1] < deltas[0]);
  CHECK(deltas[2] < deltas[1]);
  CHECK(deltas[3] < deltas[2]);
  CHECK(c_estimate(64) == doctest::Approx(oracle::kC64).epsilon(1e-4));
  CHECK(c_estimate(128) == doctest::Approx(oracle::kC128).epsilon(1e-4));
  CHECK(c_estimate(512) == doctest::Approx(oracle::kC512).epsilon(1e-4));
}

TEST_CASE("lattice S2 special displacement and symmetry") {
  for (int s : {4, 6, 8, 16, 32, 64}) {
    const double n_vertices = static_cast<double>(s) * s;
    CHECK(std::abs(lattice_s2(s, 1, 0) - 0.5 * (n_vertices - 1.0)) <=
          1e-9 * n_vertices);
    CHECK(lattice_s2(s, 0, 1) == lattice_s2(s, 1, 0));  // exact interchange
    CHECK(lattice_s2(s, 2, 3) == lattice_s2(s, 3, 2));
  }
  CHECK_THROWS_AS((void)lattice_s2(8, 0, 0), QwError);
}

TEST_CASE("antipodal sandwich ties S1 - S2 to N times S3") {
  for (int s : {32, 64, 128}) {
    const double s1 = lattice_s1(s);
    const double s2 = lattice_s2(s, s / 2, s / 2);
    const double s3 = lattice_s3(s);
    const double n_vertices = static_cast<double>(s) * s;
    const double ratio = (s1 - s2) / (n_vertices * s3);
    CHECK(ratio >= 2.0 / (kPi * kPi) * 0.7);
    CHECK(ratio <= 1.3);
  }
}

TEST_CASE("antipodal difference scales like half the log") {
  // S1 − S2 = c·N·ln(N)/2 within 25% at √N = 32.
  const int s = 32;
  const double n_vertices = static_cast<double>(s) * s;
  const double c = c_estimate(s);
  const double expected = 0.5 * c * n_vertices * std::log(n_vertices);
  const double actual = lattice_s1(s) - lattice_s2(s, 16, 16);
  CHECK(std::abs(actual - expected) / expected <= 0.25);
}

TEST_CASE("lattice S3 matches its leading logarithm") {
  for (int s : {32, 64, 128}) {
    const double n_vertices = static_cast<double>(s) * s;
    // S3 = ln N/2 + O(1): check the difference stays bounded.
    CHECK(std::abs(lattice_s3(s) - 0.5 * std::log(n_vertices)) <= 2.0);
  }
}

TEST_CASE("lattice closed forms: exact regime ratios") {
  const AsymptoticPrediction adjacent =
      lattice_closed_forms(64, Regime::lattice_adjacent);
  const AsymptoticPrediction antipodal =
      lattice_closed_forms(64, Regime::lattice_antipodal);
  CHECK(antipodal.t_opt / adjacent.t_opt ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(adjacent.p_succ / antipodal.p_succ == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(adjacent.t_opt == doctest::Approx(kPi / (2.0 * adjacent.lambda)));
  CHECK_THROWS_AS((void)lattice_closed_forms(9, Regime::lattice_antipodal),
                  QwError);
}

TEST_CASE("lattice closed form is near the solver root at 64x64") {
  const AsymptoticPrediction adjacent =
      lattice_closed_forms(64, Regime::lattice_adjacent);
  const double root =
      solver::find_lambda(spectra::build_lattice_model(
                              64, MarkedSet{{0, 64}}))
          .lambda;
  CHECK(std::abs(adjacent.lambda - root) / root <= 0.15);
}

TEST_CASE("hypercube sums match brute-force enumeration") {
  for (int n : {4, 8, 12, 16}) {
    for (std::uint64_t v0 :
         {std::uint64_t{1}, (std::uint64_t{1} << (n / 2)) - 1,
          (std::uint64_t{1} << n) - 1}) {
      const HypercubeSums fast = hypercube_sums(n, v0);
      const HypercubeSums brute = hypercube_sums_brute(n, v0);
      CHECK(std::abs(fast.S_odd - brute.S_odd) <=
            1e-9 * std::abs(brute.S_odd));
      CHECK(std::abs(fast.S_even - brute.S_even) <=
            1e-9 * std::abs(brute.S_even));
    }
  }
}

TEST_CASE("hypercube sums approach 1 at n=40") {
  for (std::uint64_t v0 : {std::uint64_t{1}, (std::uint64_t{1} << 20) - 1,
                           (std::uint64_t{1} << 40) - 1}) {
    const HypercubeSums sums = hypercube_sums(40, v0);
    CHECK(std::abs(sums.S_odd - 1.0) <= 5.0 / 40.0);
    CHECK(std::abs(sums.S_even - 1.0) <= 5.0 / 40.0);
  }
}

TEST_CASE("sum of parity parts is independent of v0") {
  const double reference =
      hypercube_sums(12, 1).S_odd + hypercube_sums(12, 1).S_even;
  for (std::uint64_t v0 : {std::uint64_t{5}, std::uint64_t{0xFFF},
                           std::uint64_t{0x800}}) {
    const HypercubeSums sums = hypercube_sums(12, v0);
    CHECK(sums.S_odd + sums.S_even == doctest::Approx(reference).epsilon(1e-12));
  }
  // And it equals the direct weight-only total, computed independently.
  KahanAccumulator<> acc;
  double ck = 1.0;
  for (int k = 1; k <= 12; ++k) {
    ck *= static_cast<double>(12 - k + 1) / k;
    acc += ck / k;
  }
  const double total = (12.0 / 4096.0) * acc.value();
  CHECK(reference == doctest::Approx(total).epsilon(1e-12));
  CHECK_THROWS_AS((void)hypercube_sums(12, 0), QwError);
}

TEST_CASE("fubini numbers: frozen values and recurrence oracle") {
  const std::vector<double> numbers = fubini_numbers(9);
  for (int k = 0; k <= 9; ++k) {
    CHECK(numbers[static_cast<std::size_t>(k)] ==
          doctest::Approx(oracle::kFubini[k]).epsilon(1e-12));
  }
  // a_k = Σ_{j=1}^{k} C(k,j)·a_{k−j}, a_0 = 1.
  std::vector<double> recurrence(10, 0.0);
  recurrence[0] = 1.0;
  for (int k = 1; k <= 9; ++k) {
    double binom = 1.0;
    for (int j = 1; j <= k; ++j) {
      binom = binom * (k - j + 1) / j;
      recurrence[static_cast<std::size_t>(k)] +=
          binom * recurrence[static_cast<std::size_t>(k - j)];
    }
  }
  for (int k = 0; k <= 9; ++k) {
    CHECK(numbers[static_cast<std::size_t>(k)] ==
          doctest::Approx(recurrence[static_cast<std::size_t>(k)]).epsilon(1e-12));
  }
}

TEST_CASE("weight-sum expansion check stays within the truncation bound") {
  for (int n : {30, 40, 50, 60}) {
    const auto [lhs, rhs] = lemma_b1_check(n);
    CHECK(std::abs(lhs - rhs) <= lemma_b1_bound(n));
  }
}

TEST_CASE("weight-sum expansion gap shrinks like the bound") {
  double previous_scaled = 1e300;
  for (int n : {30, 40, 50, 60}) {
    const auto [lhs, rhs] = lemma_b1_check(n);
    const double scaled = std::abs(lhs - rhs) * std::pow(n, 9);
    // gap·n⁹ bounded ⇒ gap shrinks at least like const/n⁹.
    CHECK(scaled <= 10.0 * oracle::kFubini[9]);
    previous_scaled = scaled;
  }
  (void)previous_scaled;
}

TEST_CASE("signed weight identity: hand value at v=n") {
  const auto [lhs, rhs] = lemma_b2_check(4, 4, true);
  CHECK(lhs == doctest::Approx(-25.0 / 12.0).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(-25.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("signed weight identity: enumeration equals closed form") {
  for (int n : {4, 8, 12}) {
    for (int v = 1; v <= n; ++v) {
      const auto [brute_lhs, rhs] = lemma_b2_check(n, v, true);
      CHECK(std::abs(brute_lhs - rhs) <= 1e-9);
      const auto [fast_lhs, fast_rhs] = lemma_b2_check(n, v, false);
      CHECK(std::abs(fast_lhs - rhs) <= 1e-9);
      CHECK(fast_rhs == rhs);
    }
  }
  CHECK_THROWS_AS((void)lemma_b2_check(8, 0, false), QwError);
  CHECK_THROWS_AS((void)lemma_b2_check(8, 9, false), QwError);
}

TEST_CASE("harmonic numbers as exact rationals") {
  CHECK(harmonic(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  double running = 0.0;
  for (int v = 1; v <= 10; ++v) {
    running += 1.0 / v;
    CHECK(harmonic(v) == doctest::Approx(running).epsilon(1e-14));
  }
}

TEST_CASE("hypercube pair prediction values and scaling") {
  const AsymptoticPrediction p10 = hypercube_m2_prediction(10);
  CHECK(p10.t_opt == doctest::Approx(8.0 * kPi).epsilon(1e-12));
  const AsymptoticPrediction p12 = hypercube_m2_prediction(12);
  CHECK(p12.t_opt == doctest::Approx(2.0 * p10.t_opt).epsilon(1e-12));
  CHECK(p10.p_succ == 0.5);
  CHECK(p10.t_opt == doctest::Approx(kPi / (2.0 * p10.lambda)));
}

TEST_CASE("solver approaches the pair prediction at n=12") {
  const AsymptoticPrediction prediction = hypercube_m2_prediction(12);
  const LambdaSolution solution = solver::analyze(
      spectra::build_hypercube_model(12, MarkedSet{{0, (1ull << 12) - 1}}));
  CHECK(std::abs(solution.t_opt - prediction.t_opt) / prediction.t_opt <= 0.10);
}

TEST_CASE("conjecture prediction special cases") {
  const AsymptoticPrediction pair = conjecture_prediction(10, 2);
  const AsymptoticPrediction closed = hypercube_m2_prediction(10);
  CHECK(pair.lambda == doctest::Approx(closed.lambda).epsilon(1e-14));
  CHECK(pair.t_opt == doctest::Approx(closed.t_opt).epsilon(1e-14));

  const AsymptoticPrediction m8 = conjecture_prediction(10, 8);
  CHECK(m8.t_opt / pair.t_opt == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS((void)conjecture_prediction(10, 0), QwError);
}

TEST_CASE("solver approaches the conjecture at n=12 with three marked") {
  const std::vector<std::uint64_t> marked =
      MarkedSet{{101, 1000, 3003}}.vertices;
  const LambdaSolution solution =
      solver::analyze(spectra::build_hypercube_model(12, MarkedSet{marked}));
  const AsymptoticPrediction prediction = conjecture_prediction(12, 3);
  CHECK(std::abs(solution.t_opt - prediction.t_opt) / prediction.t_opt <= 0.10);
}

TEST_CASE("n=20 pair root against the frozen product") {
  const double lambda =
      solver::find_lambda(
          spectra::build_hypercube_model(20, MarkedSet{{0, (1ull << 20) - 1}}))
          .lambda;
  CHECK(lambda * std::sqrt(std::ldexp(1.0, 20)) ==
        doctest::Approx(oracle::kHyper20LambdaSqrtN).epsilon(1e-5));
}

}  // TEST_SUITE
