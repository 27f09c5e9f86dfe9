#include "qwsearch/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwsearch/errors.hpp"
#include "qwsearch/kahan.hpp"
#include "qwsearch/spectra.hpp"

namespace qwsearch::asymptotics {

namespace {

constexpr double kPi = std::numbers::pi;

void require_side(int sqrt_n) {
  if (sqrt_n < 2) {
    throw QwError(ErrorCode::UnsupportedDimension, "lattice side < 2");
  }
}

void require_dim(int n) {
  if (n < 1 || n > 62) {
    throw QwError(ErrorCode::UnsupportedDimension,
                  "hypercube dimension out of [1, 62]");
  }
}

int popcount64(std::uint64_t v) { return static_cast<int>(__builtin_popcountll(v)); }

// Σ_{k=1}^{n−v} r_k/k with r_k = C(n,v+k)/C(n,v) built as a running ratio
// product; shared by the O(n²) sums and the closed-form side of the
// weight-resolved identity.
double ratio_tail(int n, int v) {
  KahanAccumulator<> acc;
  double r = 1.0;
  for (int k = 1; k <= n - v; ++k) {
    r *= static_cast<double>(n - v - k + 1) / static_cast<double>(v + k);
    acc += r / k;
  }
  return acc.value();
}

}  // namespace

double lattice_s1(int sqrt_n) {
  require_side(sqrt_n);
  const int s = sqrt_n;
  std::vector<double> sin_sq(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) {
    const double t = std::sin(kPi * k / s);
    sin_sq[static_cast<std::size_t>(k)] = t * t;
  }
  KahanAccumulator<> acc;
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      if (k == 0 && l == 0) continue;
      acc += 1.0 / (sin_sq[static_cast<std::size_t>(k)] +
                    sin_sq[static_cast<std::size_t>(l)]);
    }
  }
  return acc.value();
}

double lattice_s2(int sqrt_n, int x0, int y0) {
  require_side(sqrt_n);
  const int s = sqrt_n;
  int a = ((x0 % s) + s) % s;
  int b = ((y0 % s) + s) % s;
  if (a == 0 && b == 0) {
    throw QwError(ErrorCode::ZeroVector, "displacement (0,0) is not allowed");
  }
  // Canonical order makes S2(x0,y0) and S2(y0,x0) bitwise identical.
  if (a > b) std::swap(a, b);

  std::vector<double> sin_sq(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) {
    const double t = std::sin(kPi * k / s);
    sin_sq[static_cast<std::size_t>(k)] = t * t;
  }
  KahanAccumulator<> acc;
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      if (k == 0 && l == 0) continue;
      const long long phase =
          (static_cast<long long>(k) * a + static_cast<long long>(l) * b) % s;
      acc += sin_sq[static_cast<std::size_t>(phase)] /
             (sin_sq[static_cast<std::size_t>(k)] +
              sin_sq[static_cast<std::size_t>(l)]);
    }
  }
  return acc.value();
}

double lattice_s3(int sqrt_n) {
  require_side(sqrt_n);
  const int half = sqrt_n / 2;
  KahanAccumulator<> acc;
  for (int k = 0; k <= half; ++k) {
    for (int l = 0; l <= half; ++l) {
      if (k == 0 && l == 0) continue;
      if ((k + l) % 2 != 0) continue;  // the (1 + (−1)^{k+ℓ}) factor
      const double sum = static_cast<double>(k + l);
      acc += 2.0 / (sum * sum);
    }
  }
  return acc.value();
}

double c_estimate(int sqrt_n) {
  require_side(sqrt_n);
  const double n_vertices = static_cast<double>(sqrt_n) * sqrt_n;
  return lattice_s1(sqrt_n) / (n_vertices * std::log(n_vertices));
}

LatticeSums lattice_sums(int sqrt_n, int x0, int y0) {
  LatticeSums sums;
  sums.S1 = lattice_s1(sqrt_n);
  sums.S2 = lattice_s2(sqrt_n, x0, y0);
  sums.S3 = lattice_s3(sqrt_n);
  const double n_vertices = static_cast<double>(sqrt_n) * sqrt_n;
  sums.c_estimate = sums.S1 / (n_vertices * std::log(n_vertices));
  return sums;
}

AsymptoticPrediction lattice_closed_forms(int sqrt_n, Regime regime) {
  require_side(sqrt_n);
  const double s1 = lattice_s1(sqrt_n);
  const double n_vertices = static_cast<double>(sqrt_n) * sqrt_n;
  const double c = s1 / (n_vertices * std::log(n_vertices));
  AsymptoticPrediction out;
  out.regime = regime;
  if (regime == Regime::lattice_adjacent) {
    out.lambda = std::sqrt(2.0) / std::sqrt(s1);
    out.p_succ = 1.0 / (4.0 * c * std::log(n_vertices));
  } else if (regime == Regime::lattice_antipodal) {
    if (sqrt_n % 2 != 0) {
      throw QwError(ErrorCode::OddSideForAntipodal,
                    "antipodal placement needs an even side");
    }
    out.lambda = 2.0 / std::sqrt(s1);
    out.p_succ = 1.0 / (2.0 * c * std::log(n_vertices));
  } else {
    throw QwError(ErrorCode::ConfigError,
                  "closed forms exist for the two lattice placements only");
  }
  out.t_opt = kPi / (2.0 * out.lambda);
  return out;
}

HypercubeSums hypercube_sums(int n, std::uint64_t v0) {
  require_dim(n);
  if (v0 == 0) {
    throw QwError(ErrorCode::ZeroVector, "v0 must be nonzero");
  }
  if (v0 >> n != 0) {
    throw QwError(ErrorCode::InvalidMarkedSet, "v0 does not fit in n bits");
  }
  const int v = popcount64(v0);
  const double n_vertices = std::ldexp(1.0, n);

  // Total over all nonzero wavevectors: (n/N)·Σ_k C(n,k)/k.
  KahanAccumulator<> total_acc;
  double ck = 1.0;
  for (int k = 1; k <= n; ++k) {
    ck *= static_cast<double>(n - k + 1) / k;
    total_acc += ck / k;
  }
  const double total = (n / n_vertices) * total_acc.value();

  // Signed difference Σ (−1)^{k·v0}/weight = (n/N)(Σ_k r_k/k − H_v): the
  // parity sum over a fixed weight shell reduces to a binomial ratio.
  const double diff = (n / n_vertices) * (ratio_tail(n, v) - harmonic(v));

  HypercubeSums sums;
  sums.v0 = v0;
  sums.S_even = 0.5 * (total + diff);
  sums.S_odd = 0.5 * (total - diff);
  return sums;
}

HypercubeSums hypercube_sums_brute(int n, std::uint64_t v0) {
  require_dim(n);
  if (n > 24) {
    throw QwError(ErrorCode::DimensionTooLarge,
                  "brute-force enumeration capped at n = 24");
  }
  if (v0 == 0) {
    throw QwError(ErrorCode::ZeroVector, "v0 must be nonzero");
  }
  if (v0 >> n != 0) {
    throw QwError(ErrorCode::InvalidMarkedSet, "v0 does not fit in n bits");
  }
  const std::uint64_t n_vertices = 1ull << n;
  KahanAccumulator<> odd, even;
  for (std::uint64_t k = 1; k < n_vertices; ++k) {
    const double term = 1.0 / popcount64(k);
    if (popcount64(k & v0) % 2 != 0) {
      odd += term;
    } else {
      even += term;
    }
  }
  const double scale = n / static_cast<double>(n_vertices);
  HypercubeSums sums;
  sums.v0 = v0;
  sums.S_odd = scale * odd.value();
  sums.S_even = scale * even.value();
  return sums;
}

std::vector<double> fubini_numbers(int kmax) {
  if (kmax < 0 || kmax > 20) {
    throw QwError(ErrorCode::ConfigError, "kmax out of [0, 20]");
  }
  std::vector<double> numbers(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) {
    // a_k = (1/2)·Σ_{i≥0} i^k/2^i (with 0^0 = 1).
    KahanAccumulator<> acc;
    double pow2 = 1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double term = (i == 0 ? (k == 0 ? 1.0 : 0.0)
                                  : std::pow(static_cast<double>(i), k)) /
                          pow2;
      acc += term;
      pow2 *= 2.0;
      if (i > k + 4 && term < 1e-20 * std::abs(acc.value())) break;
    }
    numbers[static_cast<std::size_t>(k)] = 0.5 * acc.value();
  }
  return numbers;
}

std::pair<double, double> lemma_b1_check(int n) {
  require_dim(n);
  const double n_vertices = std::ldexp(1.0, n);

  KahanAccumulator<> lhs_acc;
  double ck = 1.0;
  for (int k = 1; k <= n; ++k) {
    ck *= static_cast<double>(n - k + 1) / k;
    lhs_acc += ck / k;
  }
  const double lhs = (n / n_vertices) * lhs_acc.value();

  const std::vector<double> fubini = fubini_numbers(8);
  KahanAccumulator<> series;
  double inv_pow = 1.0;
  for (int k = 0; k <= 8; ++k) {
    series += fubini[static_cast<std::size_t>(k)] * inv_pow;
    inv_pow /= n;
  }
  const double rhs =
      2.0 * series.value() - (n / n_vertices) * (harmonic(n) + 2.0 / n);
  return {lhs, rhs};
}

double lemma_b1_bound(int n) {
  require_dim(n);
  const std::vector<double> fubini = fubini_numbers(9);
  return 10.0 * fubini[9] / std::pow(static_cast<double>(n), 9);
}

std::pair<double, double> lemma_b2_check(int n, int v, bool brute) {
  require_dim(n);
  if (v < 1 || v > n) {
    throw QwError(ErrorCode::ConfigError, "v out of [1, n]");
  }
  double lhs = 0.0;
  if (brute) {
    if (n > 20) {
      throw QwError(ErrorCode::DimensionTooLarge,
                    "brute-force enumeration capped at n = 20");
    }
    // Representative weight-v vector; the sum depends on the weight only.
    const std::uint64_t v0 = (1ull << v) - 1;
    KahanAccumulator<> acc;
    for (std::uint64_t k = 1; k < (1ull << n); ++k) {
      const double term = 1.0 / popcount64(k);
      acc += (popcount64(k & v0) % 2 != 0) ? -term : term;
    }
    lhs = acc.value();
  } else {
    KahanAccumulator<> acc;
    for (int w = 1; w <= n; ++w) {
      acc += spectra::krawtchouk(w, v, n) / w;
    }
    lhs = acc.value();
  }
  const double rhs = ratio_tail(n, v) - harmonic(v);
  return {lhs, rhs};
}

double harmonic(int v) {
  if (v < 0) {
    throw QwError(ErrorCode::ConfigError, "harmonic number needs v >= 0");
  }
  KahanAccumulator<> acc;
  for (int i = 1; i <= v; ++i) acc += 1.0 / i;
  return acc.value();
}

AsymptoticPrediction hypercube_m2_prediction(int n) {
  require_dim(n);
  AsymptoticPrediction out;
  out.regime = Regime::hypercube_m2;
  out.lambda = 2.0 / std::sqrt(std::ldexp(1.0, n));
  out.t_opt = kPi / (2.0 * out.lambda);
  out.p_succ = 0.5;
  return out;
}

AsymptoticPrediction conjecture_prediction(int n, int m) {
  require_dim(n);
  if (m < 1) {
    throw QwError(ErrorCode::InvalidMarkedSet, "marked count must be >= 1");
  }
  AsymptoticPrediction out;
  out.regime = Regime::hypercube_conjecture;
  out.lambda = std::sqrt(2.0 * m / std::ldexp(1.0, n));
  out.t_opt = kPi / (2.0 * out.lambda);
  out.p_succ = 0.5;
  return out;
}

}  // namespace qwsearch::asymptotics
