#include "qwsearch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qwsearch/errors.hpp"
#include "qwsearch/kahan.hpp"

namespace qwsearch::solver {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated accumulation of complex matrices, entry by entry.
class KahanMatrix {
 public:
  explicit KahanMatrix(Eigen::Index rows, Eigen::Index cols)
      : re_(static_cast<std::size_t>(rows * cols)),
        im_(static_cast<std::size_t>(rows * cols)),
        rows_(rows),
        cols_(cols) {}

  void add(const Eigen::MatrixXcd& term, double scale) {
    std::size_t k = 0;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      for (Eigen::Index i = 0; i < rows_; ++i, ++k) {
        re_[k] += scale * term(i, j).real();
        im_[k] += scale * term(i, j).imag();
      }
    }
  }

  Eigen::MatrixXcd value() const {
    Eigen::MatrixXcd out(rows_, cols_);
    std::size_t k = 0;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      for (Eigen::Index i = 0; i < rows_; ++i, ++k) {
        out(i, j) = cplx(re_[k].value(), im_[k].value());
      }
    }
    return out;
  }

 private:
  std::vector<KahanAccumulator<>> re_, im_;
  Eigen::Index rows_, cols_;
};

struct DetSign {
  int sign = 0;        // sign of det(Λ), 0 when an eigenvalue is exactly zero
  double log_abs = 0;  // Σ ln|μ| over the Hermitian eigenvalues
};

// det of a Hermitian matrix through its (real) eigenvalues: the sign is a
// product of signs, immune to the huge dynamic range the entries reach as
// λ → 0.
DetSign det_sign(const Eigen::MatrixXcd& lambda_matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lambda_matrix,
                                                     Eigen::EigenvaluesOnly);
  DetSign out;
  out.sign = 1;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double mu = es.eigenvalues()(i);
    if (mu == 0.0) {
      out.sign = 0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    if (mu < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(mu));
  }
  return out;
}

void require_zero_group(const SpectralModel& model) {
  if (model.zero_phase_index < 0 ||
      model.zero_phase_index >= static_cast<int>(model.groups.size()) ||
      model.groups[static_cast<std::size_t>(model.zero_phase_index)].phase != 0.0) {
    throw QwError(ErrorCode::InvalidMarkedSet,
                  "model has no zero-phase group");
  }
  const auto& zero = model.groups[static_cast<std::size_t>(model.zero_phase_index)];
  if (zero.block.cwiseAbs().maxCoeff() <= 0.0) {
    throw QwError(ErrorCode::InvalidMarkedSet,
                  "marked set has no overlap with the zero-phase space");
  }
}

cplx det2(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  return x(0, 0) * y(1, 1) - x(0, 1) * y(1, 0);
}

cplx det3_rows(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
               const Eigen::MatrixXcd& z) {
  Eigen::Matrix3cd m;
  m.row(0) = x.row(0);
  m.row(1) = y.row(1);
  m.row(2) = z.row(2);
  return m.determinant();
}

}  // namespace

double b_coefficient(double lambda, double phi) {
  const double diff = std::remainder(lambda - phi, 2.0 * kPi);
  if (std::abs(diff) <= 1e-12) {
    throw QwError(ErrorCode::PoleAtEigenphase,
                  "lambda coincides with an eigenphase");
  }
  const double half = 0.5 * (lambda - phi);
  return std::cos(half) / std::sin(half);
}

Eigen::MatrixXcd build_lambda_matrix(const SpectralModel& model, double lambda) {
  const int m_count = model.marked_count();
  KahanMatrix acc(m_count, m_count);
  for (const PhaseGroup& group : model.groups) {
    acc.add(group.block, b_coefficient(lambda, group.phase));
  }
  return acc.value();
}

FindLambdaResult find_lambda(const SpectralModel& model) {
  require_zero_group(model);
  const double phi_min = model.phi_min();
  if (!(phi_min > 0.0)) {
    throw QwError(ErrorCode::NoRootInInterval,
                  "model has no positive eigenphase");
  }
  const int m_count = model.marked_count();

  // g(λ) = λ^|M|·det(Λ^λ) extends continuously to λ = 0 with a nonzero
  // limit; its sign equals the det sign since λ^|M| > 0 on the interval.
  const auto sign_at = [&](double lambda) {
    return det_sign(build_lambda_matrix(model, lambda));
  };

  const double hi_end = 0.999 * phi_min;
  double lo_frac = 1e-6;
  int probes = 512;
  constexpr int kMaxRounds = 5;

  for (int round = 0; round < kMaxRounds; ++round) {
    const double lo_end = lo_frac * phi_min;
    const double log_lo = std::log(lo_end);
    const double log_step = (std::log(hi_end) - log_lo) / (probes - 1);

    double prev_lambda = 0.0;
    int prev_sign = 0;
    int sign_changes = 0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    int bracket_sign_lo = 0;

    for (int i = 0; i < probes; ++i) {
      const double lambda = std::exp(log_lo + i * log_step);
      const int sign = sign_at(lambda).sign;
      if (i > 0 && sign != 0 && prev_sign != 0 && sign != prev_sign) {
        ++sign_changes;
        if (sign_changes == 1) {
          bracket_lo = prev_lambda;
          bracket_hi = lambda;
          bracket_sign_lo = prev_sign;
        }
      }
      prev_lambda = lambda;
      prev_sign = sign;
    }

    if (sign_changes > 0) {
      double lo = bracket_lo, hi = bracket_hi;
      while (hi - lo > 1e-12 * lo) {
        const double mid = 0.5 * (lo + hi);
        const int sign = sign_at(mid).sign;
        if (sign == 0) {
          lo = hi = mid;
          break;
        }
        if (sign == bracket_sign_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      FindLambdaResult result;
      result.lambda = 0.5 * (lo + hi);
      const DetSign at_root = sign_at(result.lambda);
      result.residual =
          std::exp(m_count * std::log(result.lambda) + at_root.log_abs);
      result.sign_changes = sign_changes;
      result.bracket_rounds = round;
      return result;
    }

    // No bracket: densify the grid and push the lower end toward zero —
    // for large instances the root sits far below 1e-6·φ_min.
    probes *= 8;
    lo_frac *= 1e-3;
  }
  throw QwError(ErrorCode::NoRootInInterval,
                "no sign change of det(Lambda) found in (0, phi_min)");
}

SeriesCoefficients series_coefficients_m2(const SpectralModel& model) {
  if (model.marked_count() != 2) {
    throw QwError(ErrorCode::WrongCardinality,
                  "the order-2 expansion needs exactly 2 marked vertices");
  }
  require_zero_group(model);
  const auto& z = model.groups[static_cast<std::size_t>(model.zero_phase_index)].block;

  // Small-λ expansion of b(φ): 2/λ for the zero group, and
  // a_φ·(sin φ − λ) + O(λ²) with a_φ = 1/(cos φ − 1) for φ ≠ 0.
  KahanMatrix wa_acc(2, 2), ws_acc(2, 2);
  for (std::size_t i = 0; i < model.groups.size(); ++i) {
    if (static_cast<int>(i) == model.zero_phase_index) continue;
    const double phi = model.groups[i].phase;
    const double a = 1.0 / (std::cos(phi) - 1.0);
    wa_acc.add(model.groups[i].block, a);
    ws_acc.add(model.groups[i].block, a * std::sin(phi));
  }
  const Eigen::MatrixXcd wa = wa_acc.value();
  const Eigen::MatrixXcd ws = ws_acc.value();

  SeriesCoefficients c;
  c.A = (4.0 * det2(z, z)).real();
  c.B = (2.0 * (det2(z, ws) + det2(ws, z))).real();
  c.C = (2.0 * (det2(z, wa) + det2(wa, z)) + det2(ws, ws)).real();
  c.D = (det2(ws, wa) + det2(wa, ws)).real();
  c.E = (det2(wa, wa)).real();
  return c;
}

SeriesCoefficients series_coefficients_m3(const SpectralModel& model) {
  if (model.marked_count() != 3) {
    throw QwError(ErrorCode::WrongCardinality,
                  "the order-3 expansion needs exactly 3 marked vertices");
  }
  require_zero_group(model);
  const auto& z = model.groups[static_cast<std::size_t>(model.zero_phase_index)].block;

  KahanMatrix wa_acc(3, 3), ws_acc(3, 3);
  for (std::size_t i = 0; i < model.groups.size(); ++i) {
    if (static_cast<int>(i) == model.zero_phase_index) continue;
    const double phi = model.groups[i].phase;
    const double a = 1.0 / (std::cos(phi) - 1.0);
    wa_acc.add(model.groups[i].block, a);
    ws_acc.add(model.groups[i].block, a * std::sin(phi));
  }
  const Eigen::MatrixXcd a = wa_acc.value();
  const Eigen::MatrixXcd s = ws_acc.value();

  SeriesCoefficients c;
  c.A = (8.0 * det3_rows(z, z, z)).real();
  c.B = (4.0 * (det3_rows(z, z, s) + det3_rows(z, s, z) + det3_rows(s, z, z)))
            .real();
  c.C = (2.0 * (det3_rows(s, s, z) + det3_rows(s, z, s) + det3_rows(z, s, s)) +
         4.0 * (det3_rows(z, z, a) + det3_rows(z, a, z) + det3_rows(a, z, z)))
            .real();
  c.D = (2.0 * (det3_rows(s, a, z) + det3_rows(a, s, z) + det3_rows(s, z, a) +
                det3_rows(a, z, s) + det3_rows(z, s, a) + det3_rows(z, a, s)) +
         det3_rows(s, s, s))
            .real();
  c.E = ((det3_rows(s, s, a) + det3_rows(s, a, s) + det3_rows(a, s, s)) +
         2.0 * (det3_rows(a, a, z) + det3_rows(a, z, a) + det3_rows(z, a, a)))
            .real();
  return c;
}

double series_root(const SeriesCoefficients& coefficients) {
  const double max_abs =
      std::max({std::abs(coefficients.A), std::abs(coefficients.B),
                std::abs(coefficients.C), std::abs(coefficients.D),
                std::abs(coefficients.E)});
  if (max_abs == 0.0) {
    throw QwError(ErrorCode::NoPositiveSeriesRoot,
                  "all series coefficients vanish");
  }
  const double tiny = 1e-10 * max_abs;

  // Coefficients that cancel structurally come back as accumulated rounding
  // (~1e-16 of the leading scale); snap them to zero so the sign scan cannot
  // manufacture a root out of noise.
  SeriesCoefficients c = coefficients;
  for (double* coef : {&c.A, &c.B, &c.C, &c.D, &c.E}) {
    if (std::abs(*coef) <= tiny) *coef = 0.0;
  }

  // Biquadratic fast path: only C and E survive (the generic |M| = 2 shape).
  if (c.A == 0.0 && c.B == 0.0 && c.D == 0.0 && c.C != 0.0 && c.E != 0.0) {
    const double ratio = -c.C / c.E;
    if (ratio > 0.0) return std::sqrt(ratio);
    throw QwError(ErrorCode::NoPositiveSeriesRoot,
                  "biquadratic coefficients have matching signs");
  }

  const auto poly = [&](double x) {
    return c.A + x * (c.B + x * (c.C + x * (c.D + x * c.E)));
  };

  // Logarithmic sign scan over (0, π]; the physical root is far below 1.
  const int probes = 8192;
  const double log_lo = std::log(1e-9);
  const double log_hi = std::log(kPi);
  double prev_x = 0.0;
  double prev_val = c.A;  // limit value at x → 0⁺
  for (int i = 0; i < probes; ++i) {
    const double x = std::exp(log_lo + i * (log_hi - log_lo) / (probes - 1));
    const double val = poly(x);
    if (val == 0.0) return x;
    if (prev_val != 0.0 && ((val < 0.0) != (prev_val < 0.0)) && prev_x > 0.0) {
      double lo = prev_x, hi = x;
      double f_lo = prev_val;
      while (hi - lo > 1e-14 * lo) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = poly(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_x = x;
    prev_val = val;
  }
  throw QwError(ErrorCode::NoPositiveSeriesRoot,
                "truncated polynomial has no positive root");
}

LambdaSolution solve(const SpectralModel& model, const FindLambdaResult& root) {
  require_zero_group(model);
  const int m_count = model.marked_count();
  if (model.initial_overlaps.size() != m_count) {
    throw QwError(ErrorCode::InvalidMarkedSet,
                  "initial overlaps missing from the model");
  }
  const double lambda = root.lambda;
  const Eigen::MatrixXcd lam = build_lambda_matrix(model, lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lam);
  if (es.info() != Eigen::Success) {
    throw QwError(ErrorCode::NotUnitary, "eigendecomposition failed");
  }

  const Eigen::VectorXd mu = es.eigenvalues();
  const double mu_max = mu.cwiseAbs().maxCoeff();
  Eigen::Index null_index = 0;
  int null_count = 0;
  mu.cwiseAbs().minCoeff(&null_index);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mu(i)) <= 1e-8 * mu_max) ++null_count;
  }
  if (null_count > 1) {
    throw QwError(ErrorCode::NullSpaceDimensionTooHigh,
                  std::to_string(null_count) +
                      " eigenvalues of Lambda vanish at the root");
  }

  Eigen::VectorXcd x = es.eigenvectors().col(null_index);

  // Global phase: rotate the pivot entry to the positive real axis.
  Eigen::Index pivot = 0;
  if (std::abs(x(0)) <= 1e-12) x.cwiseAbs().maxCoeff(&pivot);
  x *= std::polar(1.0, -std::arg(x(pivot)));

  // Normalization of the full eigenvector of the perturbed walk:
  // Σ_φ (1 + b²(φ))·x†G_φ x = 1.
  const auto constraint_sum = [&](const Eigen::VectorXcd& vec) {
    KahanAccumulator<> acc;
    for (const PhaseGroup& group : model.groups) {
      const double b = b_coefficient(lambda, group.phase);
      const double quad = (vec.adjoint() * group.block * vec)(0, 0).real();
      acc += (1.0 + b * b) * quad;
    }
    return acc.value();
  };
  const double raw = constraint_sum(x);
  if (!(raw > 0.0)) {
    throw QwError(ErrorCode::NullSpaceDimensionTooHigh,
                  "normalization constraint is not positive at the root");
  }
  const double alpha = 1.0 / std::sqrt(raw);
  const Eigen::VectorXcd x_scaled = alpha * x;

  // ⟨λ|ψ(0)⟩ through the zero-phase component of the eigenvector.
  const double b0 = b_coefficient(lambda, 0.0);
  cplx projected = 0.0;
  for (int m = 0; m < m_count; ++m) {
    projected += std::conj(model.initial_overlaps(m)) * x_scaled(m);
  }
  const cplx overlap = std::conj(cplx(1.0, b0) * projected);

  LambdaSolution solution;
  solution.lambda = lambda;
  solution.t_opt = kPi / (2.0 * lambda);
  KahanAccumulator<> weight;
  for (int m = 0; m < m_count; ++m) weight += std::norm(x_scaled(m));
  solution.p_succ = 4.0 * weight.value() * std::norm(overlap);
  solution.t_run = solution.t_opt / std::sqrt(solution.p_succ);
  solution.alpha = alpha;
  solution.det_residual = root.residual;
  solution.marked_amplitudes = x_scaled;
  solution.initial_overlap = overlap;
  solution.diagnostics.null_residual = (lam * x).norm();
  solution.diagnostics.normalization_error =
      std::abs(constraint_sum(x_scaled) - 1.0);
  solution.diagnostics.sign_changes = root.sign_changes;
  solution.diagnostics.bracket_rounds = root.bracket_rounds;
  return solution;
}

LambdaSolution analyze(const SpectralModel& model) {
  return solve(model, find_lambda(model));
}

double model_probability(const LambdaSolution& solution, long long t) {
  const double s = std::sin(solution.lambda * static_cast<double>(t));
  return solution.p_succ * s * s;
}

}  // namespace qwsearch::solver
