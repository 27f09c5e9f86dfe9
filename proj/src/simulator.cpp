#include "qwsearch/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwsearch/errors.hpp"
#include "qwsearch/kahan.hpp"

namespace qwsearch::simulator {

namespace {

constexpr double kPi = std::numbers::pi;

// Matrix-free walks allocate d·N amplitudes plus a move table; keep the
// footprint well under the sandbox budget.
constexpr std::uint64_t kMatrixFreeDimCap = 1ull << 27;

}  // namespace

Eigen::MatrixXd grover_coin(int d) {
  if (d < 1) {
    throw QwError(ErrorCode::UnsupportedDimension, "coin dimension < 1");
  }
  Eigen::MatrixXd coin = Eigen::MatrixXd::Constant(d, d, 2.0 / d);
  coin.diagonal().array() -= 1.0;
  return coin;
}

double WalkState::norm() const {
  KahanAccumulator<> acc;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc.value());
}

Walk::Walk(GraphDescriptor graph, MarkedSet marked)
    // An empty marked set is legal here (unmarked walk, oracle = identity);
    // the model builders and the CLI enforce |M| ≥ 1 themselves.
    : graph_(graph),
      marked_(marked.vertices.empty()
                  ? MarkedSet{}
                  : make_marked_set(marked.vertices, graph.vertex_count())) {
  const std::uint64_t n = graph_.vertex_count();
  const int d = graph_.coin_dim();
  if (static_cast<std::uint64_t>(d) * n > kMatrixFreeDimCap) {
    throw QwError(ErrorCode::DimensionTooLarge,
                  "coined space exceeds the matrix-free cap");
  }
  shift_targets_.resize(static_cast<std::size_t>(d) * n);
  coin_flips_.resize(d);
  if (graph_.family == GraphFamily::lattice) {
    const std::uint64_t s = static_cast<std::uint64_t>(graph_.size);
    // Coin order +x, −x, +y, −y; the flip-flop shift inverts the direction.
    coin_flips_ = {1, 0, 3, 2};
    for (std::uint64_t v = 0; v < n; ++v) {
      const std::uint64_t x = v / s;
      const std::uint64_t y = v % s;
      shift_targets_[0 * n + v] = ((x + 1) % s) * s + y;
      shift_targets_[1 * n + v] = ((x + s - 1) % s) * s + y;
      shift_targets_[2 * n + v] = x * s + (y + 1) % s;
      shift_targets_[3 * n + v] = x * s + (y + s - 1) % s;
    }
  } else if (graph_.family == GraphFamily::hypercube) {
    for (int a = 0; a < d; ++a) {
      coin_flips_[a] = a;  // edge directions are self-inverse
      const std::uint64_t mask = 1ull << a;
      for (std::uint64_t v = 0; v < n; ++v) {
        shift_targets_[static_cast<std::uint64_t>(a) * n + v] = v ^ mask;
      }
    }
  } else {
    throw QwError(ErrorCode::UnsupportedDimension,
                  "matrix-free walk needs a lattice or hypercube graph");
  }
}

WalkState Walk::initial_state() const {
  WalkState state;
  state.graph = graph_;
  const std::uint64_t dim =
      static_cast<std::uint64_t>(graph_.coin_dim()) * graph_.vertex_count();
  state.amplitudes.assign(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return state;
}

void Walk::apply_step(WalkState& state) const {
  const std::uint64_t n = graph_.vertex_count();
  const int d = graph_.coin_dim();
  std::vector<cplx>& psi = state.amplitudes;
  if (psi.size() != static_cast<std::size_t>(d) * n) {
    throw QwError(ErrorCode::UnsupportedDimension, "state dimension mismatch");
  }

  // Oracle: reflect about the marked coin-uniform states.
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::uint64_t m : marked_.vertices) {
    cplx amp = 0.0;
    for (int a = 0; a < d; ++a) amp += psi[static_cast<std::uint64_t>(a) * n + m];
    amp *= inv_sqrt_d;
    for (int a = 0; a < d; ++a) {
      psi[static_cast<std::uint64_t>(a) * n + m] -= 2.0 * amp * inv_sqrt_d;
    }
  }

  // Grover coin at each vertex: new = (2/d)·Σ_a old − old.
  std::vector<cplx> mean(n, cplx(0.0, 0.0));
  for (int a = 0; a < d; ++a) {
    const cplx* row = psi.data() + static_cast<std::uint64_t>(a) * n;
    for (std::uint64_t v = 0; v < n; ++v) mean[v] += row[v];
  }
  const double two_over_d = 2.0 / d;
  for (int a = 0; a < d; ++a) {
    cplx* row = psi.data() + static_cast<std::uint64_t>(a) * n;
    for (std::uint64_t v = 0; v < n; ++v) row[v] = two_over_d * mean[v] - row[v];
  }

  // Flip-flop shift.
  std::vector<cplx> next(psi.size());
  for (int a = 0; a < d; ++a) {
    const std::uint64_t flip = static_cast<std::uint64_t>(coin_flips_[a]) * n;
    const std::uint64_t* targets = shift_targets_.data() + static_cast<std::uint64_t>(a) * n;
    const cplx* row = psi.data() + static_cast<std::uint64_t>(a) * n;
    for (std::uint64_t v = 0; v < n; ++v) next[flip + targets[v]] = row[v];
  }
  psi.swap(next);
}

double Walk::marked_probability(const WalkState& state) const {
  const std::uint64_t n = graph_.vertex_count();
  const int d = graph_.coin_dim();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  KahanAccumulator<> acc;
  for (std::uint64_t m : marked_.vertices) {
    cplx amp = 0.0;
    for (int a = 0; a < d; ++a) {
      amp += state.amplitudes[static_cast<std::uint64_t>(a) * n + m];
    }
    acc += std::norm(amp * inv_sqrt_d);
  }
  return acc.value();
}

ProbabilityCurve Walk::probability_curve(int t_max) const {
  if (t_max < 0) {
    throw QwError(ErrorCode::ConfigError, "t_max must be non-negative");
  }
  ProbabilityCurve curve;
  curve.p.reserve(static_cast<std::size_t>(t_max) + 1);
  WalkState state = initial_state();
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) apply_step(state);
    const double p = marked_probability(state);
    curve.p.push_back(p);
    if (p > curve.p_peak) {
      curve.p_peak = p;
      curve.t_peak = t;
    }
  }
  return curve;
}

void Walk::check_dense_cap() const {
  const std::uint64_t dim =
      static_cast<std::uint64_t>(graph_.coin_dim()) * graph_.vertex_count();
  if (dim > static_cast<std::uint64_t>(kDenseDimCap)) {
    throw QwError(ErrorCode::DimensionTooLarge,
                  "dense operator dimension " + std::to_string(dim) +
                      " exceeds cap " + std::to_string(kDenseDimCap));
  }
}

Eigen::MatrixXd Walk::dense_real_operator() const {
  check_dense_cap();
  const std::uint64_t n = graph_.vertex_count();
  const int d = graph_.coin_dim();
  const Eigen::Index dim = static_cast<Eigen::Index>(static_cast<std::uint64_t>(d) * n);
  Eigen::MatrixXd op(dim, dim);
  WalkState state;
  state.graph = graph_;
  for (Eigen::Index j = 0; j < dim; ++j) {
    state.amplitudes.assign(static_cast<std::size_t>(dim), cplx(0.0, 0.0));
    state.amplitudes[static_cast<std::size_t>(j)] = 1.0;
    apply_step(state);
    for (Eigen::Index i = 0; i < dim; ++i) {
      op(i, j) = state.amplitudes[static_cast<std::size_t>(i)].real();
    }
  }
  return op;
}

Eigen::MatrixXcd Walk::dense_operator() const {
  return dense_real_operator().cast<cplx>();
}

std::pair<double, double> Walk::smallest_nonzero_eigenphase() const {
  // The one-step operator is real orthogonal, so its eigenphases come in
  // ± pairs: the symmetric part (U + Uᵀ)/2 carries cos φ and the
  // antisymmetric part (U − Uᵀ)/2 squares to −sin²φ on each cos-eigenspace.
  // Recovering φ as atan2(‖K·v‖, cos φ) keeps the angle accurate near 0
  // and π, where acos alone amplifies eigenvalue rounding to ~√ε and lets
  // true zero phases leak past the nonzero filter.
  const Eigen::MatrixXd op = dense_real_operator();
  const Eigen::MatrixXd sym = 0.5 * (op + op.transpose());
  const Eigen::MatrixXd antisym = 0.5 * (op - op.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    throw QwError(ErrorCode::NotUnitary, "eigendecomposition failed");
  }
  const Eigen::MatrixXd sines = antisym * es.eigenvectors();
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double cosine = std::clamp(es.eigenvalues()(i), -1.0, 1.0);
    const double phase = std::atan2(sines.col(i).norm(), cosine);
    if (phase > 1e-9) phases.push_back(phase);
  }
  if (phases.empty()) {
    throw QwError(ErrorCode::AllPhasesZero, "no eigenphase above 1e-9");
  }
  std::sort(phases.begin(), phases.end());
  const double smallest = phases.front();
  double gap = 0.0;
  for (double phase : phases) {
    if (phase > smallest + 1e-9) {
      gap = phase - smallest;
      break;
    }
  }
  return {smallest, gap};
}

int default_t_max(const GraphDescriptor& graph) {
  const double sqrt_n = std::sqrt(static_cast<double>(graph.vertex_count()));
  return static_cast<int>(std::ceil(0.75 * kPi * sqrt_n));
}

}  // namespace qwsearch::simulator
