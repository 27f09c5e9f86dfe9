#include "qwsearch/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwsearch/errors.hpp"
#include "qwsearch/kahan.hpp"

namespace qwsearch::spectra {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exact integer binomial for degeneracy counts (n ≤ 62).
std::int64_t binom_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::int64_t>(r);
}

int popcount64(std::uint64_t v) { return static_cast<int>(__builtin_popcountll(v)); }

// Groups are listed in ascending phase order regardless of how they were
// assembled; equal phases keep their construction order so reruns serialize
// identically.
void canonicalize_group_order(SpectralModel& model) {
  std::stable_sort(
      model.groups.begin(), model.groups.end(),
      [](const PhaseGroup& a, const PhaseGroup& b) { return a.phase < b.phase; });
  model.zero_phase_index = -1;
  for (std::size_t i = 0; i < model.groups.size(); ++i) {
    if (model.groups[i].phase == 0.0) {
      model.zero_phase_index = static_cast<int>(i);
      break;
    }
  }
}

}  // namespace

double krawtchouk(int k, int u, int n) {
  const int jlo = std::max(0, k - (n - u));
  const int jhi = std::min(k, u);
  KahanAccumulator<> acc;
  for (int j = jlo; j <= jhi; ++j) {
    const double term = binom(u, j) * binom(n - u, k - j);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc.value();
}

SpectralModel build_lattice_model(int sqrt_n, const MarkedSet& marked_in) {
  const GraphDescriptor graph = lattice_graph(sqrt_n);
  const MarkedSet marked =
      make_marked_set(marked_in.vertices, graph.vertex_count());
  const int s = sqrt_n;
  const int m_count = marked.count();
  const double n_vertices = static_cast<double>(graph.vertex_count());

  SpectralModel model;
  model.graph = graph;
  model.marked = marked;
  model.hilbert_dim = graph.hilbert_dim();

  // Zero phase: only the uniform state overlaps the marked coin states.
  PhaseGroup zero;
  zero.phase = 0.0;
  zero.block = Eigen::MatrixXcd::Constant(m_count, m_count,
                                          cplx(1.0 / n_vertices, 0.0));
  zero.degeneracy = 1;
  model.groups.push_back(std::move(zero));

  std::vector<int> xs(m_count), ys(m_count);
  for (int i = 0; i < m_count; ++i) {
    xs[i] = static_cast<int>(marked.vertices[i] / static_cast<unsigned>(s));
    ys[i] = static_cast<int>(marked.vertices[i] % static_cast<unsigned>(s));
  }

  Eigen::VectorXcd wave(m_count);
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      if (k == 0 && l == 0) continue;
      const double cos_theta =
          0.5 * (std::cos(2.0 * kPi * k / s) + std::cos(2.0 * kPi * l / s));
      const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
      for (int i = 0; i < m_count; ++i) {
        const long long e =
            (static_cast<long long>(xs[i]) * k + static_cast<long long>(ys[i]) * l) % s;
        wave(i) = std::polar(1.0, 2.0 * kPi * static_cast<double>(e) / s);
      }
      const Eigen::MatrixXcd w = wave * wave.adjoint();
      if (s % 2 == 0 && k == s / 2 && l == s / 2) {
        // cos θ = −1: the ± pair degenerates into a single phase-π
        // eigenvector carrying the full coin-uniform weight.
        PhaseGroup g;
        g.phase = kPi;
        g.block = w / n_vertices;
        g.degeneracy = 1;
        model.groups.push_back(std::move(g));
      } else {
        PhaseGroup plus;
        plus.phase = theta;
        plus.block = w / (2.0 * n_vertices);
        plus.degeneracy = 1;
        PhaseGroup minus;
        minus.phase = -theta;
        minus.block = plus.block;
        minus.degeneracy = 1;
        model.groups.push_back(std::move(plus));
        model.groups.push_back(std::move(minus));
      }
    }
  }

  model.initial_overlaps = Eigen::VectorXcd::Constant(
      m_count, cplx(1.0 / std::sqrt(n_vertices), 0.0));
  canonicalize_group_order(model);
  return model;
}

SpectralModel build_hypercube_model(int n, const MarkedSet& marked_in) {
  const GraphDescriptor graph = hypercube_graph(n);
  const MarkedSet marked =
      make_marked_set(marked_in.vertices, graph.vertex_count());
  const int m_count = marked.count();
  const double n_vertices = std::ldexp(1.0, n);

  SpectralModel model;
  model.graph = graph;
  model.marked = marked;
  model.hilbert_dim = graph.hilbert_dim();

  PhaseGroup zero;
  zero.phase = 0.0;
  zero.block = Eigen::MatrixXcd::Constant(m_count, m_count,
                                          cplx(1.0 / n_vertices, 0.0));
  zero.degeneracy = 1;
  model.groups.push_back(std::move(zero));

  // φ = π: the all-ones wavevector, sign (−1)^{weight}.
  {
    Eigen::VectorXcd sgn(m_count);
    for (int i = 0; i < m_count; ++i) {
      sgn(i) = (popcount64(marked.vertices[i]) % 2 == 0) ? 1.0 : -1.0;
    }
    PhaseGroup pi_group;
    pi_group.phase = kPi;
    pi_group.block = (sgn * sgn.adjoint()) / n_vertices;
    pi_group.degeneracy = 1;
    model.groups.push_back(std::move(pi_group));
  }

  // ±ω_k with cos ω_k = 1 − 2k/n; blocks from Krawtchouk values at the
  // pairwise Hamming distances.
  for (int k = 1; k <= n - 1; ++k) {
    const double omega =
        std::acos(std::clamp(1.0 - 2.0 * k / n, -1.0, 1.0));
    Eigen::MatrixXcd block(m_count, m_count);
    for (int i = 0; i < m_count; ++i) {
      for (int j = 0; j < m_count; ++j) {
        const int u = popcount64(marked.vertices[i] ^ marked.vertices[j]);
        block(i, j) = krawtchouk(k, u, n) / (2.0 * n_vertices);
      }
    }
    PhaseGroup plus;
    plus.phase = omega;
    plus.block = block;
    plus.degeneracy = binom_exact(n, k);
    PhaseGroup minus;
    minus.phase = -omega;
    minus.block = std::move(block);
    minus.degeneracy = plus.degeneracy;
    model.groups.push_back(std::move(plus));
    model.groups.push_back(std::move(minus));
  }

  model.initial_overlaps = Eigen::VectorXcd::Constant(
      m_count, cplx(1.0 / std::sqrt(n_vertices), 0.0));
  canonicalize_group_order(model);
  return model;
}

SpectralModel build_generic_model(const Eigen::MatrixXcd& unitary,
                                  const std::vector<Eigen::VectorXcd>& marked_states,
                                  const Eigen::VectorXcd& initial_state,
                                  double cluster_tol) {
  const Eigen::Index dim = unitary.rows();
  if (unitary.cols() != dim || dim == 0) {
    throw QwError(ErrorCode::NotUnitary, "operator is not square");
  }
  const double unitarity =
      (unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (unitarity > 1e-10) {
    throw QwError(ErrorCode::NotUnitary,
                  "deviation from unitarity " + std::to_string(unitarity));
  }
  const int m_count = static_cast<int>(marked_states.size());
  if (m_count == 0) {
    throw QwError(ErrorCode::InvalidMarkedSet, "marked set is empty");
  }
  for (int i = 0; i < m_count; ++i) {
    if (marked_states[i].size() != dim) {
      throw QwError(ErrorCode::InvalidMarkedSet,
                    "marked state dimension mismatch");
    }
    for (int j = 0; j <= i; ++j) {
      const cplx overlap = marked_states[j].dot(marked_states[i]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expect) > 1e-8) {
        throw QwError(ErrorCode::InvalidMarkedSet,
                      "marked states are not orthonormal");
      }
    }
  }
  if (initial_state.size() != dim) {
    throw QwError(ErrorCode::InvalidMarkedSet,
                  "initial state dimension mismatch");
  }

  // Joint diagonalization of the commuting Hermitian pair
  // H = (U+U†)/2 (gives cos φ) and K = (U−U†)/(2i) (gives sin φ).
  const Eigen::MatrixXcd h = 0.5 * (unitary + unitary.adjoint());
  const Eigen::MatrixXcd kk = (unitary - unitary.adjoint()) / cplx(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw QwError(ErrorCode::NotUnitary, "eigendecomposition failed");
  }
  const Eigen::VectorXd cos_values = es.eigenvalues();
  const Eigen::MatrixXcd& vectors = es.eigenvectors();

  SpectralModel model;
  model.graph = GraphDescriptor{GraphFamily::generic, 0};
  model.hilbert_dim = static_cast<double>(dim);
  std::vector<std::uint64_t> labels(m_count);
  for (int i = 0; i < m_count; ++i) labels[i] = static_cast<std::uint64_t>(i);
  model.marked = MarkedSet{std::move(labels)};

  const double cos_cluster_tol = 1e-9;
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index stop = start + 1;
    while (stop < dim && cos_values(stop) - cos_values(stop - 1) <= cos_cluster_tol) {
      ++stop;
    }
    const Eigen::Index r = stop - start;
    const double c_bar = cos_values.segment(start, r).mean();
    const Eigen::MatrixXcd v = vectors.middleCols(start, r);
    // Split the cos-degenerate cluster by the sign/size of sin φ.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ek(
        (v.adjoint() * (kk * v)).eval());
    const Eigen::VectorXd sin_values = ek.eigenvalues();
    const Eigen::MatrixXcd combined = v * ek.eigenvectors();

    Eigen::Index sub_start = 0;
    while (sub_start < r) {
      Eigen::Index sub_stop = sub_start + 1;
      while (sub_stop < r &&
             sin_values(sub_stop) - sin_values(sub_stop - 1) <= cluster_tol) {
        ++sub_stop;
      }
      const Eigen::Index sub_r = sub_stop - sub_start;
      const double s_bar = sin_values.segment(sub_start, sub_r).mean();
      double phase = std::atan2(s_bar, c_bar);
      if (std::abs(phase) <= cluster_tol) {
        phase = 0.0;
      } else if (std::abs(phase - kPi) <= cluster_tol ||
                 std::abs(phase + kPi) <= cluster_tol) {
        phase = kPi;
      } else if (std::abs(phase) <= 10.0 * cluster_tol) {
        model.zero_phase_straddle = true;
      }

      Eigen::MatrixXcd proj(m_count, static_cast<int>(sub_r));
      for (int m = 0; m < m_count; ++m) {
        for (Eigen::Index j = 0; j < sub_r; ++j) {
          proj(m, j) = marked_states[m].dot(combined.col(sub_start + j));
        }
      }
      Eigen::MatrixXcd block = proj * proj.adjoint();
      const bool keep =
          phase == 0.0 || block.cwiseAbs().maxCoeff() > 1e-13;
      if (keep) {
        PhaseGroup group;
        group.phase = phase;
        group.block = std::move(block);
        group.degeneracy = static_cast<std::int64_t>(sub_r);
        model.groups.push_back(std::move(group));
      }
      sub_start = sub_stop;
    }
    start = stop;
  }

  // Merge any duplicate zero-phase groups and locate the zero index.
  std::sort(model.groups.begin(), model.groups.end(),
            [](const PhaseGroup& a, const PhaseGroup& b) {
              return a.phase < b.phase;
            });
  model.zero_phase_index = -1;
  for (std::size_t i = 0; i < model.groups.size(); ++i) {
    if (model.groups[i].phase == 0.0) {
      if (model.zero_phase_index < 0) {
        model.zero_phase_index = static_cast<int>(i);
      } else {
        model.groups[model.zero_phase_index].block += model.groups[i].block;
        model.groups[model.zero_phase_index].degeneracy +=
            model.groups[i].degeneracy;
        model.groups.erase(model.groups.begin() + static_cast<long>(i));
        --i;
      }
    }
  }

  if (model.zero_phase_index >= 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ez(
        model.groups[model.zero_phase_index].block);
    const double top = ez.eigenvalues().cwiseAbs().maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < ez.eigenvalues().size(); ++i) {
      if (std::abs(ez.eigenvalues()(i)) > 1e-10 * std::max(top, 1e-30)) ++rank;
    }
    model.zero_phase_rank = rank;
  }

  model.initial_overlaps = Eigen::VectorXcd(m_count);
  for (int m = 0; m < m_count; ++m) {
    model.initial_overlaps(m) = initial_state.dot(marked_states[m]);
  }
  return model;
}

}  // namespace qwsearch::spectra
