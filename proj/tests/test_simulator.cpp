#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwsearch/errors.hpp"
#include "qwsearch/experiments.hpp"
#include "qwsearch/simulator.hpp"
#include "qwsearch/solver.hpp"
#include "qwsearch/spectra.hpp"
#include "oracles.hpp"

using namespace qwsearch;
using simulator::Walk;
using simulator::grover_coin;

namespace {

constexpr double kPi = std::numbers::pi;

MarkedSet labels(std::initializer_list<std::uint64_t> vertices) {
  return MarkedSet{std::vector<std::uint64_t>(vertices)};
}

simulator::WalkState random_state(const GraphDescriptor& graph, std::uint64_t seed) {
  experiments::SplitMix64 rng{seed};
  simulator::WalkState state;
  state.graph = graph;
  const std::uint64_t dim =
      static_cast<std::uint64_t>(graph.coin_dim()) * graph.vertex_count();
  state.amplitudes.resize(dim);
  for (cplx& amp : state.amplitudes) {
    const double re = static_cast<double>(rng.next() >> 11) * 0x1p-53 - 0.5;
    const double im = static_cast<double>(rng.next() >> 11) * 0x1p-53 - 0.5;
    amp = cplx(re, im);
  }
  const double norm = state.norm();
  for (cplx& amp : state.amplitudes) amp /= norm;
  return state;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("grover coin small dimensions") {
  const Eigen::MatrixXd g1 = grover_coin(1);
  CHECK(g1(0, 0) == doctest::Approx(1.0));

  const Eigen::MatrixXd g2 = grover_coin(2);
  CHECK(g2(0, 0) == doctest::Approx(0.0));
  CHECK(g2(0, 1) == doctest::Approx(1.0));
  CHECK(g2(1, 0) == doctest::Approx(1.0));
  CHECK(g2(1, 1) == doctest::Approx(0.0));

  const Eigen::MatrixXd g4 = grover_coin(4);
  CHECK((g4 * g4 - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK_THROWS_AS((void)grover_coin(0), QwError);
}

TEST_CASE("uniform state is stationary for the unmarked walk") {
  const Walk walk(hypercube_graph(4), MarkedSet{});
  simulator::WalkState state = walk.initial_state();
  const std::vector<cplx> before = state.amplitudes;
  walk.apply_step(state);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(state.amplitudes[i] - before[i]));
  }
  CHECK(max_diff <= 1e-12);
}

TEST_CASE("single step preserves the norm of a localized state") {
  const GraphDescriptor graph = hypercube_graph(2);
  const Walk walk(graph, MarkedSet{});
  simulator::WalkState state;
  state.graph = graph;
  state.amplitudes.assign(8, cplx(0.0, 0.0));
  const double r = 1.0 / std::sqrt(2.0);
  state.amplitudes[0] = r;  // |d_c⟩|00⟩ = (|0⟩+|1⟩)/√2 ⊗ |00⟩
  state.amplitudes[4] = r;
  walk.apply_step(state);
  CHECK(std::abs(state.norm() - 1.0) <= 1e-14);
}

TEST_CASE("norm drift after 1000 steps stays tiny") {
  const Walk walk(hypercube_graph(4), labels({0}));
  simulator::WalkState state = walk.initial_state();
  for (int t = 0; t < 1000; ++t) walk.apply_step(state);
  CHECK(std::abs(state.norm() - 1.0) <= 1e-9);
}

TEST_CASE("dense operator application equals the matrix-free step") {
  const GraphDescriptor graph = lattice_graph(4);
  const Walk walk(graph, labels({0, 4}));
  const Eigen::MatrixXcd op = walk.dense_operator();
  CHECK((op.adjoint() * op - Eigen::MatrixXcd::Identity(op.rows(), op.rows()))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    simulator::WalkState state = random_state(graph, seed);
    Eigen::VectorXcd vec(static_cast<Eigen::Index>(state.amplitudes.size()));
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
      vec(i) = state.amplitudes[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXcd dense_result = op * vec;
    walk.apply_step(state);
    double max_diff = 0.0;
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
      max_diff = std::max(max_diff,
                          std::abs(dense_result(i) -
                                   state.amplitudes[static_cast<std::size_t>(i)]));
    }
    CHECK(max_diff <= 1e-12);
  }
}

TEST_CASE("dense operator entries are real for both families") {
  for (const Walk& walk : {Walk(lattice_graph(4), MarkedSet{}),
                           Walk(hypercube_graph(3), labels({1}))}) {
    CHECK(walk.dense_operator().imag().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("one step only reaches adjacent coin-vertex pairs") {
  const GraphDescriptor graph = lattice_graph(4);
  const Walk walk(graph, MarkedSet{});
  const std::uint64_t n = graph.vertex_count();
  simulator::WalkState state;
  state.graph = graph;
  state.amplitudes.assign(4 * n, cplx(0.0, 0.0));
  const std::uint64_t start = 5;  // (1,1)
  state.amplitudes[2 * n + start] = 1.0;
  walk.apply_step(state);
  int support = 0;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t v = 0; v < n; ++v) {
      if (std::abs(state.amplitudes[a * n + v]) > 1e-14) {
        ++support;
        const int dx = std::abs(static_cast<int>(v / 4) - 1);
        const int dy = std::abs(static_cast<int>(v % 4) - 1);
        const int dist = std::min(dx, 4 - dx) + std::min(dy, 4 - dy);
        CHECK(dist == 1);
      }
    }
  }
  CHECK(support <= 4);
}

TEST_CASE("probability curve starts at |M|/N") {
  const Walk cube(hypercube_graph(6), labels({0, 7, 9}));
  CHECK(std::abs(cube.probability_curve(0).p[0] - 3.0 / 64.0) <= 1e-12);
  const Walk torus(lattice_graph(6), labels({0, 6}));
  CHECK(std::abs(torus.probability_curve(0).p[0] - 2.0 / 36.0) <= 1e-12);
}

TEST_CASE("probability values stay in [0,1] and the peak is consistent") {
  const Walk walk(hypercube_graph(7), labels({0, 3}));
  const ProbabilityCurve curve = walk.probability_curve(60);
  double max_p = 0.0;
  for (double p : curve.p) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-12);
    max_p = std::max(max_p, p);
  }
  CHECK(curve.p_peak == doctest::Approx(max_p));
  CHECK(curve.p[static_cast<std::size_t>(curve.t_peak)] ==
        doctest::Approx(curve.p_peak));
}

TEST_CASE("single marked peak matches the two-eigenvector model at n=9") {
  const MarkedSet marked = labels({123});
  const Walk walk(hypercube_graph(9), marked);
  const ProbabilityCurve curve =
      walk.probability_curve(simulator::default_t_max(hypercube_graph(9)));
  const LambdaSolution solution =
      solver::analyze(spectra::build_hypercube_model(9, marked));
  const double model_at_peak = solver::model_probability(solution, curve.t_peak);
  CHECK(std::abs(curve.p_peak - model_at_peak) <= 0.05);
}

TEST_CASE("two random marked vertices at n=10 peak near the closed form") {
  const std::vector<std::uint64_t> marked =
      experiments::sample_marked(11, hypercube_graph(10), 2);
  const Walk walk(hypercube_graph(10), MarkedSet{marked});
  const ProbabilityCurve curve = walk.probability_curve(80);
  CHECK(std::abs(curve.t_peak - std::round(kPi * 32.0 / 4.0)) <= 2.0);
  CHECK(curve.p_peak == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("unmarked hypercube spectrum contains exactly the analytic phases") {
  // n=2: eigenphases ⊂ {0, ±ω_1, π} with cos ω_1 = 0.
  const Walk walk(hypercube_graph(2), MarkedSet{});
  const Eigen::MatrixXcd op = walk.dense_operator();
  Eigen::MatrixXd sym = 0.5 * (op.real() + op.real().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  // Compare cosines: acos amplifies rounding to ~sqrt(eps) near ±1.
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double cosine = es.eigenvalues()(i);
    const double dist = std::min(
        {std::abs(cosine - 1.0), std::abs(cosine), std::abs(cosine + 1.0)});
    CHECK(dist <= 1e-10);
  }
}

TEST_CASE("smallest nonzero eigenphase of the unmarked n=4 walk is pi/3") {
  const Walk walk(hypercube_graph(4), MarkedSet{});
  const auto [lambda, gap] = walk.smallest_nonzero_eigenphase();
  CHECK(std::abs(lambda - std::acos(0.5)) <= 1e-10);
  CHECK(gap > 0.0);
}

TEST_CASE("single marked vertex at n=4 scales like 2/sqrt(2N)") {
  const Walk walk(hypercube_graph(4), labels({0}));
  const auto [lambda, gap] = walk.smallest_nonzero_eigenphase();
  (void)gap;
  const double predicted = 2.0 / std::sqrt(2.0 * 16.0);
  CHECK(std::abs(lambda - predicted) / lambda <= 0.25);
}

TEST_CASE("dense eigenphase agrees with the solver on both families") {
  {
    const MarkedSet marked = labels({0b0000, 0b1111});
    const Walk walk(hypercube_graph(4), marked);
    const auto [lambda, gap] = walk.smallest_nonzero_eigenphase();
    (void)gap;
    const FindLambdaResult root =
        solver::find_lambda(spectra::build_hypercube_model(4, marked));
    CHECK(std::abs(lambda - root.lambda) <= 1e-8);
  }
  {
    const MarkedSet marked = labels({0, 2 * 4 + 2});
    const Walk walk(lattice_graph(4), marked);
    const auto [lambda, gap] = walk.smallest_nonzero_eigenphase();
    (void)gap;
    const FindLambdaResult root =
        solver::find_lambda(spectra::build_lattice_model(4, marked));
    CHECK(std::abs(lambda - root.lambda) <= 1e-8);
    CHECK(std::abs(root.lambda - oracle::kLattice4AntipodalLambda) <= 1e-10);
  }
}

TEST_CASE("dense cap raises DimensionTooLarge") {
  const Walk walk(hypercube_graph(12), labels({0}));  // 12·4096 = 49152
  CHECK_THROWS_AS((void)walk.dense_operator(), QwError);
  try {
    (void)walk.smallest_nonzero_eigenphase();
    CHECK(false);
  } catch (const QwError& e) {
    CHECK(e.code() == ErrorCode::DimensionTooLarge);
  }
}

TEST_CASE("default horizon clears the first peak") {
  CHECK(simulator::default_t_max(hypercube_graph(10)) ==
        static_cast<int>(std::ceil(0.75 * kPi * 32.0)));
  CHECK(simulator::default_t_max(lattice_graph(8)) ==
        static_cast<int>(std::ceil(0.75 * kPi * 8.0)));
}

}  // TEST_SUITE
