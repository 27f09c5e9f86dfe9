#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qwsearch/asymptotics.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/serialize.hpp"
#include "qwsearch/simulator.hpp"
#include "qwsearch/solver.hpp"
#include "qwsearch/spectra.hpp"

namespace py = pybind11;

namespace {

using namespace qwsearch;

GraphDescriptor make_graph(const std::string& graph, int size) {
  if (graph == "lattice") return lattice_graph(size);
  if (graph == "hypercube") return hypercube_graph(size);
  throw QwError(ErrorCode::ConfigError, "graph must be lattice or hypercube");
}

SpectralModel make_model(const std::string& graph, int size,
                         const std::vector<std::uint64_t>& marked) {
  const GraphDescriptor descriptor = make_graph(graph, size);
  const MarkedSet set = make_marked_set(marked, descriptor.vertex_count());
  return descriptor.family == GraphFamily::lattice
             ? spectra::build_lattice_model(size, set)
             : spectra::build_hypercube_model(size, set);
}

}  // namespace

PYBIND11_MODULE(_qwsearch, m) {
  m.doc() =
      "Spectral solver and brute-force simulator for discrete-time "
      "quantum-walk search with multiple marked vertices";

  m.def(
      "analyze_json",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked) {
        return serialize::solution_to_json(
                   solver::analyze(make_model(graph, size, marked)))
            .dump();
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      "Full solver run; returns the solution as a JSON string");

  m.def(
      "model_json",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked) {
        return serialize::model_to_json(make_model(graph, size, marked)).dump();
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      "Spectral model (phase groups and overlaps) as a JSON string");

  m.def(
      "find_lambda",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked) {
        const auto root = solver::find_lambda(make_model(graph, size, marked));
        return py::make_tuple(root.lambda, root.residual);
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      "Smallest positive root of det(Lambda) as (lambda, residual)");

  m.def(
      "series_coefficients",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked) {
        const SpectralModel model = make_model(graph, size, marked);
        const SeriesCoefficients c = model.marked_count() == 2
                                         ? solver::series_coefficients_m2(model)
                                         : solver::series_coefficients_m3(model);
        return py::make_tuple(c.A, c.B, c.C, c.D, c.E);
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      "Laurent coefficients (A, B, C, D, E) of the small-lambda expansion");

  m.def(
      "probability_curve",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked, int t_max) {
        const GraphDescriptor descriptor = make_graph(graph, size);
        const simulator::Walk walk(
            descriptor, make_marked_set(marked, descriptor.vertex_count()));
        if (t_max < 0) t_max = simulator::default_t_max(descriptor);
        return walk.probability_curve(t_max).p;
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      py::arg("t_max") = -1,
      "Brute-force success probability p(t) for t = 0..t_max");

  m.def(
      "dense_smallest_eigenphase",
      [](const std::string& graph, int size,
         const std::vector<std::uint64_t>& marked) {
        const GraphDescriptor descriptor = make_graph(graph, size);
        const simulator::Walk walk(
            descriptor, make_marked_set(marked, descriptor.vertex_count()));
        return walk.smallest_nonzero_eigenphase();
      },
      py::arg("graph"), py::arg("size"), py::arg("marked"),
      "Dense-diagonalization oracle: (smallest eigenphase, gap to next)");

  m.def("c_estimate", &asymptotics::c_estimate, py::arg("sqrt_n"),
        "Lattice constant c = S1/(N ln N)");

  m.def(
      "hypercube_sums",
      [](int n, std::uint64_t v0) {
        const HypercubeSums sums = asymptotics::hypercube_sums(n, v0);
        return py::make_tuple(sums.S_odd, sums.S_even);
      },
      py::arg("n"), py::arg("v0"),
      "Parity-split inverse-weight sums (S_odd, S_even)");

  m.def(
      "lemma_b1",
      [](int n) {
        const auto [lhs, rhs] = asymptotics::lemma_b1_check(n);
        return py::make_tuple(lhs, rhs, asymptotics::lemma_b1_bound(n));
      },
      py::arg("n"), "Weight-sum expansion check: (lhs, rhs, bound)");

  m.def(
      "lemma_b2",
      [](int n, int v, bool brute) {
        const auto [lhs, rhs] = asymptotics::lemma_b2_check(n, v, brute);
        return py::make_tuple(lhs, rhs);
      },
      py::arg("n"), py::arg("v"), py::arg("brute") = false,
      "Signed weight-sum identity check: (lhs, rhs)");

  m.def(
      "conjecture_prediction",
      [](int n, int m_count) {
        const AsymptoticPrediction p =
            asymptotics::conjecture_prediction(n, m_count);
        return py::make_tuple(p.lambda, p.t_opt, p.p_succ);
      },
      py::arg("n"), py::arg("m_count"),
      "Rescaled closed form (lambda, t_opt, p_succ) for |M| marked vertices");
}
