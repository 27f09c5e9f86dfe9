#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwsearch/types.hpp"

namespace qwsearch::experiments {

// Counter-free SplitMix64 generator: tiny state, full 64-bit output,
// deterministic across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next();
  // Unbiased draw in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);
};

// Distinct vertex sample keyed by (seed, graph size, count): the same key
// always yields the same marked set, independent of call order.
std::vector<std::uint64_t> sample_marked(std::uint64_t seed,
                                         const GraphDescriptor& graph,
                                         int count);

struct MarkedSpec {
  bool random = false;
  std::vector<std::uint64_t> list;  // explicit labels when !random
  int count = 0;                    // K when random
  std::uint64_t seed = 0;
};

MarkedSpec parse_marked_spec(const std::string& text);  // "a,b,c" | "random:K:seed"

struct ExperimentConfig {
  GraphFamily family = GraphFamily::hypercube;
  std::vector<int> sizes;
  MarkedSpec marked;
  std::string out_path;
  int t_max = -1;       // -1: per-size default
  int min_n_fit = 30;
};

// Exit codes shared by all modes: 0 ok, 2 validation failure, 3 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 2;
inline constexpr int kExitConfigError = 3;

GraphDescriptor descriptor_for(const ExperimentConfig& config, int size);
MarkedSet resolve_marked(const ExperimentConfig& config, int size);

// Solver run per size; JSON array of {graph, size, marked, solution|error}.
int run_analyze(const ExperimentConfig& config);

// Brute-force probability curve (single size); CSV "t,p".
int run_simulate(const ExperimentConfig& config);

// Solver-vs-dense-oracle table; exit 2 when any |Δλ| > 1e-8 or
// |t_opt − t_peak| > max(2, 0.05·t_opt).
int run_validate(const ExperimentConfig& config);

// ScalingRow CSV over (size, |M|); per-row failures land in the error
// column and the run continues.
int run_scaling(const ExperimentConfig& config);

struct FitResult {
  double slope = 0;       // fitted exponent is −slope
  double intercept = 0;   // fitted coefficient is e^intercept
  double r_squared = 0;
  int used_rows = 0;
  int dropped_rows = 0;   // rows with 0.5 − p_succ ≤ 0
};

// Least squares on (ln n, ln(0.5 − p_succ)) for rows with n ≥ min_n.
// Throws InsufficientData below 3 usable rows.
FitResult fit_rows(const std::vector<std::pair<double, double>>& n_and_p,
                   int min_n);

// Reads columns n, p_succ from a scaling CSV.
FitResult run_fit_csv(const std::string& csv_path, int min_n);

// Scaling sweep for the config followed by the log-log fit; JSON output.
int run_fit(const ExperimentConfig& config);

// Combinatorial identity table, CSV "lemma,n,v,lhs,rhs,abs_err"; exit 2 on
// any identity violation.
int run_lemmas(const ExperimentConfig& config);

// c_estimate table over √N ∈ {64,128,256,512,1024} with convergence
// diagnostic; CSV output; exit 2 when bounds are violated.
int run_constants(const ExperimentConfig& config);

}  // namespace qwsearch::experiments
