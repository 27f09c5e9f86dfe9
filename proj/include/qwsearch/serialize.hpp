#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwsearch/types.hpp"

namespace qwsearch::serialize {

// Shortest round-trip decimal form of a double ("%.17g" trimmed by the
// JSON library; CSV uses this directly).  Deterministic: identical bits
// produce identical text.
std::string fmt_double(double x);

nlohmann::json complex_to_json(const cplx& z);  // [re, im]
cplx complex_from_json(const nlohmann::json& j);

// {graph, params, groups: [{phase, degeneracy, block_re, block_im}],
//  initial_overlaps}
nlohmann::json model_to_json(const SpectralModel& model);
SpectralModel model_from_json(const nlohmann::json& j);

// {lambda, t_opt, p_succ, t_run, marked_amplitudes, initial_overlap,
//  det_residual, diagnostics}
nlohmann::json solution_to_json(const LambdaSolution& solution);
LambdaSolution solution_from_json(const nlohmann::json& j);

// Header "t,p"; one row per integer step.
std::string curve_to_csv(const ProbabilityCurve& curve);

// Header "n,N,m_count,lambda,t_opt,p_succ,t_run,rescaled_t,error".
std::string scaling_to_csv(const std::vector<ScalingRow>& rows);

// Writes content through a temporary file plus rename, so readers never
// observe a partial file.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace qwsearch::serialize
