#include "qwsearch/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qwsearch/errors.hpp"

namespace qwsearch::serialize {

namespace {

using nlohmann::json;

GraphDescriptor descriptor_from_name(const std::string& name, int size) {
  if (name == "lattice") return lattice_graph(size);
  if (name == "hypercube") return hypercube_graph(size);
  if (name == "generic") return GraphDescriptor{GraphFamily::generic, size};
  throw QwError(ErrorCode::ConfigError, "unknown graph family '" + name + "'");
}

json matrix_part_to_json(const Eigen::MatrixXcd& m, bool real_part) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(real_part ? m(i, j).real() : m(i, j).imag());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_parts(const json& re, const json& im) {
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(re[0].size()) : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = cplx(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>(),
                     im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json complex_to_json(const cplx& z) {
  return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw QwError(ErrorCode::ConfigError, "complex value must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json model_to_json(const SpectralModel& model) {
  json j;
  j["graph"] = model.graph.name();
  json params;
  params["size"] = model.graph.size;
  params["hilbert_dim"] = model.hilbert_dim;
  params["marked"] = model.marked.vertices;
  params["zero_phase_index"] = model.zero_phase_index;
  params["zero_phase_rank"] = model.zero_phase_rank;
  params["zero_phase_straddle"] = model.zero_phase_straddle;
  j["params"] = std::move(params);

  json groups = json::array();
  for (const PhaseGroup& group : model.groups) {
    json g;
    g["phase"] = group.phase;
    g["degeneracy"] = group.degeneracy;
    g["block_re"] = matrix_part_to_json(group.block, true);
    g["block_im"] = matrix_part_to_json(group.block, false);
    groups.push_back(std::move(g));
  }
  j["groups"] = std::move(groups);

  json overlaps = json::array();
  for (Eigen::Index i = 0; i < model.initial_overlaps.size(); ++i) {
    overlaps.push_back(complex_to_json(model.initial_overlaps(i)));
  }
  j["initial_overlaps"] = std::move(overlaps);
  return j;
}

SpectralModel model_from_json(const nlohmann::json& j) {
  SpectralModel model;
  const json& params = j.at("params");
  model.graph = descriptor_from_name(j.at("graph").get<std::string>(),
                                     params.at("size").get<int>());
  model.hilbert_dim = params.at("hilbert_dim").get<double>();
  model.marked.vertices = params.at("marked").get<std::vector<std::uint64_t>>();
  model.zero_phase_index = params.at("zero_phase_index").get<int>();
  model.zero_phase_rank = params.at("zero_phase_rank").get<int>();
  model.zero_phase_straddle = params.at("zero_phase_straddle").get<bool>();

  for (const json& g : j.at("groups")) {
    PhaseGroup group;
    group.phase = g.at("phase").get<double>();
    group.degeneracy = g.at("degeneracy").get<std::int64_t>();
    group.block = matrix_from_parts(g.at("block_re"), g.at("block_im"));
    model.groups.push_back(std::move(group));
  }

  const json& overlaps = j.at("initial_overlaps");
  model.initial_overlaps = Eigen::VectorXcd(static_cast<Eigen::Index>(overlaps.size()));
  for (std::size_t i = 0; i < overlaps.size(); ++i) {
    model.initial_overlaps(static_cast<Eigen::Index>(i)) =
        complex_from_json(overlaps[i]);
  }
  return model;
}

nlohmann::json solution_to_json(const LambdaSolution& solution) {
  json j;
  j["lambda"] = solution.lambda;
  j["t_opt"] = solution.t_opt;
  j["p_succ"] = solution.p_succ;
  j["t_run"] = solution.t_run;
  j["det_residual"] = solution.det_residual;
  json amps = json::array();
  for (Eigen::Index i = 0; i < solution.marked_amplitudes.size(); ++i) {
    amps.push_back(complex_to_json(solution.marked_amplitudes(i)));
  }
  j["marked_amplitudes"] = std::move(amps);
  j["initial_overlap"] = complex_to_json(solution.initial_overlap);
  json diag;
  diag["alpha"] = solution.alpha;
  diag["null_residual"] = solution.diagnostics.null_residual;
  diag["normalization_error"] = solution.diagnostics.normalization_error;
  diag["sign_changes"] = solution.diagnostics.sign_changes;
  diag["bracket_rounds"] = solution.diagnostics.bracket_rounds;
  j["diagnostics"] = std::move(diag);
  return j;
}

LambdaSolution solution_from_json(const nlohmann::json& j) {
  LambdaSolution solution;
  solution.lambda = j.at("lambda").get<double>();
  solution.t_opt = j.at("t_opt").get<double>();
  solution.p_succ = j.at("p_succ").get<double>();
  solution.t_run = j.at("t_run").get<double>();
  solution.det_residual = j.at("det_residual").get<double>();
  const json& amps = j.at("marked_amplitudes");
  solution.marked_amplitudes = Eigen::VectorXcd(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    solution.marked_amplitudes(static_cast<Eigen::Index>(i)) =
        complex_from_json(amps[i]);
  }
  solution.initial_overlap = complex_from_json(j.at("initial_overlap"));
  const json& diag = j.at("diagnostics");
  solution.alpha = diag.at("alpha").get<double>();
  solution.diagnostics.null_residual = diag.at("null_residual").get<double>();
  solution.diagnostics.normalization_error =
      diag.at("normalization_error").get<double>();
  solution.diagnostics.sign_changes = diag.at("sign_changes").get<int>();
  solution.diagnostics.bracket_rounds = diag.at("bracket_rounds").get<int>();
  return solution;
}

std::string curve_to_csv(const ProbabilityCurve& curve) {
  std::ostringstream out;
  out << "t,p\n";
  for (std::size_t t = 0; t < curve.p.size(); ++t) {
    out << t << ',' << fmt_double(curve.p[t]) << '\n';
  }
  return out.str();
}

std::string scaling_to_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "n,N,m_count,lambda,t_opt,p_succ,t_run,rescaled_t,error\n";
  for (const ScalingRow& row : rows) {
    out << row.n << ',' << fmt_double(row.N) << ',' << row.m_count << ',';
    if (row.error.empty()) {
      out << fmt_double(row.lambda) << ',' << fmt_double(row.t_opt) << ','
          << fmt_double(row.p_succ) << ',' << fmt_double(row.t_run) << ','
          << fmt_double(row.rescaled_t) << ',';
    } else {
      out << ",,,,,";
    }
    out << row.error << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw QwError(ErrorCode::ConfigError, "cannot open '" + tmp + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw QwError(ErrorCode::ConfigError, "write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw QwError(ErrorCode::ConfigError, "rename to '" + path + "' failed");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw QwError(ErrorCode::ConfigError, "cannot open '" + path + "'");
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace qwsearch::serialize
