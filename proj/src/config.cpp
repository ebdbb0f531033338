#include "gapsim/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gapsim {

using nlohmann::json;

namespace {

std::vector<double> number_or_list(const json& j, const std::string& key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (j[key].is_number()) {
    out.push_back(j[key].get<double>());
  } else if (j[key].is_array()) {
    for (const auto& v : j[key]) out.push_back(v.get<double>());
  } else {
    throw ConfigError("key '" + key + "' must be a number or a list");
  }
  return out;
}

std::vector<BlockParams> parse_block_param_list(const json& j) {
  std::vector<BlockParams> params;
  for (const auto& entry : j) {
    if (entry.is_array() && entry.size() == 2) {
      params.push_back({entry[0].get<double>(), entry[1].get<double>()});
    } else if (entry.is_object()) {
      params.push_back({entry.at("gx").get<double>(), entry.at("gz").get<double>()});
    } else {
      throw ConfigError("block_params entries must be [gx, gz] pairs or {gx, gz} objects");
    }
  }
  return params;
}

ModelSpec parse_model(const json& m) {
  ModelSpec spec;
  if (!m.contains("kind")) throw ConfigError("model config: missing 'kind'");
  spec.kind = model_kind_from_name(m["kind"].get<std::string>());
  if (spec.is_1d()) {
    if (m.contains("sites"))
      spec.cols = m["sites"].get<int>();
    else if (m.contains("cols"))
      spec.cols = m["cols"].get<int>();
    else
      throw ConfigError("1D model config: missing 'sites'");
    spec.rows = 1;
    auto j = number_or_list(m, "j");
    if (j.size() == 1)
      spec.coupling = j[0];
    else if (j.size() > 1)
      spec.bond_couplings = j;
  } else {
    if (!m.contains("rows") || !m.contains("cols"))
      throw ConfigError("2D model config: missing 'rows'/'cols'");
    spec.rows = m["rows"].get<int>();
    spec.cols = m["cols"].get<int>();
    if (spec.kind == ModelKind::TFI2D) {
      spec.coupling_vertical = m.value("j1", 1.0);
      spec.coupling_horizontal = m.value("j2", 1.0);
    } else {
      spec.coupling_vertical = m.value("jz", 1.0);
      spec.coupling_horizontal = m.value("jx", 1.0);
    }
  }
  auto hz = number_or_list(m, "hz");
  if (hz.size() == 1)
    spec.field_z = hz[0];
  else if (hz.size() > 1)
    spec.field_z_per_site = hz;
  auto hx = number_or_list(m, "hx");
  if (hx.size() == 1)
    spec.field_x = hx[0];
  else if (hx.size() > 1)
    spec.field_x_per_site = hx;
  spec.periodic = m.value("periodic", false);
  if (m.contains("block_params")) {
    const auto& bp = m["block_params"];
    if (bp.is_string()) {
      const std::string policy = bp.get<std::string>();
      if (policy == "paper")
        spec.params = ParamPolicy::Paper;
      else if (policy == "coloring")
        spec.params = ParamPolicy::Coloring;
      else
        throw ConfigError("block_params must be 'paper', 'coloring', or an explicit list");
    } else if (bp.is_array()) {
      spec.params = ParamPolicy::Explicit;
      spec.explicit_params = parse_block_param_list(bp);
    } else {
      throw ConfigError("block_params must be 'paper', 'coloring', or an explicit list");
    }
  }
  return spec;
}

json spec_to_json(const ModelSpec& spec) {
  json m;
  m["kind"] = model_kind_name(spec.kind);
  if (spec.is_1d()) {
    m["sites"] = spec.cols;
    if (!spec.bond_couplings.empty())
      m["j"] = spec.bond_couplings;
    else
      m["j"] = spec.coupling;
  } else {
    m["rows"] = spec.rows;
    m["cols"] = spec.cols;
    if (spec.kind == ModelKind::TFI2D) {
      m["j1"] = spec.coupling_vertical;
      m["j2"] = spec.coupling_horizontal;
    } else {
      m["jz"] = spec.coupling_vertical;
      m["jx"] = spec.coupling_horizontal;
    }
  }
  if (!spec.field_z_per_site.empty())
    m["hz"] = spec.field_z_per_site;
  else
    m["hz"] = spec.field_z;
  if (!spec.field_x_per_site.empty())
    m["hx"] = spec.field_x_per_site;
  else
    m["hx"] = spec.field_x;
  m["periodic"] = spec.periodic;
  switch (spec.params) {
    case ParamPolicy::Paper: m["block_params"] = "paper"; break;
    case ParamPolicy::Coloring: m["block_params"] = "coloring"; break;
    case ParamPolicy::Explicit: {
      json list = json::array();
      for (const auto& p : spec.explicit_params) list.push_back({p.gx, p.gz});
      m["block_params"] = list;
      break;
    }
  }
  return m;
}

}  // namespace

ModelSpec model_spec_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model JSON parse error: ") + e.what());
  }
  return parse_model(j);
}

RunConfig run_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  RunConfig config;
  try {
    if (j.contains("model")) config.model = parse_model(j["model"]);
    if (j.contains("encoded")) config.encoded_path = j["encoded"].get<std::string>();
    config.master_seed = j.value("seed", uint64_t{1});
    config.workers = j.value("workers", 0);
    config.dense_limit = j.value("dense_limit", 12);
    if (j.contains("sweep")) {
      const auto& s = j["sweep"];
      if (s.contains("lambdas")) {
        for (const auto& v : s["lambdas"]) config.sweep.lambdas.push_back(v.get<double>());
      } else if (s.contains("log2_min") && s.contains("log2_max")) {
        for (int k = s["log2_min"].get<int>(); k <= s["log2_max"].get<int>(); ++k)
          config.sweep.lambdas.push_back(std::pow(2.0, k));
      }
      config.sweep.t = s.value("t", 1.0);
      config.sweep.n_samples = s.value("samples", 20);
      config.sweep.noise_amplitude = s.value("noise_amplitude", 0.1);
      if (s.contains("axes")) {
        const std::string axes = s["axes"].get<std::string>();
        config.sweep.axis_x = axes.find('x') != std::string::npos;
        config.sweep.axis_y = axes.find('y') != std::string::npos;
        config.sweep.axis_z = axes.find('z') != std::string::npos;
      }
      config.sweep.baseline = s.value("baseline", false);
      config.sweep.timings = s.value("timings", false);
      config.sweep.lambda_single = s.value("lambda", 0.0);
    }
    if (j.contains("gadget_table")) {
      const auto& g = j["gadget_table"];
      if (g.contains("params")) config.gadget_table_params = parse_block_param_list(g["params"]);
      config.gadget_table_coupling = g.value("coupling", 1.0);
    }
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  for (double l : config.sweep.lambdas)
    if (l <= 0.0) throw ConfigError("config: lambda values must be positive");
  return config;
}

std::string encoded_system_to_json(const EncodedSystem& sys, const EncodingReport* report) {
  json j;
  j["model"] = spec_to_json(sys.spec);
  json blocks = json::array();
  for (const auto& b : sys.layout.blocks) blocks.push_back({b.gx, b.gz});
  json lmap = json::array();
  for (const auto& [block, slot] : sys.layout.logical_map) lmap.push_back({block, slot});
  j["layout"] = {{"blocks", blocks}, {"logical_map", lmap}};
  j["n_logical"] = sys.layout.n_logical();
  j["n_physical"] = sys.layout.n_physical();
  j["penalty_scale"] = sys.penalty_scale;
  j["h_tar_logical"] = to_lines(sys.h_tar_logical);
  j["h_enc1"] = to_lines(sys.h_enc1);
  j["h_enc2"] = to_lines(sys.h_enc2);
  json gadgets = json::array();
  for (const auto& g : sys.gadgets) {
    gadgets.push_back({{"blocks", {g.blocks_touched.first, g.blocks_touched.second}},
                       {"physical", to_lines(g.physical)},
                       {"target", to_lines(g.target_logical)},
                       {"residual", to_lines(g.residual_correction)}});
  }
  j["gadgets"] = gadgets;
  if (report) {
    j["verification"] = {{"c1_norm", report->c1_norm},
                         {"target_mismatch", report->target_mismatch},
                         {"h1_leakage", report->h1_leakage},
                         {"eff2_leakage", report->eff2_leakage},
                         {"tol", report->tol},
                         {"pass", report->pass}};
  }
  return j.dump(2);
}

EncodedSystem encoded_system_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("encoded system JSON: ") + e.what());
  }
  EncodedSystem sys;
  try {
    sys.spec = parse_model(j.at("model"));
    CodeLayout layout;
    for (const auto& b : j.at("layout").at("blocks"))
      layout.blocks.push_back({b[0].get<double>(), b[1].get<double>()});
    for (const auto& m : j.at("layout").at("logical_map"))
      layout.logical_map.push_back({m[0].get<int>(), m[1].get<int>()});
    layout.validate();
    sys.layout = layout;
    sys.penalty_scale = j.value("penalty_scale", 1.0);
    const int nl = layout.n_logical(), np = layout.n_physical();
    sys.h_tar_logical = operator_sum_from_lines(j.at("h_tar_logical").get<std::string>(), nl);
    sys.h_enc1 = operator_sum_from_lines(j.at("h_enc1").get<std::string>(), np);
    sys.h_enc2 = operator_sum_from_lines(j.at("h_enc2").get<std::string>(), np);
    if (j.contains("gadgets")) {
      for (const auto& g : j["gadgets"]) {
        Gadget gadget;
        gadget.blocks_touched = {g.at("blocks")[0].get<int>(), g.at("blocks")[1].get<int>()};
        gadget.physical = operator_sum_from_lines(g.at("physical").get<std::string>(), np);
        gadget.target_logical = operator_sum_from_lines(g.at("target").get<std::string>(), nl);
        gadget.residual_correction =
            operator_sum_from_lines(g.at("residual").get<std::string>(), np);
        sys.gadgets.push_back(std::move(gadget));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("encoded system JSON: ") + e.what());
  }
  return sys;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string sweep_csv(const EncodedSystem& sys, const SweepResult& result, bool timings) {
  std::ostringstream out;
  out << "model,rows,cols,lambda,seed,t,infidelity,bound,M,wall_time_s\n";
  const std::string model = model_kind_name(sys.spec.kind);
  for (const auto& rec : result.records) {
    char seed_buf[32];
    std::snprintf(seed_buf, sizeof(seed_buf), "%" PRIu64, rec.seed);
    out << model << ',' << sys.spec.rows << ',' << sys.spec.cols << ','
        << format_double(rec.lambda) << ',' << seed_buf << ',' << format_double(rec.t) << ','
        << format_double(rec.infidelity) << ','
        << (rec.bound ? format_double(*rec.bound) : "nan") << ',' << format_double(rec.m_value)
        << ',' << (timings ? format_double(rec.wall_time_s) : "0") << "\n";
  }
  return out.str();
}

std::string sweep_summary_json(const EncodedSystem& sys, const SweepResult& result,
                               std::optional<double> baseline_mean) {
  json j;
  j["model"] = model_kind_name(sys.spec.kind);
  j["rows"] = sys.spec.rows;
  j["cols"] = sys.spec.cols;
  json stats = json::array();
  for (const auto& s : result.stats)
    stats.push_back({{"lambda", s.lambda},
                     {"mean_infidelity", s.mean_infidelity},
                     {"stddev_infidelity", s.stddev_infidelity}});
  j["per_lambda"] = stats;
  if (result.fitted_slope) j["fitted_slope"] = *result.fitted_slope;
  if (result.slope_half_width) j["slope_ci95_half_width"] = *result.slope_half_width;
  if (baseline_mean) j["unencoded_mean_infidelity"] = *baseline_mean;
  double total = 0.0;
  for (const auto& rec : result.records) total += rec.wall_time_s;
  j["total_run_seconds"] = total;
  return j.dump(2);
}

}  // namespace gapsim
