#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapsim/dynamics.hpp"
#include "gapsim/models.hpp"

namespace gapsim {

struct SweepConfig {
  std::vector<double> lambdas;
  double t = 1.0;
  int n_samples = 20;
  double noise_amplitude = 0.1;
  bool axis_x = true, axis_y = true, axis_z = true;
  bool baseline = false;
  bool timings = false;  // real wall times in the CSV (off keeps output bit-stable)
  double lambda_single = 0.0;  // for the evolve command; 0 = first sweep lambda
};

struct RunConfig {
  std::optional<ModelSpec> model;
  std::optional<std::string> encoded_path;
  SweepConfig sweep;
  uint64_t master_seed = 1;
  int workers = 0;
  int dense_limit = 12;
  std::vector<BlockParams> gadget_table_params;  // for the gadget-table command
  double gadget_table_coupling = 1.0;
};

ModelSpec model_spec_from_json(const std::string& json_text);
RunConfig run_config_from_file(const std::string& path);

std::string encoded_system_to_json(const EncodedSystem& sys, const EncodingReport* report);
EncodedSystem encoded_system_from_json(const std::string& json_text);

/// CSV rows in the sweep schema:
/// model,rows,cols,lambda,seed,t,infidelity,bound,M,wall_time_s
std::string sweep_csv(const EncodedSystem& sys, const SweepResult& result, bool timings);

/// Summary document: fitted slope, per-lambda statistics, optional baseline.
std::string sweep_summary_json(const EncodedSystem& sys, const SweepResult& result,
                               std::optional<double> baseline_mean);

}  // namespace gapsim
