#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gapsim/config.hpp"
#include "gapsim/dynamics.hpp"
#include "gapsim/gadget.hpp"
#include "gapsim/rng.hpp"
#include "gapsim/verify.hpp"

namespace {

using namespace gapsim;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write to '" + path + "'");
  out << content;
}

EncodedSystem load_system(const RunConfig& config) {
  if (config.encoded_path) {
    std::ifstream in(*config.encoded_path);
    if (!in) throw ConfigError("cannot open encoded system '" + *config.encoded_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return encoded_system_from_json(text);
  }
  if (!config.model) throw ConfigError("config needs a 'model' or 'encoded' entry");
  return encode(*config.model);
}

NoiseSpec noise_from_config(const SweepConfig& sweep) {
  NoiseSpec noise;
  noise.amplitude_bound = sweep.noise_amplitude;
  noise.axis_x = sweep.axis_x;
  noise.axis_y = sweep.axis_y;
  noise.axis_z = sweep.axis_z;
  return noise;
}

EvolveOptions evolve_options(const RunConfig& config) {
  EvolveOptions opts;
  // dense_limit is a qubit count; the dense evolution path caps at 2^limit.
  const int capped = std::min(config.dense_limit, 13);
  opts.dense_dim_limit = 1 << std::max(capped, 0);
  return opts;
}

int cmd_encode(const RunConfig& config, const std::string& out_path) {
  EncodedSystem sys = load_system(config);
  EncodingReport report = verify_encoding(sys);
  std::string doc = encoded_system_to_json(sys, &report);
  if (out_path.empty())
    std::cout << doc << "\n";
  else
    write_file(out_path, doc);
  std::cerr << "encoding conditions: |P0 H2 P0| = " << report.c1_norm
            << ", target mismatch = " << report.target_mismatch
            << ", H1 leakage = " << report.h1_leakage
            << ", Heff2 leakage = " << report.eff2_leakage << " (tol " << report.tol << ")\n";
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const RunConfig& config, const std::string& out_path, bool have_config) {
  CheckReport report = full_battery();
  if (have_config && (config.model || config.encoded_path)) {
    EncodedSystem sys = load_system(config);
    EncodingReport enc = verify_encoding(sys);
    report.add("config model |P0 H2 P0|", enc.c1_norm, enc.tol);
    report.add("config model target mismatch", enc.target_mismatch, enc.tol);
    report.add("config model H1 leakage", enc.h1_leakage, enc.tol);
    report.add("config model Heff2 leakage", enc.eff2_leakage, enc.tol);
  }
  std::cout << report.text();
  if (!out_path.empty()) write_file(out_path, report.csv());
  return report.overall ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const RunConfig& config, const std::string& out_path) {
  EncodedSystem sys = load_system(config);
  if (config.sweep.lambdas.empty()) throw ConfigError("sweep config: no lambda values");
  NoiseSpec noise = noise_from_config(config.sweep);
  SweepResult result = sweep_lambda(sys, config.sweep.lambdas, noise, config.sweep.t,
                                    config.sweep.n_samples, config.master_seed, config.workers,
                                    evolve_options(config));
  std::optional<double> baseline;
  if (config.sweep.baseline) {
    double sum = 0.0;
    for (int s = 0; s < config.sweep.n_samples; ++s) {
      const uint64_t run_seed = derive_stream(config.master_seed, 0xba5eULL, s);
      NoiseSpec bn = noise;
      bn.seed = derive_stream(run_seed, 2);
      sum += run_unencoded(sys, bn, config.sweep.t, derive_stream(run_seed, 1));
    }
    baseline = sum / config.sweep.n_samples;
  }
  const std::string csv = sweep_csv(sys, result, config.sweep.timings);
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  const std::string summary = sweep_summary_json(sys, result, baseline);
  if (!out_path.empty()) write_file(out_path + ".summary.json", summary);
  std::cerr << summary << "\n";
  return kExitOk;
}

int cmd_evolve(const RunConfig& config, const std::string& out_path) {
  EncodedSystem sys = load_system(config);
  double lambda = config.sweep.lambda_single;
  if (lambda == 0.0) {
    if (config.sweep.lambdas.empty())
      throw ConfigError("evolve config: set sweep.lambda or sweep.lambdas");
    lambda = config.sweep.lambdas.front();
  }
  NoiseSpec noise = noise_from_config(config.sweep);
  const uint64_t run_seed = derive_stream(config.master_seed, 0, 0);
  noise.seed = derive_stream(run_seed, 2);
  RunResult run = run_simulation(sys, lambda, noise, config.sweep.t, derive_stream(run_seed, 1),
                                 evolve_options(config));
  std::ostringstream out;
  out << "{\n  \"lambda\": " << lambda << ",\n  \"t\": " << config.sweep.t
      << ",\n  \"infidelity\": " << run.infidelity << ",\n  \"M\": " << run.m_value
      << ",\n  \"bound\": " << (run.bound ? std::to_string(*run.bound) : "null") << "\n}\n";
  if (out_path.empty())
    std::cout << out.str();
  else
    write_file(out_path, out.str());
  return kExitOk;
}

int cmd_gadget_table(const RunConfig& config, const std::string& out_path) {
  std::vector<BlockParams> params = config.gadget_table_params;
  if (params.empty()) {
    if (config.model) {
      EncodedSystem sys = encode(*config.model);
      params = sys.layout.blocks;
    } else {
      params = {{1, 3}, {1, 3}};
    }
  }
  if (params.size() < 2) throw ConfigError("gadget-table needs at least two blocks");
  CodeLayout layout = CodeLayout::with_params(params);
  const double j = config.gadget_table_coupling;
  std::ostringstream out;
  out << "block parameters:";
  for (const auto& p : layout.blocks) out << " (" << p.gx << "," << p.gz << ")";
  out << "\n\n-- ZZ gadget, J = " << j << " --\n"
      << gadget_report(make_zz_gadget(0, 1, j, layout), layout) << "\n-- XX gadget, J = " << j
      << " --\n"
      << gadget_report(make_xx_gadget(0, 1, j, layout), layout) << "\n-- XY gadget, Jz = Jx = "
      << j << " --\n"
      << gadget_report(make_xy_gadget(0, 1, j, j, layout), layout);
  if (out_path.empty())
    std::cout << out.str();
  else
    write_file(out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-resilient analog-simulation encodings: penalty Hamiltonians, "
               "[[4n,2n,2]] codes, perturbative gadgets, and noisy-dynamics sweeps"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  uint64_t seed_override = 0;
  bool seed_given = false;
  int workers_override = -1;
  int dense_limit_override = -1;

  app.add_option("--config", config_path, "JSON configuration file")->expected(1);
  app.add_option("--out", out_path, "output path (stdout when omitted)");
  app.add_option("--seed", seed_override, "master seed override")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--workers", workers_override, "worker thread count (default: cores)");
  app.add_option("--dense-limit", dense_limit_override, "dense-construction qubit limit");

  auto* encode_cmd = app.add_subcommand("encode", "encode a model and verify the result");
  auto* verify_cmd = app.add_subcommand("verify", "run the full verification battery");
  auto* evolve_cmd = app.add_subcommand("evolve", "single noisy run at one lambda");
  auto* sweep_cmd = app.add_subcommand("sweep", "lambda sweep producing CSV and summary");
  auto* table_cmd = app.add_subcommand("gadget-table", "print the gadget lookup table");
  for (auto* sub : {encode_cmd, verify_cmd, evolve_cmd, sweep_cmd, table_cmd}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config;
    if (!config_path.empty()) config = run_config_from_file(config_path);
    if (seed_given) config.master_seed = seed_override;
    if (workers_override >= 0) config.workers = workers_override;
    if (dense_limit_override >= 0) config.dense_limit = dense_limit_override;

    if (encode_cmd->parsed()) return cmd_encode(config, out_path);
    if (verify_cmd->parsed()) return cmd_verify(config, out_path, !config_path.empty());
    if (evolve_cmd->parsed()) return cmd_evolve(config, out_path);
    if (sweep_cmd->parsed()) return cmd_sweep(config, out_path);
    if (table_cmd->parsed()) return cmd_gadget_table(config, out_path);
    std::cerr << "no subcommand\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UnsupportedOperatorError& e) {
    std::cerr << "unsupported operator: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const GadgetError& e) {
    std::cerr << "gadget error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  }
}
