#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapsim/linalg.hpp"
#include "gapsim/models.hpp"
#include "gapsim/operator_matrix.hpp"

namespace gapsim {

/// 1-local coherent noise: one term per (qubit, axis) with amplitude drawn
/// uniformly from [-amplitude_bound, amplitude_bound].
struct NoiseSpec {
  double amplitude_bound = 0.1;
  bool axis_x = true, axis_y = true, axis_z = true;
  uint64_t seed = 0;
};

OperatorSum sample_noise(int n_qubits, const NoiseSpec& spec);

/// Haar-random state in S_enc: independent standard complex Gaussians over
/// the codewords, normalized.
StateVector random_encoded_state(const CodeLayout& layout, uint64_t seed);

enum class EvolveMethod { Auto, Dense, Chebyshev, Krylov };

struct EvolveOptions {
  EvolveMethod method = EvolveMethod::Auto;
  double tol = 1e-12;           // truncation / residual target per step
  int krylov_dim = 30;          // Lanczos subspace size
  double krylov_step_norm = 20.0;  // ||h|| * dt per Krylov substep
  int dense_dim_limit = 4096;   // largest dimension eligible for dense path
};

/// exp(-i h t) v. Auto picks the cheapest of the exact-eigendecomposition and
/// Chebyshev backends from a deterministic cost model; Krylov (adaptive
/// Lanczos substepping) is available explicitly. Norm preserved to 1e-10.
StateVector evolve(const OperatorSum& h, const StateVector& v, double t,
                   const EvolveOptions& opts = {});
StateVector evolve(const OperatorMatrix& h, const StateVector& v, double t,
                   const EvolveOptions& opts = {});

struct RunResult {
  double infidelity = 0.0;
  double m_value = 0.0;              // Theorem-2 M for this run's noise draw
  std::optional<double> bound;       // (M/lambda)(6+13Mt)^2 when lambda >= 25M
};

/// One noisy encoded run: H_tot = lambda*Hpen + H1 + sqrt(lambda)*H2 + V,
/// infidelity 1 - |<psi_tar(t)|psi(t)>|^2 against the logical target
/// evolution embedded through the codewords.
RunResult run_simulation(const EncodedSystem& sys, double lambda, const NoiseSpec& noise,
                         double t, uint64_t state_seed, const EvolveOptions& opts = {});

/// Unencoded comparison: evolve H_tar + V on the 2n logical sites directly
/// with freshly sampled 1-local noise; returns the infidelity.
double run_unencoded(const EncodedSystem& sys, const NoiseSpec& noise, double t,
                     uint64_t state_seed);

/// M = max(||H_enc2||^2, ||H_enc1 + V||), spectral norms.
double compute_M(const EncodedSystem& sys, const OperatorSum& noise);

/// Theorem-2 infidelity bound; empty when lambda < 25 M (inapplicable).
std::optional<double> theorem2_bound(double m_value, double lambda, double t);

struct SweepRecord {
  double lambda = 0.0;
  uint64_t seed = 0;  // derived per-run stream key
  double t = 0.0;
  double infidelity = 0.0;
  double m_value = 0.0;
  std::optional<double> bound;
  double wall_time_s = 0.0;
};

struct LambdaStats {
  double lambda = 0.0;
  double mean_infidelity = 0.0;
  double stddev_infidelity = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // lambda-major, sample-minor order
  std::vector<LambdaStats> stats;
  std::optional<double> fitted_slope;      // log-log least squares
  std::optional<double> slope_half_width;  // 95% confidence half-width
};

/// n_samples runs per lambda with per-task RNG streams derived from
/// (master_seed, lambda_index, sample_index); embarrassingly parallel.
SweepResult sweep_lambda(const EncodedSystem& sys, const std::vector<double>& lambdas,
                         const NoiseSpec& noise, double t, int n_samples, uint64_t master_seed,
                         int workers = 0, const EvolveOptions& opts = {});

struct UnitaryDiffReport {
  double kappa = 0.0;
  double q0wp0_norm = 0.0;
  double lhs = 0.0;   // ||exp(-iHt)P0 - exp(-iHeff t)P0||
  double rhs = 0.0;   // 5 kappa + 6 kappa^2 ||Q0 W P0|| t
  bool precondition_ok = false;
  bool holds = false;
};

/// Dense check of the second-order effective-dynamics bound for H = H0 + W,
/// with H0 the (scaled) penalty Hamiltonian. Requires kappa = ||W||/Delta
/// <= 1/4; dense, so limited to small systems.
UnitaryDiffReport unitary_diff_bound_check(const OperatorSum& h_pen_scaled, const OperatorSum& w,
                                           double t);

}  // namespace gapsim
