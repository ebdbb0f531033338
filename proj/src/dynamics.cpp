#include "gapsim/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cfloat>
#include <cmath>
#include <thread>

#include "gapsim/bell.hpp"
#include "gapsim/rng.hpp"

namespace gapsim {

OperatorSum sample_noise(int n_qubits, const NoiseSpec& spec) {
  OperatorSum v(n_qubits);
  if (spec.amplitude_bound < 0.0) throw ConfigError("noise amplitude_bound must be >= 0");
  if (spec.amplitude_bound == 0.0) return v;
  Rng rng(derive_stream(spec.seed, 0x6e6f697365ULL));  // "noise" stream
  for (int q = 0; q < n_qubits; ++q) {
    for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const double amp = rng.uniform_symmetric(spec.amplitude_bound);
      const bool enabled = (axis == Pauli::X && spec.axis_x) ||
                           (axis == Pauli::Y && spec.axis_y) ||
                           (axis == Pauli::Z && spec.axis_z);
      if (enabled) v.add(PauliString::single(n_qubits, q, axis, amp));
    }
  }
  return v;
}

namespace {

Eigen::VectorXcd random_codeword_coeffs(const CodeLayout& layout, uint64_t seed) {
  const Eigen::Index dim = Eigen::Index{1} << (2 * layout.n_blocks());
  Rng rng(derive_stream(seed, 0x7374617465ULL));  // "state" stream
  Eigen::VectorXcd c(dim);
  for (Eigen::Index i = 0; i < dim; ++i) c[i] = cplx(rng.gaussian(), rng.gaussian());
  c.normalize();
  return c;
}

StateVector embed_codeword_coeffs(const BellFrame& frame, const Eigen::VectorXcd& coeffs) {
  const auto labels = frame.codeword_labels();
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(frame.dim()));
  for (size_t k = 0; k < labels.size(); ++k)
    v[static_cast<Eigen::Index>(labels[k])] = coeffs[static_cast<Eigen::Index>(k)];
  frame.from_bell(v);
  return v;
}

}  // namespace

StateVector random_encoded_state(const CodeLayout& layout, uint64_t seed) {
  layout.validate();
  BellFrame frame(layout);
  return embed_codeword_coeffs(frame, random_codeword_coeffs(layout, seed));
}

// ---------------------------------------------------------------------------
// Evolution backends.

namespace {

// J_0..J_kmax at argument tau via Miller downward recurrence.
std::vector<double> bessel_j_array(double tau, int kmax) {
  const int margin = static_cast<int>(std::ceil(12.0 * std::cbrt(std::max(tau, 1.0)))) + 40;
  const int start = kmax + margin;
  std::vector<double> j(static_cast<size_t>(start) + 2, 0.0);
  j[static_cast<size_t>(start) + 1] = 0.0;
  j[static_cast<size_t>(start)] = 1e-280;
  for (int k = start; k >= 1; --k) {
    j[static_cast<size_t>(k) - 1] =
        (2.0 * k / tau) * j[static_cast<size_t>(k)] - j[static_cast<size_t>(k) + 1];
    if (std::abs(j[static_cast<size_t>(k) - 1]) > 1e270) {
      for (size_t i = static_cast<size_t>(k) - 1; i < j.size(); ++i) j[i] *= 1e-270;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<size_t>(k)];
  for (auto& value : j) value /= norm;
  j.resize(static_cast<size_t>(kmax) + 1);
  return j;
}

// exp(-i h t) v as a Chebyshev series with Bessel coefficients, spectrum
// bounded by rho >= ||h||. Truncation error is the coefficient tail, kept
// below tol by construction.
StateVector evolve_chebyshev(const PauliApplier& applier, double rho, const StateVector& v,
                             double t, double tol) {
  const double tau = rho * std::abs(t);
  if (tau == 0.0) return v;
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  const int kmax =
      static_cast<int>(std::ceil(tau + std::max(60.0, 22.0 * std::cbrt(tau)))) + 10;
  std::vector<double> bessel = bessel_j_array(tau, kmax);

  // Truncate where the remaining coefficient mass drops below tol.
  double tail = 0.0;
  int cutoff = kmax;
  for (int k = kmax; k >= 1; --k) {
    tail += 2.0 * std::abs(bessel[static_cast<size_t>(k)]);
    if (tail > 0.25 * tol) {
      cutoff = std::min(k + 1, kmax);
      break;
    }
  }

  const Eigen::Index dim = v.size();
  StateVector t_prev = v;
  StateVector t_cur(dim), t_next(dim), hv(dim);
  applier.apply(t_prev.data(), hv.data());
  t_cur = hv / rho;

  // c_k = (2 - delta_k0) (-i sign)^k J_k(tau)
  const cplx unit(0.0, -sign);
  cplx phase(1.0, 0.0);
  StateVector y = bessel[0] * t_prev;
  phase *= unit;
  y += 2.0 * bessel[1] * phase * t_cur;
  for (int k = 2; k <= cutoff; ++k) {
    applier.apply(t_cur.data(), hv.data());
    t_next = (2.0 / rho) * hv - t_prev;
    phase *= unit;
    y += (2.0 * bessel[static_cast<size_t>(k)]) * phase * t_next;
    t_prev.swap(t_cur);
    t_cur.swap(t_next);
  }
  return y;
}

// Adaptive Lanczos approximation of exp(-i h t) v: substeps sized so that
// ||h|| * dt stays near step_norm, with a residual-based early exit.
StateVector evolve_krylov(const PauliApplier& applier, double norm_bound, const StateVector& v,
                          double t, const EvolveOptions& opts) {
  const Eigen::Index dim = v.size();
  const int m_max = std::max(2, opts.krylov_dim);
  StateVector current = v;
  double remaining = std::abs(t);
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  const double base_step =
      norm_bound > 0.0 ? opts.krylov_step_norm / norm_bound : std::abs(t);
  double step = std::min(remaining, base_step);
  int guard = 0;
  while (remaining > 0.0) {
    if (++guard > 5000000) throw NumericalError("krylov evolve: step count exceeded cap");
    step = std::min(step, remaining);
    const double beta0 = current.norm();
    if (beta0 == 0.0) return current;

    std::vector<Eigen::VectorXcd> basis{current / beta0};
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w(dim);
    bool breakdown = false;
    for (int jstep = 0; jstep < m_max; ++jstep) {
      applier.apply(basis.back().data(), w.data());
      cplx a = basis.back().dot(w);
      alpha.push_back(a.real());
      w -= a * basis.back();
      if (jstep > 0) w -= cplx(beta.back(), 0.0) * basis[basis.size() - 2];
      for (const auto& b : basis) w -= b.dot(w) * b;
      const double nb = w.norm();
      if (nb <= 1e-12 * std::max(1.0, norm_bound)) {  // invariant subspace
        breakdown = true;
        break;
      }
      if (jstep + 1 < m_max) {
        beta.push_back(nb);
        basis.push_back(w / nb);
      } else {
        beta.push_back(nb);  // kept for the residual estimate
      }
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) tri(i, i) = alpha[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < m; ++i)
      tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(m);
    for (int i = 0; i < m; ++i) {
      cplx rot = std::polar(1.0, -sign * es.eigenvalues()(i) * step);
      u += rot * es.eigenvectors().col(i).cast<cplx>() *
           (es.eigenvectors().col(i)(0));
    }
    const double residual =
        breakdown ? 0.0 : beta[static_cast<size_t>(m - 1)] * std::abs(u[m - 1]) * step;
    if (!breakdown && residual > std::max(opts.tol, 1e-12) && step > 1e-9 * std::abs(t)) {
      step *= 0.5;
      continue;
    }
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < m; ++i) next += (beta0 * u[i]) * basis[static_cast<size_t>(i)];
    current = next;
    remaining -= step;
    step = std::min(base_step, step * 1.4);  // gentle growth after accepted steps
  }
  return current;
}

StateVector evolve_dense(const OperatorSum& h, const StateVector& v, double t) {
  HermitianEig eig = eig_hermitian(to_matrix(h).dense());
  return expm_apply(eig, t, v);
}

}  // namespace

StateVector evolve(const OperatorSum& h, const StateVector& v, double t,
                   const EvolveOptions& opts) {
  if (!h.is_hermitian(1e-10)) throw NumericalError("evolve: Hamiltonian must be Hermitian");
  const size_t dim = size_t{1} << h.n_qubits;
  if (static_cast<size_t>(v.size()) != dim)
    throw DimensionError("evolve: vector dimension mismatch");
  if (t == 0.0 || h.terms.empty()) return v;

  EvolveMethod method = opts.method;
  if (method == EvolveMethod::Auto) {
    const double rho = h.one_norm();
    const double tau = rho * std::abs(t);
    // Distinct flip masks bound the per-apply pass count.
    std::vector<uint64_t> masks;
    for (const auto& term : h.terms) masks.push_back(pauli_masks(term).xmask);
    std::sort(masks.begin(), masks.end());
    const double n_passes =
        static_cast<double>(std::unique(masks.begin(), masks.end()) - masks.begin());
    // Measured per-unit costs of the two backends on this code base.
    const double cheb_seconds = 1.1e-9 * (tau + 200.0) * n_passes * static_cast<double>(dim);
    const double dense_seconds = 2.1e-12 * std::pow(static_cast<double>(dim), 3.0);
    method = (static_cast<int>(dim) <= opts.dense_dim_limit && dense_seconds < cheb_seconds)
                 ? EvolveMethod::Dense
                 : EvolveMethod::Chebyshev;
  }

  StateVector out;
  switch (method) {
    case EvolveMethod::Dense: {
      if ((size_t{1} << h.n_qubits) > size_t{1} << 13)
        throw CapacityError("evolve dense: dimension too large");
      out = evolve_dense(h, v, t);
      break;
    }
    case EvolveMethod::Chebyshev: {
      PauliApplier applier(h);
      out = evolve_chebyshev(applier, applier.one_norm(), v, t, opts.tol);
      break;
    }
    case EvolveMethod::Krylov: {
      PauliApplier applier(h);
      out = evolve_krylov(applier, applier.one_norm(), v, t, opts);
      break;
    }
    default: throw NumericalError("evolve: unreachable method");
  }
  const double drift = std::abs(out.norm() - v.norm());
  if (drift > 1e-9)
    throw NumericalError("evolve: norm drift " + std::to_string(drift) +
                         " exceeds tolerance; residual estimate unreliable");
  return out;
}

StateVector evolve(const OperatorMatrix& h, const StateVector& v, double t,
                   const EvolveOptions& opts) {
  if (h.mat.rows() != v.size()) throw DimensionError("evolve: matrix/vector mismatch");
  // Generic sparse path: dense eigendecomposition for small systems, Lanczos
  // stepping with a sparse matvec otherwise.
  if (h.dim() <= opts.dense_dim_limit) {
    HermitianEig eig = eig_hermitian(h.dense());
    return expm_apply(eig, t, v);
  }
  double one_norm = 0.0;
  for (int k = 0; k < h.mat.outerSize(); ++k) {
    double col = 0.0;
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(h.mat, k); it; ++it)
      col += std::abs(it.value());
    one_norm = std::max(one_norm, col);
  }
  StateVector current = v;
  double remaining = std::abs(t);
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  const double step = std::min(remaining, opts.krylov_step_norm / std::max(one_norm, 1e-30));
  // Reuse the OperatorSum Krylov machinery through a thin adapter.
  while (remaining > 0.0) {
    double dt = std::min(step, remaining);
    // One Lanczos step on the sparse matrix.
    const int m_max = std::max(2, opts.krylov_dim);
    double beta0 = current.norm();
    if (beta0 == 0.0) break;
    std::vector<Eigen::VectorXcd> basis{current / beta0};
    std::vector<double> alpha, beta;
    for (int j = 0; j < m_max; ++j) {
      Eigen::VectorXcd w = h.mat * basis.back();
      cplx a = basis.back().dot(w);
      alpha.push_back(a.real());
      w -= a * basis.back();
      if (j > 0) w -= cplx(beta.back(), 0.0) * basis[basis.size() - 2];
      for (const auto& b : basis) w -= b.dot(w) * b;
      double nb = w.norm();
      if (nb <= 1e-12 || j + 1 == m_max) break;
      beta.push_back(nb);
      basis.push_back(w / nb);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) tri(i, i) = alpha[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(m);
    for (int i = 0; i < m; ++i)
      u += std::polar(1.0, -sign * es.eigenvalues()(i) * dt) *
           es.eigenvectors().col(i).cast<cplx>() * es.eigenvectors().col(i)(0);
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(v.size());
    for (int i = 0; i < m; ++i) next += (beta0 * u[i]) * basis[static_cast<size_t>(i)];
    current = next;
    remaining -= dt;
  }
  return current;
}

// ---------------------------------------------------------------------------
// Noisy encoded runs.

namespace {

OperatorSum total_hamiltonian(const EncodedSystem& sys, double lambda,
                              const OperatorSum& noise) {
  const double lambda_eff = lambda * sys.penalty_scale;
  OperatorSum h = (lambda_eff)*penalty_hamiltonian(sys.layout);
  h.add(sys.h_enc1);
  h.add(std::sqrt(lambda_eff) * sys.h_enc2);
  h.add(noise);
  h.merge_terms(0.0);
  return h;
}

}  // namespace

double compute_M(const EncodedSystem& sys, const OperatorSum& noise) {
  const double h2_norm = operator_spectral_norm(sys.h_enc2);
  OperatorSum h1v = sys.h_enc1;
  if (!noise.terms.empty()) h1v.add(noise);
  const double h1v_norm = operator_spectral_norm(h1v);
  return std::max(h2_norm * h2_norm, h1v_norm);
}

std::optional<double> theorem2_bound(double m_value, double lambda, double t) {
  if (lambda < 25.0 * m_value) return std::nullopt;
  const double f = 6.0 + 13.0 * m_value * t;
  return m_value / lambda * f * f;
}

RunResult run_simulation(const EncodedSystem& sys, double lambda, const NoiseSpec& noise,
                         double t, uint64_t state_seed, const EvolveOptions& opts) {
  if (lambda <= 0.0) throw ConfigError("run_simulation: lambda must be positive");
  const CodeLayout& layout = sys.layout;
  BellFrame frame(layout);

  OperatorSum v_noise = sample_noise(layout.n_physical(), noise);
  OperatorSum h_tot = total_hamiltonian(sys, lambda, v_noise);

  Eigen::VectorXcd c0 = random_codeword_coeffs(layout, state_seed);
  StateVector psi0 = embed_codeword_coeffs(frame, c0);
  StateVector psi_t = evolve(h_tot, psi0, t, opts);

  // Target evolution runs in the logical dimension and is compared through
  // the codeword amplitudes of the evolved physical state.
  OperatorSum zx = logical_zx_rotation(sys.h_tar_logical, layout);
  HermitianEig eig = eig_hermitian(to_matrix(zx).dense());
  Eigen::VectorXcd c_t = expm_apply(eig, t, c0);

  frame.to_bell(psi_t);
  const auto labels = frame.codeword_labels();
  cplx overlap(0.0, 0.0);
  for (size_t k = 0; k < labels.size(); ++k)
    overlap += std::conj(c_t[static_cast<Eigen::Index>(k)]) *
               psi_t[static_cast<Eigen::Index>(labels[k])];

  RunResult result;
  result.infidelity = std::max(0.0, 1.0 - std::norm(overlap));
  result.m_value = compute_M(sys, v_noise);
  result.bound = theorem2_bound(result.m_value, lambda * sys.penalty_scale, t);
  return result;
}

double run_unencoded(const EncodedSystem& sys, const NoiseSpec& noise, double t,
                     uint64_t state_seed) {
  const int n = sys.layout.n_logical();
  OperatorSum v_noise = sample_noise(n, noise);
  OperatorSum h_noisy = sys.h_tar_logical + v_noise;
  h_noisy.merge_terms(0.0);

  Rng rng(derive_stream(state_seed, 0x756e656e63ULL));  // "unenc" stream
  StateVector psi0(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < psi0.size(); ++i) psi0[i] = cplx(rng.gaussian(), rng.gaussian());
  psi0.normalize();

  HermitianEig eig_ideal = eig_hermitian(to_matrix(sys.h_tar_logical).dense());
  HermitianEig eig_noisy = eig_hermitian(to_matrix(h_noisy).dense());
  StateVector ideal = expm_apply(eig_ideal, t, psi0);
  StateVector noisy = expm_apply(eig_noisy, t, psi0);
  return std::max(0.0, 1.0 - std::norm(ideal.dot(noisy)));
}

// ---------------------------------------------------------------------------
// Lambda sweeps.

SweepResult sweep_lambda(const EncodedSystem& sys, const std::vector<double>& lambdas,
                         const NoiseSpec& noise, double t, int n_samples, uint64_t master_seed,
                         int workers, const EvolveOptions& opts) {
  if (lambdas.empty()) throw ConfigError("sweep_lambda: lambda list is empty");
  if (n_samples < 1) throw ConfigError("sweep_lambda: n_samples must be >= 1");
  for (double l : lambdas)
    if (l <= 0.0) throw ConfigError("sweep_lambda: lambda values must be positive");

  struct Task {
    size_t lambda_index;
    int sample_index;
  };
  std::vector<Task> tasks;
  for (size_t li = 0; li < lambdas.size(); ++li)
    for (int si = 0; si < n_samples; ++si) tasks.push_back({li, si});

  SweepResult result;
  result.records.resize(tasks.size());

  std::atomic<size_t> next{0};
  auto worker_fn = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& task = tasks[idx];
      const double lambda = lambdas[task.lambda_index];
      const uint64_t run_seed = derive_stream(master_seed, task.lambda_index,
                                              static_cast<uint64_t>(task.sample_index));
      NoiseSpec run_noise = noise;
      run_noise.seed = derive_stream(run_seed, 2);
      const auto t_start = std::chrono::steady_clock::now();
      RunResult run = run_simulation(sys, lambda, run_noise, t, derive_stream(run_seed, 1), opts);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t_start;
      SweepRecord& rec = result.records[idx];
      rec.lambda = lambda;
      rec.seed = run_seed;
      rec.t = t;
      rec.infidelity = run.infidelity;
      rec.m_value = run.m_value;
      rec.bound = run.bound;
      rec.wall_time_s = elapsed.count();
    }
  };

  int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::max(1, std::min<int>(n_workers, static_cast<int>(tasks.size())));
  if (n_workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  // Per-lambda statistics.
  for (size_t li = 0; li < lambdas.size(); ++li) {
    double sum = 0.0, sum_sq = 0.0;
    for (int si = 0; si < n_samples; ++si) {
      const double x = result.records[li * static_cast<size_t>(n_samples) +
                                      static_cast<size_t>(si)]
                           .infidelity;
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / n_samples;
    const double var = n_samples > 1 ? std::max(0.0, (sum_sq - n_samples * mean * mean) /
                                                         (n_samples - 1))
                                     : 0.0;
    result.stats.push_back({lambdas[li], mean, std::sqrt(var)});
  }

  // Log-log least-squares slope over the lambda means, excluding floor-level
  // points where rounding noise dominates.
  std::vector<double> xs, ys;
  for (const auto& s : result.stats) {
    if (s.mean_infidelity < 100.0 * DBL_EPSILON) continue;
    xs.push_back(std::log(s.lambda));
    ys.push_back(std::log(s.mean_infidelity));
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    result.fitted_slope = slope;
    if (xs.size() > 2) {
      double ssr = 0.0;
      const double intercept = my - slope * mx;
      for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ssr += r * r;
      }
      const double se = std::sqrt(ssr / (n - 2.0) / sxx);
      result.slope_half_width = 1.96 * se;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Appendix-style unitary difference diagnostic (fully dense).

UnitaryDiffReport unitary_diff_bound_check(const OperatorSum& h_pen_scaled, const OperatorSum& w,
                                           double t) {
  if (h_pen_scaled.n_qubits > 10)
    throw CapacityError("unitary_diff_bound_check: dense check limited to 10 qubits");
  if (w.n_qubits != h_pen_scaled.n_qubits)
    throw DimensionError("unitary_diff_bound_check: operator sizes differ");

  HermitianEig eig0 = eig_hermitian(to_matrix(h_pen_scaled).dense());
  const Eigen::Index dim = eig0.evals.size();
  double delta = 0.0;
  bool have_delta = false;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double e = std::abs(eig0.evals[i]);
    if (e > 1e-9 && (!have_delta || e < delta)) {
      delta = e;
      have_delta = true;
    }
  }
  if (!have_delta) throw NumericalError("unitary_diff_bound_check: no nonzero eigenvalues");

  // Work in the H0 eigenbasis, where P0 and R0 are diagonal.
  Eigen::MatrixXcd w_rot = eig0.evecs.adjoint() * to_matrix(w).dense() * eig0.evecs;
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim), r0 = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(eig0.evals[i]) <= 1e-9)
      p0[i] = 1.0;
    else
      r0[i] = 1.0 / eig0.evals[i];
  }

  UnitaryDiffReport report;
  HermitianEig eig_w = eig_hermitian(w_rot);
  const double w_norm =
      std::max(std::abs(eig_w.evals[0]), std::abs(eig_w.evals[dim - 1]));
  report.kappa = w_norm / delta;
  report.precondition_ok = report.kappa <= 0.25;

  Eigen::MatrixXcd q0wp0 = ((1.0 - p0.array()).matrix()).asDiagonal() * w_rot *
                           Eigen::MatrixXcd(p0.asDiagonal());
  report.q0wp0_norm = Eigen::BDCSVD<Eigen::MatrixXcd>(q0wp0).singularValues()(0);

  Eigen::MatrixXcd h_eff =
      Eigen::MatrixXcd(p0.asDiagonal()) * w_rot * Eigen::MatrixXcd(p0.asDiagonal()) -
      Eigen::MatrixXcd(p0.asDiagonal()) * w_rot * Eigen::MatrixXcd(r0.asDiagonal()) * w_rot *
          Eigen::MatrixXcd(p0.asDiagonal());

  Eigen::MatrixXcd h_full = Eigen::MatrixXcd(eig0.evals.asDiagonal()) + w_rot;
  HermitianEig eig_full = eig_hermitian(h_full);
  HermitianEig eig_eff = eig_hermitian(h_eff);

  auto expm_matrix = [&](const HermitianEig& e, double time) {
    Eigen::VectorXcd phases(e.evals.size());
    for (Eigen::Index i = 0; i < e.evals.size(); ++i)
      phases[i] = std::polar(1.0, -e.evals[i] * time);
    return Eigen::MatrixXcd(e.evecs * phases.asDiagonal() * e.evecs.adjoint());
  };
  Eigen::MatrixXcd diff =
      (expm_matrix(eig_full, t) - expm_matrix(eig_eff, t)) * Eigen::MatrixXcd(p0.asDiagonal());
  report.lhs = Eigen::BDCSVD<Eigen::MatrixXcd>(diff).singularValues()(0);
  report.rhs = 5.0 * report.kappa + 6.0 * report.kappa * report.kappa * report.q0wp0_norm * t;
  report.holds = report.precondition_ok && report.lhs <= report.rhs + 1e-12;
  return report;
}

}  // namespace gapsim
