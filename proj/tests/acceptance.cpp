// Acceptance suite: runs every top-level requirement end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gapsim/bell.hpp"
#include "gapsim/code.hpp"
#include "gapsim/dynamics.hpp"
#include "gapsim/gadget.hpp"
#include "gapsim/linalg.hpp"
#include "gapsim/models.hpp"
#include "gapsim/rng.hpp"
#include "gapsim/verify.hpp"
#include "oracles.hpp"

using namespace gapsim;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("CRITERION %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelSpec tfi1d_4site() {
  ModelSpec spec;
  spec.kind = ModelKind::TFI1D;
  spec.cols = 4;
  spec.field_z = 1.0;
  spec.field_x = 1.0;
  return spec;
}

std::vector<double> lambda_ladder() {
  std::vector<double> lambdas;
  for (int k = 5; k <= 14; ++k) lambdas.push_back(std::pow(2.0, k));
  return lambdas;
}

// Criterion 3 accumulates over every sweep record of criteria 1 and 2.
struct BoundAudit {
  int applicable = 0;
  int violations = 0;
  void absorb(const SweepResult& sweep) {
    for (const auto& rec : sweep.records) {
      if (!rec.bound) continue;
      ++applicable;
      if (rec.infidelity > *rec.bound) ++violations;
    }
  }
};

std::string format_slope(const SweepResult& sweep) {
  std::ostringstream out;
  if (sweep.fitted_slope) {
    out << "slope " << *sweep.fitted_slope;
    if (sweep.slope_half_width) out << " +- " << *sweep.slope_half_width;
  } else {
    out << "slope unavailable";
  }
  return out.str();
}

bool run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string config_dir = argc > 2 ? argv[2] : "configs";
  BoundAudit audit;

  // ---- Criterion 1: lambda^-1 scaling for the 1D TFI chain. -------------
  SweepResult sweep1d;
  {
    const auto t0 = std::chrono::steady_clock::now();
    EncodedSystem sys = encode(tfi1d_4site());
    NoiseSpec noise;  // uniform [-0.1, 0.1], all axes
    sweep1d = sweep_lambda(sys, lambda_ladder(), noise, 1.0, 20, 20260810, 0);
    const double secs = elapsed_s(t0);
    audit.absorb(sweep1d);
    const bool slope_ok = sweep1d.fitted_slope && *sweep1d.fitted_slope >= -1.15 &&
                          *sweep1d.fitted_slope <= -0.85;
    const bool time_ok = secs < 600.0;
    std::ostringstream detail;
    detail << "1D TFI 4 sites: " << format_slope(sweep1d) << " (want [-1.15,-0.85]), "
           << secs << " s (budget 600)";
    report(1, slope_ok && time_ok, detail.str());
  }

  // ---- Criterion 2: same protocol for the 2x3 2D TFI lattice. -----------
  SweepResult sweep2d;
  {
    const auto t0 = std::chrono::steady_clock::now();
    ModelSpec spec;
    spec.kind = ModelKind::TFI2D;
    spec.rows = 2;
    spec.cols = 3;
    spec.field_z = 1.0;
    spec.field_x = 1.0;
    EncodedSystem sys = encode(spec);
    NoiseSpec noise;
    sweep2d = sweep_lambda(sys, lambda_ladder(), noise, 1.0, 5, 20260810, 0);
    const double secs = elapsed_s(t0);
    audit.absorb(sweep2d);
    const bool slope_ok = sweep2d.fitted_slope && *sweep2d.fitted_slope >= -1.2 &&
                          *sweep2d.fitted_slope <= -0.8;
    const bool time_ok = secs < 1800.0;
    std::ostringstream detail;
    detail << "2D TFI 2x3: " << format_slope(sweep2d) << " (want [-1.2,-0.8]), " << secs
           << " s (budget 1800)";
    report(2, slope_ok && time_ok, detail.str());
  }

  // ---- Criterion 3: Theorem-2 soundness over all recorded runs. ---------
  {
    std::ostringstream detail;
    detail << audit.applicable << " runs with lambda >= 25M, " << audit.violations
           << " bound violations";
    report(3, audit.applicable > 0 && audit.violations == 0, detail.str());
  }

  // ---- Criterion 4: encoding conditions for all four models. ------------
  {
    bool ok = true;
    double worst = 0.0;
    std::vector<ModelSpec> specs;
    specs.push_back(tfi1d_4site());
    {
      ModelSpec xy;
      xy.kind = ModelKind::XY1D;
      xy.cols = 4;
      specs.push_back(xy);
    }
    {
      ModelSpec t2;
      t2.kind = ModelKind::TFI2D;
      t2.rows = 2;
      t2.cols = 2;
      t2.field_z = 1.0;
      t2.field_x = 1.0;
      specs.push_back(t2);
    }
    {
      ModelSpec cp;
      cp.kind = ModelKind::Compass2D;
      cp.rows = 2;
      cp.cols = 2;
      specs.push_back(cp);
    }
    for (const auto& spec : specs) {
      EncodedSystem sys = encode(spec);
      EncodingReport lib = verify_encoding(sys, 1e-9);
      // Independent dense route for the same four norms.
      oracles::PenaltyOracle oracle(sys.layout);
      Eigen::MatrixXcd b_enc = oracles::oracle_codewords(sys.layout);
      Eigen::MatrixXcd p_enc = b_enc * b_enc.adjoint();
      Eigen::MatrixXcd h1 = oracles::dense_operator(sys.h_enc1);
      Eigen::MatrixXcd h2 = oracles::dense_operator(sys.h_enc2);
      Eigen::MatrixXcd h_eff = oracle.effective(h2);
      const double dense_norms[4] = {
          oracles::spectral_norm(oracle.p0 * h2 * oracle.p0),
          oracles::spectral_norm(b_enc.adjoint() * (h1 + h_eff) * b_enc -
                                 logical_matrix_zx(sys.h_tar_logical, sys.layout)),
          oracles::spectral_norm((oracle.p0 - p_enc) * h1 * p_enc),
          oracles::spectral_norm((oracle.p0 - p_enc) * h_eff * p_enc)};
      for (double v : {lib.c1_norm, lib.target_mismatch, lib.h1_leakage, lib.eff2_leakage})
        worst = std::max(worst, v);
      for (double v : dense_norms) worst = std::max(worst, v);
      ok = ok && lib.pass;
      for (double v : dense_norms) ok = ok && v <= 1e-9;
    }
    std::ostringstream detail;
    detail << "four encoders at 2 blocks, worst residual " << worst << " (tol 1e-9)";
    report(4, ok, detail.str());
  }

  // ---- Criterion 5: error suppression and code distance. ----------------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CodeLayout& layout :
         {CodeLayout::uniform(1, {1, 3}), CodeLayout::uniform(2, {1, 3}),
          CodeLayout::with_params({{1, 4}, {2, 5}}), CodeLayout::uniform(3, {1, 3}),
          CodeLayout::with_params({{1, 4}, {2, 5}, {3, 6}})}) {
      const int n = layout.n_physical();
      for (int q = 0; q < n; ++q)
        for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
          const double r = suppression_residual(layout, PauliString::single(n, q, axis));
          worst = std::max(worst, r);
          ok = ok && r <= 1e-12;
        }
    }
    const int d1 = code_distance(CodeLayout::uniform(1, {1, 3}));
    const int d2 = code_distance(CodeLayout::uniform(2, {1, 3}));
    const int d3 = code_distance(CodeLayout::with_params({{1, 4}, {2, 5}}));
    ok = ok && d1 == 2 && d2 == 2 && d3 == 2;
    std::ostringstream detail;
    detail << "worst 1-local residual " << worst << " (tol 1e-12); distances " << d1 << ","
           << d2 << "," << d3 << " (want 2)";
    report(5, ok, detail.str());
  }

  // ---- Criterion 6: gadget closed forms against the dense oracle. -------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CodeLayout& layout :
         {CodeLayout::uniform(2, {1, 3}), CodeLayout::with_params({{1, 4}, {2, 5}})}) {
      const double gx_a = layout.blocks[0].gx;
      const double gz_b = layout.blocks[1].gz;
      const double denom = gz_b * gz_b - gx_a * gx_a;
      oracles::PenaltyOracle oracle(layout);
      Eigen::MatrixXcd b_enc = oracles::oracle_codewords(layout);
      const int nl = layout.n_logical();
      const int site_a2 = layout.site_at(0, 1);
      const int site_b1 = layout.site_at(1, 0);

      // Free coefficients exercise every entry of the closed forms.
      const double alpha = 1.3, beta = 0.6, gamma = -0.9;
      auto phys = [&](int la, int qa, int lb, int qb, double c) {
        return PauliString::two(layout.n_physical(), 4 * la + qa - 1, Pauli::Z,
                                4 * lb + qb - 1, Pauli::X, c);
      };
      auto logical = [&](double zz, double xx, double x2, double z1) {
        OperatorSum l(nl);
        if (zz != 0.0) l.add(PauliString::two(nl, site_a2, Pauli::Z, site_b1, Pauli::Z, zz));
        if (xx != 0.0) l.add(PauliString::two(nl, site_a2, Pauli::X, site_b1, Pauli::X, xx));
        if (x2 != 0.0) l.add(PauliString::single(nl, site_a2, Pauli::X, x2));
        if (z1 != 0.0) l.add(PauliString::single(nl, site_b1, Pauli::Z, z1));
        return logical_matrix_zx(l, layout);
      };

      struct Row {
        OperatorSum g;
        Eigen::MatrixXcd expected;
      };
      std::vector<Row> rows;
      {
        OperatorSum g(layout.n_physical());
        g.add(phys(0, 2, 1, 3, alpha));
        g.add(phys(0, 4, 1, 3, beta));
        rows.push_back({g, logical(alpha * beta * gz_b / denom, 0.0,
                                   -(alpha * alpha - beta * beta) / 2.0 * gx_a / denom,
                                   -(alpha * alpha + beta * beta) / 2.0 * gz_b / denom)});
      }
      {
        OperatorSum g(layout.n_physical());
        g.add(phys(0, 2, 1, 1, alpha));
        g.add(phys(0, 2, 1, 3, beta));
        rows.push_back({g, logical(0.0, alpha * beta * gx_a / denom,
                                   -(alpha * alpha + beta * beta) / 2.0 * gx_a / denom,
                                   (alpha * alpha - beta * beta) / 2.0 * gz_b / denom)});
      }
      {
        OperatorSum g(layout.n_physical());
        g.add(phys(0, 2, 1, 3, alpha));
        g.add(phys(0, 4, 1, 3, beta));
        g.add(phys(0, 2, 1, 1, gamma));
        rows.push_back(
            {g, logical(alpha * beta * gz_b / denom, alpha * gamma * gx_a / denom,
                        -(alpha * alpha - beta * beta + gamma * gamma) / 2.0 * gx_a / denom,
                        -(alpha * alpha + beta * beta - gamma * gamma) / 2.0 * gz_b / denom)});
      }
      for (const auto& row : rows) {
        Eigen::MatrixXcd eff = oracle.effective(oracles::dense_operator(row.g));
        Eigen::MatrixXcd restricted = b_enc.adjoint() * eff * b_enc;
        const double err = (restricted - row.expected).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        ok = ok && err <= 1e-10;
      }
    }
    std::ostringstream detail;
    detail << "three lookup rows at (1,3) and (1,4)/(2,5), worst entrywise error " << worst
           << " (tol 1e-10)";
    report(6, ok, detail.str());
  }

  // ---- Criterion 7: coexistence lemma suite. -----------------------------
  {
    CheckReport suite = check_lemma_suite();
    int equalities = 0, controls = 0;
    bool ok = suite.overall;
    for (const auto& entry : suite.checks) (entry.must_exceed ? controls : equalities) += 1;
    std::ostringstream detail;
    detail << equalities << " vanishing cases (tol 1e-12), " << controls
           << " negative controls (>= 1e-6), overall "
           << (suite.overall ? "pass" : "fail");
    report(7, ok, detail.str());
  }

  // ---- Criterion 8: CSS equivalence of every layout. ---------------------
  {
    bool ok = true;
    for (const CodeLayout& layout :
         {CodeLayout::uniform(1, {1, 3}), CodeLayout::uniform(1, {2, 5}),
          CodeLayout::uniform(2, {1, 3}), CodeLayout::with_params({{1, 4}, {2, 5}}),
          CodeLayout::with_params({{1, 4}, {2, 5}, {3, 6}})})
      ok = ok && css_equivalence_check(layout);
    report(8, ok, "both weight-4 stabilizers act as -1 on S_enc for all layouts");
  }

  // ---- Criterion 9: unitary-difference diagnostic, 50 random trials. -----
  {
    CodeLayout one = CodeLayout::uniform(1, {1, 3});
    OperatorSum h0 = 0.5 * penalty_hamiltonian(one);  // gap normalized to 1
    Rng rng(derive_stream(4242, 0x9));
    int holds = 0;
    double worst_margin = 1e300;
    for (int trial = 0; trial < 50; ++trial) {
      OperatorSum w(4);
      const int terms = 2 + static_cast<int>(rng.next_u64() % 5);
      for (int k = 0; k < terms; ++k) {
        PauliString p = PauliString::identity(4);
        for (int q = 0; q < 4; ++q)
          p.letters[static_cast<size_t>(q)] = static_cast<Pauli>(rng.next_u64() % 4);
        p.coeff = cplx(rng.uniform_symmetric(1.0), 0.0);
        w.add(p);
      }
      const double norm = operator_spectral_norm(w);
      if (norm == 0.0) continue;
      const double kappa_target = 0.05 + 0.2 * rng.uniform01();
      w = (kappa_target / norm) * w;
      const double t = 0.5 + 4.5 * rng.uniform01();
      UnitaryDiffReport rep = unitary_diff_bound_check(h0, w, t);
      if (rep.precondition_ok && rep.holds) ++holds;
      worst_margin = std::min(worst_margin, rep.rhs - rep.lhs);
    }
    std::ostringstream detail;
    detail << holds << "/50 trials satisfy the bound, smallest margin " << worst_margin;
    report(9, holds == 50, detail.str());
  }

  // ---- Criterion 10: baseline separation at lambda = 2^12. ---------------
  {
    EncodedSystem sys = encode(tfi1d_4site());
    NoiseSpec noise;
    double enc_sum = 0.0, unenc_sum = 0.0;
    const int samples = 20;
    for (int s = 0; s < samples; ++s) {
      const uint64_t run_seed = derive_stream(777, 10, static_cast<uint64_t>(s));
      NoiseSpec rn = noise;
      rn.seed = derive_stream(run_seed, 2);
      enc_sum +=
          run_simulation(sys, 4096.0, rn, 1.0, derive_stream(run_seed, 1)).infidelity;
      unenc_sum += run_unencoded(sys, rn, 1.0, derive_stream(run_seed, 1));
    }
    const double enc_mean = enc_sum / samples, unenc_mean = unenc_sum / samples;
    std::ostringstream detail;
    detail << "encoded mean " << enc_mean << " vs unencoded mean " << unenc_mean
           << " (want >= 10x separation)";
    report(10, enc_mean * 10.0 <= unenc_mean, detail.str());
  }

  // ---- Criterion 11: bit-identical CSV under a fixed master seed. --------
  {
    bool ok = false;
    std::string detail = "CLI binary not provided";
    if (!cli.empty()) {
      const std::string config = config_dir + "/determinism_check.json";
      const std::string out1 = "/tmp/gapsim_det1.csv";
      const std::string out2 = "/tmp/gapsim_det2.csv";
      const std::string out3 = "/tmp/gapsim_det3.csv";
      const bool ran =
          run_cli(cli, "sweep --config " + config + " --out " + out1 + " --workers 2") &&
          run_cli(cli, "sweep --config " + config + " --out " + out2 + " --workers 2") &&
          run_cli(cli, "sweep --config " + config + " --out " + out3 + " --workers 1");
      if (!ran) {
        detail = "CLI sweep invocation failed";
      } else {
        const std::string a = slurp(out1), b = slurp(out2), c = slurp(out3);
        ok = !a.empty() && a == b && a == c;
        detail = ok ? "three sweeps (2, 2, and 1 workers) byte-identical"
                    : "CSV outputs differ between repeated sweeps";
      }
    }
    report(11, ok, detail);
  }

  std::printf("%s (%d criteria failed)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
