#include "gapsim/verify.hpp"

#include <cmath>
#include <sstream>

#include "gapsim/bell.hpp"
#include "gapsim/gadget.hpp"
#include "gapsim/models.hpp"

namespace gapsim {

void CheckReport::add(std::string name, double measured, double threshold, bool must_exceed) {
  CheckEntry entry;
  entry.name = std::move(name);
  entry.measured = measured;
  entry.threshold = threshold;
  entry.must_exceed = must_exceed;
  entry.pass = must_exceed ? measured >= threshold : measured <= threshold;
  overall = overall && entry.pass;
  checks.push_back(std::move(entry));
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& entry : other.checks) {
    overall = overall && entry.pass;
    checks.push_back(entry);
  }
}

std::string CheckReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.measured
        << (c.must_exceed ? " >= " : " <= ") << c.threshold << "\n";
  }
  out << (overall ? "OVERALL PASS" : "OVERALL FAIL") << " (" << checks.size() << " checks)\n";
  return out.str();
}

std::string CheckReport::csv() const {
  std::ostringstream out;
  out << "name,measured,threshold,direction,pass\n";
  for (const auto& c : checks)
    out << '"' << c.name << "\"," << c.measured << ',' << c.threshold << ','
        << (c.must_exceed ? "above" : "below") << ',' << (c.pass ? 1 : 0) << "\n";
  return out.str();
}

double suppression_residual(const CodeLayout& layout, const PauliString& probe) {
  BellFrame frame(layout);
  LabelIndex zero(frame.zero_labels());
  OperatorSum op(layout.n_physical());
  op.add(probe);
  Eigen::SparseMatrix<cplx> restricted = restrict_to_labels(op, frame, zero);
  cplx trace(0.0, 0.0);
  for (int k = 0; k < restricted.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(restricted, k); it; ++it)
      if (it.row() == it.col()) trace += it.value();
  const cplx c = trace / static_cast<double>(zero.size());
  Eigen::SparseMatrix<cplx> eye(zero.size(), zero.size());
  eye.setIdentity();
  Eigen::SparseMatrix<cplx> shifted = restricted - c * eye;
  return sparse_spectral_norm(shifted);
}

CheckReport check_error_suppression(const CodeLayout& layout) {
  layout.validate();
  if (layout.n_blocks() > 3)
    throw CapacityError("check_error_suppression: layouts up to 3 blocks");
  CheckReport report;
  const int n = layout.n_physical();
  for (int q = 0; q < n; ++q) {
    for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const double residual = suppression_residual(layout, PauliString::single(n, q, axis));
      report.add("suppression " + std::string(1, pauli_char(axis)) + std::to_string(q),
                 residual, 1e-12);
    }
  }
  // Weight-2 control: Z1 Z2 of block 0 is a logical operator, so suppression
  // must fail (that is exactly the distance-2 statement).
  const double control =
      suppression_residual(layout, PauliString::two(n, 0, Pauli::Z, 1, Pauli::Z));
  report.add("weight-2 control Z0 Z1", control, 1e-6, /*must_exceed=*/true);
  return report;
}

int code_distance(const CodeLayout& layout) {
  layout.validate();
  if (layout.n_blocks() > 2) throw CapacityError("code_distance: enumeration up to 2 blocks");
  const int n = layout.n_physical();
  const Pauli axes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (int q = 0; q < n; ++q)
    for (Pauli p : axes)
      if (suppression_residual(layout, PauliString::single(n, q, p)) > 1e-6) return 1;
  for (int qa = 0; qa < n; ++qa)
    for (int qb = qa + 1; qb < n; ++qb)
      for (Pauli pa : axes)
        for (Pauli pb : axes)
          if (suppression_residual(layout, PauliString::two(n, qa, pa, qb, pb)) > 1e-6)
            return 2;
  return 3;
}

namespace {

OperatorSum cross_pauli(const CodeLayout& layout, int block_a, int local_a, Pauli pa, int block_b,
                        int local_b, Pauli pb) {
  OperatorSum op(layout.n_physical());
  op.add(PauliString::two(layout.n_physical(), 4 * block_a + local_a - 1, pa,
                          4 * block_b + local_b - 1, pb));
  return op;
}

}  // namespace

CheckReport check_lemma_suite() {
  CheckReport report;

  // Four disjoint blocks, arbitrary parameters: gadget-type terms never
  // interfere.
  {
    CodeLayout layout = CodeLayout::with_params({{1, 3}, {2, 5}, {3, 7}, {1, 4}});
    const int cases[5][4] = {{1, 1, 1, 1}, {2, 3, 4, 1}, {4, 2, 3, 3}, {1, 4, 2, 2}, {3, 3, 1, 4}};
    for (const auto& c : cases) {
      OperatorSum a = cross_pauli(layout, 0, c[0], Pauli::Z, 1, c[1], Pauli::X);
      OperatorSum b = cross_pauli(layout, 2, c[2], Pauli::Z, 3, c[3], Pauli::X);
      report.add("four-block disjoint ZX(" + std::to_string(c[0]) + std::to_string(c[1]) +
                     std::to_string(c[2]) + std::to_string(c[3]) + ")",
                 interference(a, b, layout), 1e-12);
    }
  }

  // Shared block, the two operators touching distinct pairs of it.
  {
    CodeLayout layout = CodeLayout::uniform(3, {1, 3});
    report.add("three-block distinct-pair ZX (1,3)",
               interference(cross_pauli(layout, 0, 1, Pauli::Z, 1, 2, Pauli::X),
                            cross_pauli(layout, 0, 3, Pauli::Z, 2, 1, Pauli::X), layout),
               1e-12);
    report.add("three-block distinct-pair XZ (2,4)",
               interference(cross_pauli(layout, 0, 2, Pauli::X, 1, 1, Pauli::Z),
                            cross_pauli(layout, 0, 4, Pauli::X, 2, 3, Pauli::Z), layout),
               1e-12);
  }

  // Both operators on the same two blocks, distinct pairs on each.
  {
    CodeLayout layout = CodeLayout::with_params({{1, 3}, {2, 5}});
    report.add("two-block distinct-pair ZX (1,1)/(3,3)",
               interference(cross_pauli(layout, 0, 1, Pauli::Z, 1, 1, Pauli::X),
                            cross_pauli(layout, 0, 3, Pauli::Z, 1, 3, Pauli::X), layout),
               1e-12);
    report.add("two-block distinct-pair ZX (2,4)/(4,2)",
               interference(cross_pauli(layout, 0, 2, Pauli::Z, 1, 4, Pauli::X),
                            cross_pauli(layout, 0, 4, Pauli::Z, 1, 2, Pauli::X), layout),
               1e-12);
  }

  // Shared pair with Z on one qubit and X on the other (three blocks).
  {
    CodeLayout layout = CodeLayout::uniform(3, {1, 3});
    report.add("three-block shared-pair ZX vs XZ (1,2)",
               interference(cross_pauli(layout, 0, 1, Pauli::Z, 1, 2, Pauli::X),
                            cross_pauli(layout, 0, 2, Pauli::X, 2, 3, Pauli::Z), layout),
               1e-12);
    report.add("three-block shared-pair XZ vs ZX (4,3)",
               interference(cross_pauli(layout, 0, 4, Pauli::X, 1, 1, Pauli::Z),
                            cross_pauli(layout, 0, 3, Pauli::Z, 2, 2, Pauli::X), layout),
               1e-12);
  }

  // Shared pair, two blocks.
  {
    CodeLayout layout = CodeLayout::with_params({{1, 3}, {2, 5}});
    report.add("two-block shared-pair ZX vs XZ",
               interference(cross_pauli(layout, 0, 1, Pauli::Z, 1, 1, Pauli::X),
                            cross_pauli(layout, 0, 2, Pauli::X, 1, 2, Pauli::Z), layout),
               1e-12);
  }

  // Non-resonant parameters: both one-sided terms vanish even for ZZ/XX
  // pairs sharing a block.
  {
    CodeLayout layout = CodeLayout::with_params({{1, 2}, {4, 8}, {16, 32}});
    OperatorSum a = cross_pauli(layout, 0, 2, Pauli::Z, 1, 1, Pauli::Z);
    OperatorSum b = cross_pauli(layout, 0, 3, Pauli::X, 2, 2, Pauli::X);
    report.add("non-resonant params one-sided A.R0.B", cross_term_norm(a, b, layout), 1e-12);
    report.add("non-resonant params one-sided B.R0.A", cross_term_norm(b, a, layout), 1e-12);
    // Control: parameters tuned onto the resonance gx0 + gz0 = gz1 + gx2.
    CodeLayout resonant = CodeLayout::with_params({{1, 3}, {5, 2}, {2, 7}});
    OperatorSum ar = cross_pauli(resonant, 0, 1, Pauli::Z, 1, 1, Pauli::X);
    OperatorSum br = cross_pauli(resonant, 0, 3, Pauli::X, 2, 1, Pauli::Z);
    report.add("resonant-params control", cross_term_norm(ar, br, resonant), 1e-6,
               /*must_exceed=*/true);
  }

  // Shared qubit: vanishes when the far-block |gz| differ, interferes when
  // they coincide.
  {
    CodeLayout layout = CodeLayout::with_params({{1, 4}, {2, 5}, {3, 6}});
    OperatorSum a = cross_pauli(layout, 0, 2, Pauli::Z, 1, 3, Pauli::X);
    OperatorSum b = cross_pauli(layout, 0, 2, Pauli::Z, 2, 3, Pauli::X);
    report.add("shared-qubit distinct |gz| A.R0.B", cross_term_norm(a, b, layout), 1e-12);
    report.add("shared-qubit distinct |gz| B.R0.A", cross_term_norm(b, a, layout), 1e-12);
    OperatorSum ax = cross_pauli(layout, 0, 2, Pauli::X, 1, 3, Pauli::Z);
    OperatorSum bx = cross_pauli(layout, 0, 2, Pauli::X, 2, 3, Pauli::Z);
    report.add("shared-qubit distinct |gx| (XZ form)", cross_term_norm(ax, bx, layout), 1e-12);

    CodeLayout clash = CodeLayout::with_params({{1, 4}, {2, 5}, {3, 5}});
    OperatorSum ac = cross_pauli(clash, 0, 2, Pauli::Z, 1, 3, Pauli::X);
    OperatorSum bc = cross_pauli(clash, 0, 2, Pauli::Z, 2, 3, Pauli::X);
    report.add("shared-qubit equal |gz| control", interference(ac, bc, clash), 1e-6,
               /*must_exceed=*/true);
  }

  return report;
}

CheckReport check_nogo_consistency(const CodeLayout& layout) {
  layout.validate();
  if (layout.n_blocks() > 2)
    throw CapacityError("check_nogo_consistency: enumeration up to 2 blocks");
  CheckReport report;
  const int n = layout.n_physical();
  double worst_weight1 = 0.0;
  for (int q = 0; q < n; ++q)
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z})
      worst_weight1 = std::max(worst_weight1,
                               suppression_residual(layout, PauliString::single(n, q, p)));
  report.add("all weight-1 suppressed", worst_weight1, 1e-12);
  double best_weight2 = 0.0;
  for (int qa = 0; qa < n && best_weight2 < 1e-6; ++qa)
    for (int qb = qa + 1; qb < n; ++qb)
      for (Pauli pa : {Pauli::X, Pauli::Y, Pauli::Z})
        for (Pauli pb : {Pauli::X, Pauli::Y, Pauli::Z})
          best_weight2 = std::max(
              best_weight2, suppression_residual(layout, PauliString::two(n, qa, pa, qb, pb)));
  report.add("some weight-2 violator exists", best_weight2, 1e-6, /*must_exceed=*/true);
  report.add("code distance", static_cast<double>(code_distance(layout)), 2.0);
  report.add("code distance lower bound", static_cast<double>(code_distance(layout)), 2.0,
             /*must_exceed=*/true);
  return report;
}

CheckReport full_battery() {
  CheckReport report;
  const std::vector<CodeLayout> layouts = {
      CodeLayout::uniform(1, {1, 3}),
      CodeLayout::uniform(2, {1, 3}),
      CodeLayout::with_params({{1, 4}, {2, 5}}),
      CodeLayout::uniform(3, {1, 3}),
  };
  for (size_t i = 0; i < layouts.size(); ++i) {
    const std::string tag = "layout" + std::to_string(i) + " ";
    CheckReport sup = check_error_suppression(layouts[i]);
    for (auto& c : sup.checks) c.name = tag + c.name;
    report.merge(sup);
    report.add(tag + "css equivalence", css_equivalence_check(layouts[i]) ? 0.0 : 1.0, 0.5);
    if (layouts[i].n_blocks() <= 2) {
      report.add(tag + "code distance", static_cast<double>(code_distance(layouts[i])), 2.0);
      report.add(tag + "code distance lower bound",
                 static_cast<double>(code_distance(layouts[i])), 2.0, /*must_exceed=*/true);
    }
  }
  report.merge(check_lemma_suite());

  // Encoding conditions for the four models at two blocks.
  const std::vector<std::pair<std::string, ModelSpec>> models = [] {
    std::vector<std::pair<std::string, ModelSpec>> out;
    ModelSpec tfi1d;
    tfi1d.kind = ModelKind::TFI1D;
    tfi1d.cols = 4;
    tfi1d.field_z = 1.0;
    tfi1d.field_x = 1.0;
    out.emplace_back("tfi1d-4", tfi1d);
    ModelSpec xy1d;
    xy1d.kind = ModelKind::XY1D;
    xy1d.cols = 4;
    out.emplace_back("xy1d-4", xy1d);
    ModelSpec tfi2d;
    tfi2d.kind = ModelKind::TFI2D;
    tfi2d.rows = 2;
    tfi2d.cols = 2;
    tfi2d.field_z = 1.0;
    tfi2d.field_x = 1.0;
    out.emplace_back("tfi2d-2x2", tfi2d);
    ModelSpec compass;
    compass.kind = ModelKind::Compass2D;
    compass.rows = 2;
    compass.cols = 2;
    out.emplace_back("compass2d-2x2", compass);
    return out;
  }();
  for (const auto& [name, spec] : models) {
    EncodedSystem sys = encode(spec);
    EncodingReport enc = verify_encoding(sys);
    report.add(name + " |P0 H2 P0|", enc.c1_norm, enc.tol);
    report.add(name + " target mismatch", enc.target_mismatch, enc.tol);
    report.add(name + " H1 leakage", enc.h1_leakage, enc.tol);
    report.add(name + " Heff2 leakage", enc.eff2_leakage, enc.tol);
  }
  return report;
}

}  // namespace gapsim
