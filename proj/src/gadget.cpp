#include "gapsim/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gapsim {

namespace {

double checked_denominator(int a, int b, const CodeLayout& layout) {
  const double gx_a = layout.blocks[static_cast<size_t>(a)].gx;
  const double gz_b = layout.blocks[static_cast<size_t>(b)].gz;
  const double denom = gz_b * gz_b - gx_a * gx_a;
  if (std::abs(std::abs(gx_a) - std::abs(gz_b)) < 1e-12)
    throw GadgetError("gadget degenerate: |gx| of block " + std::to_string(a) +
                      " equals |gz| of block " + std::to_string(b) +
                      " (first-order leakage, criterion 1 fails)");
  return denom;
}

void check_blocks(int a, int b, const CodeLayout& layout) {
  if (a == b) throw GadgetError("gadget blocks must differ");
  if (a < 0 || b < 0 || a >= layout.n_blocks() || b >= layout.n_blocks())
    throw DimensionError("gadget block index out of range");
}

PauliString cross_term(const CodeLayout& layout, int a, int local_z, int b, int local_x,
                       double coeff) {
  // local_* are the paper's block-local qubit numbers 1..4.
  return PauliString::two(layout.n_physical(), 4 * a + local_z - 1, Pauli::Z,
                          4 * b + local_x - 1, Pauli::X, coeff);
}

PauliString logical_site_pauli(const CodeLayout& layout, int site, Pauli p, double coeff) {
  return PauliString::single(layout.n_logical(), site, p, coeff);
}

PauliString logical_two_site(const CodeLayout& layout, int site_a, int site_b, Pauli p,
                             double coeff) {
  return PauliString::two(layout.n_logical(), site_a, p, site_b, p, coeff);
}

// Shared synthesis for the three-coefficient form
//   G = alpha Z2^(a) X3^(b) + beta Z4^(a) X3^(b) + gamma Z2^(a) X1^(b),
// whose logical effect is
//   [ alpha beta gz_b ZbarZbar + alpha gamma gx_a XbarXbar
//     - (alpha^2 - beta^2 + gamma^2)/2 gx_a Xbar2^(a)
//     - (alpha^2 + beta^2 - gamma^2)/2 gz_b Zbar1^(b) ] / (gz_b^2 - gx_a^2).
Gadget build_zx3_gadget(int a, int b, double coupling_z, double coupling_x,
                        const CodeLayout& layout) {
  check_blocks(a, b, layout);
  const double gx_a = layout.blocks[static_cast<size_t>(a)].gx;
  const double gz_b = layout.blocks[static_cast<size_t>(b)].gz;
  const double denom = checked_denominator(a, b, layout);

  Gadget g;
  g.blocks_touched = {a, b};
  g.physical = OperatorSum(layout.n_physical());
  g.target_logical = OperatorSum(layout.n_logical());
  g.residual_correction = OperatorSum(layout.n_physical());
  if (coupling_z == 0.0 && coupling_x == 0.0) return g;

  double alpha, beta, gamma;
  if (coupling_z != 0.0) {
    const double r = coupling_z * denom / gz_b;
    alpha = std::sqrt(std::abs(r));
    beta = r / alpha;
    gamma = (coupling_x == 0.0) ? 0.0 : coupling_x * denom / (gx_a * alpha);
  } else {
    const double r = coupling_x * denom / gx_a;
    alpha = std::sqrt(std::abs(r));
    gamma = r / alpha;
    beta = 0.0;
  }

  if (alpha != 0.0) g.physical.add(cross_term(layout, a, 2, b, 3, alpha));
  if (beta != 0.0) g.physical.add(cross_term(layout, a, 4, b, 3, beta));
  if (gamma != 0.0) g.physical.add(cross_term(layout, a, 2, b, 1, gamma));

  const int site_a2 = layout.site_at(a, 1);
  const int site_b1 = layout.site_at(b, 0);
  if (coupling_z != 0.0)
    g.target_logical.add(logical_two_site(layout, site_a2, site_b1, Pauli::Z, coupling_z));
  if (coupling_x != 0.0)
    g.target_logical.add(logical_two_site(layout, site_a2, site_b1, Pauli::X, coupling_x));

  // Single-site byproducts of the closed form; the correction flips them and
  // is merged into the inner-block encoding Hamiltonian.
  const double byproduct_x = -(alpha * alpha - beta * beta + gamma * gamma) / 2.0 * gx_a / denom;
  const double byproduct_z = -(alpha * alpha + beta * beta - gamma * gamma) / 2.0 * gz_b / denom;
  if (std::abs(byproduct_x) > 1e-14) {
    PauliString x2a = PauliString::from_labels("IX", -byproduct_x);
    g.residual_correction.add(logical_to_physical(x2a, a, layout));
  }
  if (std::abs(byproduct_z) > 1e-14) {
    PauliString z1b = PauliString::from_labels("ZI", -byproduct_z);
    g.residual_correction.add(logical_to_physical(z1b, b, layout));
  }
  return g;
}

}  // namespace

Gadget make_zz_gadget(int a, int b, double coupling, const CodeLayout& layout) {
  return build_zx3_gadget(a, b, coupling, 0.0, layout);
}

Gadget make_xy_gadget(int a, int b, double coupling_z, double coupling_x,
                      const CodeLayout& layout) {
  return build_zx3_gadget(a, b, coupling_z, coupling_x, layout);
}

Gadget make_xx_gadget(int a, int b, double coupling, const CodeLayout& layout) {
  check_blocks(a, b, layout);
  const double gx_a = layout.blocks[static_cast<size_t>(a)].gx;
  const double gz_b = layout.blocks[static_cast<size_t>(b)].gz;
  const double denom = checked_denominator(a, b, layout);

  Gadget g;
  g.blocks_touched = {a, b};
  g.physical = OperatorSum(layout.n_physical());
  g.target_logical = OperatorSum(layout.n_logical());
  g.residual_correction = OperatorSum(layout.n_physical());
  if (coupling == 0.0) return g;

  // G = alpha Z2^(a) X1^(b) + beta Z2^(a) X3^(b), logical effect
  //   [ alpha beta gx_a XbarXbar - (alpha^2+beta^2)/2 gx_a Xbar2^(a)
  //     + (alpha^2-beta^2)/2 gz_b Zbar1^(b) ] / denom.
  const double r = coupling * denom / gx_a;
  const double alpha = std::sqrt(std::abs(r));
  const double beta = r / alpha;
  g.physical.add(cross_term(layout, a, 2, b, 1, alpha));
  g.physical.add(cross_term(layout, a, 2, b, 3, beta));

  const int site_a2 = layout.site_at(a, 1);
  const int site_b1 = layout.site_at(b, 0);
  g.target_logical.add(logical_two_site(layout, site_a2, site_b1, Pauli::X, coupling));

  const double byproduct_x = -(alpha * alpha + beta * beta) / 2.0 * gx_a / denom;
  if (std::abs(byproduct_x) > 1e-14) {
    PauliString x2a = PauliString::from_labels("IX", -byproduct_x);
    g.residual_correction.add(logical_to_physical(x2a, a, layout));
  }
  return g;
}

EffectiveResult effective_hamiltonian(const OperatorSum& g, const CodeLayout& layout) {
  layout.validate();
  if (g.n_qubits != layout.n_physical())
    throw DimensionError("effective_hamiltonian: operator qubit count mismatch");
  BellFrame frame(layout);
  LabelIndex zero(frame.zero_labels());

  EffectiveResult result;
  result.zero_labels = zero.labels();
  result.criterion1_norm = sparse_spectral_norm(restrict_to_labels(g, frame, zero));
  if (result.criterion1_norm > 1e-10)
    throw GadgetError("criterion 1 violated: |P0 G P0| = " +
                      std::to_string(result.criterion1_norm));

  result.h_eff_zero = (-1.0) * second_order_cross(g, g, frame, zero);

  // Leakage block: rows outside S_enc, columns inside. Extracted from the
  // sparse matrix; the block has only 4^n columns.
  LabelIndex codewords(frame.codeword_labels());
  std::vector<int> code_col(static_cast<size_t>(zero.size()), -1);
  std::vector<int> rest_row(static_cast<size_t>(zero.size()), -1);
  int n_code = 0, n_rest = 0;
  for (int i = 0; i < zero.size(); ++i) {
    if (codewords.position(zero.labels()[static_cast<size_t>(i)]) >= 0)
      code_col[static_cast<size_t>(i)] = n_code++;
    else
      rest_row[static_cast<size_t>(i)] = n_rest++;
  }
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int outer = 0; outer < result.h_eff_zero.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(result.h_eff_zero, outer); it; ++it) {
      const int c = code_col[static_cast<size_t>(it.col())];
      const int r = rest_row[static_cast<size_t>(it.row())];
      if (c >= 0 && r >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  Eigen::SparseMatrix<cplx> block(n_rest, n_code);
  block.setFromTriplets(trips.begin(), trips.end());
  result.leakage = sparse_spectral_norm(block);
  return result;
}

namespace {

double symmetrized_cross_norm(const OperatorSum& a, const OperatorSum& b,
                              const CodeLayout& layout, bool symmetrize) {
  layout.validate();
  BellFrame frame(layout);
  LabelIndex zero(frame.zero_labels());
  for (const OperatorSum* op : {&a, &b}) {
    double n0 = sparse_spectral_norm(restrict_to_labels(*op, frame, zero));
    if (n0 > 1e-10)
      throw GadgetError("interference precondition violated: |P0 A P0| = " + std::to_string(n0));
  }
  Eigen::SparseMatrix<cplx> cross = second_order_cross(a, b, frame, zero);
  if (symmetrize) {
    Eigen::SparseMatrix<cplx> sym = cross + Eigen::SparseMatrix<cplx>(
                                                second_order_cross(b, a, frame, zero));
    return sparse_spectral_norm(sym);
  }
  return sparse_spectral_norm(cross);
}

}  // namespace

double interference(const OperatorSum& a, const OperatorSum& b, const CodeLayout& layout) {
  return symmetrized_cross_norm(a, b, layout, /*symmetrize=*/true);
}

double cross_term_norm(const OperatorSum& a, const OperatorSum& b, const CodeLayout& layout) {
  return symmetrized_cross_norm(a, b, layout, /*symmetrize=*/false);
}

std::vector<BlockParams> assign_block_colors(const InteractionGraph& graph) {
  const int n = graph.n_vertices;
  std::vector<std::set<int>> adjacency(static_cast<size_t>(n));
  auto connect = [&](int a, int b) {
    if (a == b) return;
    adjacency[static_cast<size_t>(a)].insert(b);
    adjacency[static_cast<size_t>(b)].insert(a);
  };
  for (const auto& e : graph.edges) connect(e.a, e.b);
  // Conflict graph: also connect vertices sharing a common neighbor.
  std::vector<std::set<int>> neighbors = adjacency;
  for (int c = 0; c < n; ++c) {
    const auto& nb = neighbors[static_cast<size_t>(c)];
    for (auto it1 = nb.begin(); it1 != nb.end(); ++it1)
      for (auto it2 = std::next(it1); it2 != nb.end(); ++it2) connect(*it1, *it2);
  }
  std::vector<int> color(static_cast<size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    std::set<int> used;
    for (int u : adjacency[static_cast<size_t>(v)])
      if (color[static_cast<size_t>(u)] >= 0) used.insert(color[static_cast<size_t>(u)]);
    int c = 0;
    while (used.count(c)) ++c;
    color[static_cast<size_t>(v)] = c;
  }
  std::vector<BlockParams> params(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    const double scale = std::pow(2.0, 2 * color[static_cast<size_t>(v)]);
    params[static_cast<size_t>(v)] = BlockParams{scale, 2.0 * scale};
  }
  return params;
}

std::string gadget_report(const Gadget& gadget, const CodeLayout& layout) {
  std::ostringstream out;
  out << "gadget between blocks " << gadget.blocks_touched.first << " and "
      << gadget.blocks_touched.second << "\n";
  out << "physical terms:\n" << to_lines(gadget.physical);
  out << "logical target:\n" << to_lines(gadget.target_logical);
  out << "residual correction:\n" << to_lines(gadget.residual_correction);
  try {
    EffectiveResult eff = effective_hamiltonian(gadget.physical, layout);
    out << "criterion1 |P0 G P0| = " << eff.criterion1_norm << "\n";
    out << "leakage |(P0-Penc) Heff Penc| = " << eff.leakage << "\n";
  } catch (const GadgetError& err) {
    out << "criterion check failed: " << err.what() << "\n";
  }
  return out.str();
}

}  // namespace gapsim
