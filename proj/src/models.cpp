#include "gapsim/models.hpp"

#include <algorithm>
#include <cmath>

namespace gapsim {

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::TFI1D: return "tfi1d";
    case ModelKind::XY1D: return "xy1d";
    case ModelKind::TFI2D: return "tfi2d";
    case ModelKind::Compass2D: return "compass2d";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "tfi1d") return ModelKind::TFI1D;
  if (name == "xy1d") return ModelKind::XY1D;
  if (name == "tfi2d") return ModelKind::TFI2D;
  if (name == "compass2d") return ModelKind::Compass2D;
  throw ConfigError("unknown model kind '" + name + "'");
}

namespace {

const BlockParams kPaperRowPattern[3] = {{1, 4}, {2, 5}, {3, 6}};

double per_site(const std::vector<double>& values, double fallback, int site) {
  if (values.empty()) return fallback;
  if (values.size() == 1) return values[0];
  return values.at(static_cast<size_t>(site));
}

double bond_value(const ModelSpec& spec, int bond) {
  if (spec.bond_couplings.empty()) return spec.coupling;
  if (spec.bond_couplings.size() == 1) return spec.bond_couplings[0];
  return spec.bond_couplings.at(static_cast<size_t>(bond));
}

struct SiteAssignment {
  std::vector<std::pair<int, int>> map;  // site -> (block, slot)
  int n_blocks = 0;
  std::vector<int> pattern_index;  // block -> index into the period-3 pattern
};

// 1D chain: sites 2b and 2b+1 are the two logical qubits of block b.
SiteAssignment assign_chain(int length) {
  if (length < 2 || length % 2 != 0)
    throw GeometryError("chain length must be even and >= 2");
  SiteAssignment a;
  a.n_blocks = length / 2;
  a.map.resize(static_cast<size_t>(length));
  a.pattern_index.assign(static_cast<size_t>(a.n_blocks), 0);
  for (int site = 0; site < length; ++site) a.map[static_cast<size_t>(site)] = {site / 2, site % 2};
  return a;
}

// Square lattice in internal coordinates with an even number of columns:
// block (r, m) hosts sites (r, 2m), (r, 2m+1), slot order reversed on odd
// rows so every bond couples a slot-1 end to a slot-0 end.
SiteAssignment assign_lattice(int rows, int cols,
                              const std::function<int(int, int)>& site_index) {
  SiteAssignment a;
  const int blocks_per_row = cols / 2;
  a.n_blocks = rows * blocks_per_row;
  a.map.resize(static_cast<size_t>(rows * cols));
  a.pattern_index.assign(static_cast<size_t>(a.n_blocks), 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int block = r * blocks_per_row + c / 2;
      const int slot = (c % 2) ^ (r % 2);
      a.map[static_cast<size_t>(site_index(r, c))] = {block, slot};
      a.pattern_index[static_cast<size_t>(block)] = r % 3;
    }
  }
  return a;
}

struct LogicalBond {
  int site_a, site_b;
  double jz = 0.0;  // ZbarZbar strength
  double jx = 0.0;  // XbarXbar strength
};

// Adds one bond to the encoding: inner-block bonds map through the logical
// operator table, cross-block bonds synthesize a gadget.
void encode_bond(const LogicalBond& bond, const CodeLayout& layout, OperatorSum& h_enc1,
                 std::vector<Gadget>& gadgets) {
  const auto [block_a, slot_a] = layout.logical_map[static_cast<size_t>(bond.site_a)];
  const auto [block_b, slot_b] = layout.logical_map[static_cast<size_t>(bond.site_b)];
  if (block_a == block_b) {
    if (bond.jz != 0.0)
      h_enc1.add(logical_to_physical(PauliString::from_labels("ZZ", bond.jz), block_a, layout));
    if (bond.jx != 0.0)
      h_enc1.add(logical_to_physical(PauliString::from_labels("XX", bond.jx), block_a, layout));
    return;
  }
  // Orient so the slot-1 end supplies block "a" of the gadget forms.
  int a = block_a, b = block_b;
  if (slot_a == 0 && slot_b == 1) {
    a = block_b;
    b = block_a;
  } else if (!(slot_a == 1 && slot_b == 0)) {
    throw GeometryError("cross-block bond must couple a slot-1 site to a slot-0 site");
  }
  Gadget g;
  if (bond.jz != 0.0 && bond.jx != 0.0)
    g = make_xy_gadget(a, b, bond.jz, bond.jx, layout);
  else if (bond.jz != 0.0)
    g = make_zz_gadget(a, b, bond.jz, layout);
  else if (bond.jx != 0.0)
    g = make_xx_gadget(a, b, bond.jx, layout);
  else
    return;
  h_enc1.add(g.residual_correction);
  gadgets.push_back(std::move(g));
}

void encode_fields(const ModelSpec& spec, const CodeLayout& layout, OperatorSum& h_tar,
                   OperatorSum& h_enc1) {
  const int n_sites = spec.n_sites();
  for (int site = 0; site < n_sites; ++site) {
    const double hz = per_site(spec.field_z_per_site, spec.field_z, site);
    const double hx = per_site(spec.field_x_per_site, spec.field_x, site);
    const auto [block, slot] = layout.logical_map[static_cast<size_t>(site)];
    if (hz != 0.0) {
      h_tar.add(PauliString::single(layout.n_logical(), site, Pauli::Z, hz));
      h_enc1.add(logical_to_physical(
          PauliString::from_labels(slot == 0 ? "ZI" : "IZ", hz), block, layout));
    }
    if (hx != 0.0) {
      h_tar.add(PauliString::single(layout.n_logical(), site, Pauli::X, hx));
      h_enc1.add(logical_to_physical(
          PauliString::from_labels(slot == 0 ? "XI" : "IX", hx), block, layout));
    }
  }
}

std::vector<BlockParams> resolve_params(const ModelSpec& spec, const SiteAssignment& assignment,
                                        const std::vector<LogicalBond>& bonds,
                                        const CodeLayout& draft) {
  switch (spec.params) {
    case ParamPolicy::Explicit:
      if (static_cast<int>(spec.explicit_params.size()) != assignment.n_blocks)
        throw ConfigError("explicit block_params must list one (gx,gz) per block");
      return spec.explicit_params;
    case ParamPolicy::Coloring: {
      InteractionGraph graph;
      graph.n_vertices = assignment.n_blocks;
      for (const auto& bond : bonds) {
        const int ba = draft.logical_map[static_cast<size_t>(bond.site_a)].first;
        const int bb = draft.logical_map[static_cast<size_t>(bond.site_b)].first;
        if (ba != bb) graph.edges.push_back({ba, bb, InteractionGraph::Coupling::ZZ, 1.0});
      }
      return assign_block_colors(graph);
    }
    case ParamPolicy::Paper: {
      std::vector<BlockParams> params(static_cast<size_t>(assignment.n_blocks));
      if (spec.is_1d()) {
        std::fill(params.begin(), params.end(), BlockParams{1, 3});
      } else {
        for (int b = 0; b < assignment.n_blocks; ++b)
          params[static_cast<size_t>(b)] =
              kPaperRowPattern[assignment.pattern_index[static_cast<size_t>(b)]];
      }
      return params;
    }
  }
  throw ConfigError("unknown block parameter policy");
}

}  // namespace

EncodedSystem encode(const ModelSpec& spec) {
  if (spec.n_sites() < 2) throw GeometryError("model needs at least two sites");

  // Geometry: site -> (block, slot) assignment plus the bond list.
  SiteAssignment assignment;
  std::vector<LogicalBond> bonds;
  std::function<int(int, int)> site_index;  // internal (r, c) -> external site

  if (spec.is_1d()) {
    if (spec.rows != 1) throw GeometryError("1D models need rows == 1");
    assignment = assign_chain(spec.cols);
    const int length = spec.cols;
    const int n_bonds = spec.periodic ? length : length - 1;
    for (int k = 0; k < n_bonds; ++k) {
      LogicalBond bond;
      bond.site_a = k;
      bond.site_b = (k + 1) % length;
      const double j = bond_value(spec, k);
      if (spec.kind == ModelKind::TFI1D) {
        bond.jz = j;
      } else {
        bond.jz = j;
        bond.jx = j;
      }
      bonds.push_back(bond);
    }
  } else {
    if (spec.periodic) throw GeometryError("periodic boundaries are only supported for chains");
    if (spec.rows < 2 || spec.cols < 2) throw GeometryError("lattice needs rows, cols >= 2");
    // Pair along columns for two-row lattices (and whenever only the row
    // count is even); otherwise pair horizontally. Both reduce to the same
    // internal routine with an even internal column count.
    bool transpose = (spec.rows == 2) || (spec.cols % 2 != 0);
    if (transpose && spec.rows % 2 != 0)
      throw GeometryError("lattice needs at least one even dimension");
    if (!transpose && spec.cols % 2 != 0)
      throw GeometryError("lattice needs at least one even dimension");
    const int int_rows = transpose ? spec.cols : spec.rows;
    const int int_cols = transpose ? spec.rows : spec.cols;
    site_index = [transpose, cols = spec.cols](int r, int c) {
      return transpose ? c * cols + r : r * cols + c;
    };
    assignment = assign_lattice(int_rows, int_cols, site_index);

    // Bond couplings in internal coordinates: vertical/horizontal swap under
    // transposition, and so do the compass coupling kinds.
    double vert_z = 0.0, vert_x = 0.0, horiz_z = 0.0, horiz_x = 0.0;
    if (spec.kind == ModelKind::TFI2D) {
      vert_z = transpose ? spec.coupling_horizontal : spec.coupling_vertical;
      horiz_z = transpose ? spec.coupling_vertical : spec.coupling_horizontal;
    } else {  // Compass2D: vertical ZZ, horizontal XX in external coordinates
      if (transpose) {
        vert_x = spec.coupling_horizontal;
        horiz_z = spec.coupling_vertical;
      } else {
        vert_z = spec.coupling_vertical;
        horiz_x = spec.coupling_horizontal;
      }
    }
    for (int r = 0; r + 1 < int_rows; ++r)
      for (int c = 0; c < int_cols; ++c)
        bonds.push_back({site_index(r, c), site_index(r + 1, c), vert_z, vert_x});
    for (int r = 0; r < int_rows; ++r)
      for (int c = 0; c + 1 < int_cols; ++c)
        bonds.push_back({site_index(r, c), site_index(r, c + 1), horiz_z, horiz_x});
  }

  // Draft layout with placeholder params to resolve the parameter policy.
  CodeLayout layout;
  layout.blocks.assign(static_cast<size_t>(assignment.n_blocks), BlockParams{1, 3});
  layout.logical_map = assignment.map;
  layout.blocks = resolve_params(spec, assignment, bonds, layout);
  layout.validate();

  EncodedSystem sys;
  sys.spec = spec;
  sys.layout = layout;
  sys.h_tar_logical = OperatorSum(layout.n_logical());
  sys.h_enc1 = OperatorSum(layout.n_physical());
  sys.h_enc2 = OperatorSum(layout.n_physical());

  for (const auto& bond : bonds) {
    if (bond.jz != 0.0)
      sys.h_tar_logical.add(
          PauliString::two(layout.n_logical(), bond.site_a, Pauli::Z, bond.site_b, Pauli::Z, bond.jz));
    if (bond.jx != 0.0)
      sys.h_tar_logical.add(
          PauliString::two(layout.n_logical(), bond.site_a, Pauli::X, bond.site_b, Pauli::X, bond.jx));
    encode_bond(bond, layout, sys.h_enc1, sys.gadgets);
  }
  encode_fields(spec, layout, sys.h_tar_logical, sys.h_enc1);

  for (const auto& g : sys.gadgets) sys.h_enc2.add(g.physical);
  sys.h_enc1.merge_terms();
  sys.h_enc2.merge_terms();

  const double gap = penalty_gap(layout);
  sys.penalty_scale = gap >= 1.0 ? 1.0 : 1.0 / gap;
  return sys;
}

OperatorSum logical_zx_rotation(const OperatorSum& logical, const CodeLayout& layout) {
  if (logical.n_qubits != layout.n_logical())
    throw DimensionError("logical operator must act on the 2n logical sites");
  OperatorSum out(layout.n_logical());
  for (const auto& term : logical.terms) {
    PauliString rotated = PauliString::identity(layout.n_logical(), term.coeff);
    for (int site = 0; site < logical.n_qubits; ++site) {
      const Pauli letter = term.letters[static_cast<size_t>(site)];
      if (letter == Pauli::I) continue;
      const auto [block, slot] = layout.logical_map[static_cast<size_t>(site)];
      const int label_qubit = 2 * block + slot;
      Pauli mapped = letter;
      if (slot == 1) {
        // Slot-1 states are Xbar eigenstates: conjugation by the basis change
        // sends X->Z, Z->X, Y->-Y.
        if (letter == Pauli::X) mapped = Pauli::Z;
        else if (letter == Pauli::Z) mapped = Pauli::X;
        else rotated.coeff *= -1.0;
      }
      rotated.letters[static_cast<size_t>(label_qubit)] = mapped;
    }
    out.add(rotated);
  }
  return out;
}

Eigen::MatrixXcd logical_matrix_zx(const OperatorSum& logical, const CodeLayout& layout) {
  return to_matrix(logical_zx_rotation(logical, layout)).dense();
}

EncodingReport verify_encoding(const EncodedSystem& sys, double tol) {
  const CodeLayout& layout = sys.layout;
  if (layout.n_physical() > 16)
    throw CapacityError("verify_encoding: supported up to 16 physical qubits");
  BellFrame frame(layout);
  LabelIndex zero(frame.zero_labels());
  LabelIndex codewords(frame.codeword_labels());
  const int d0 = zero.size();
  const int dc = codewords.size();

  // Positions of codeword / complement labels inside the S0 ordering.
  std::vector<int> code_col(static_cast<size_t>(d0), -1), rest_row(static_cast<size_t>(d0), -1);
  int n_rest = 0;
  for (int i = 0; i < d0; ++i) {
    int pos = codewords.position(zero.labels()[static_cast<size_t>(i)]);
    if (pos >= 0)
      code_col[static_cast<size_t>(i)] = pos;
    else
      rest_row[static_cast<size_t>(i)] = n_rest++;
  }
  auto split_blocks = [&](const Eigen::SparseMatrix<cplx>& m, Eigen::MatrixXcd& enc_block,
                          Eigen::SparseMatrix<cplx>& leak_block) {
    enc_block = Eigen::MatrixXcd::Zero(dc, dc);
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int outer = 0; outer < m.outerSize(); ++outer) {
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, outer); it; ++it) {
        const int c = code_col[static_cast<size_t>(it.col())];
        if (c < 0) continue;
        const int rc = code_col[static_cast<size_t>(it.row())];
        if (rc >= 0)
          enc_block(rc, c) = it.value();
        else
          trips.emplace_back(rest_row[static_cast<size_t>(it.row())], c, it.value());
      }
    }
    leak_block.resize(n_rest, dc);
    leak_block.setFromTriplets(trips.begin(), trips.end());
  };

  EncodingReport report;
  report.tol = tol;

  // (a) P0 H2 P0 = 0.
  report.c1_norm = sparse_spectral_norm(restrict_to_labels(sys.h_enc2, frame, zero));

  // Second-order effective operator of the gadget terms.
  Eigen::SparseMatrix<cplx> h_eff =
      (-1.0) * second_order_cross(sys.h_enc2, sys.h_enc2, frame, zero);
  Eigen::SparseMatrix<cplx> h1_zero = restrict_to_labels(sys.h_enc1, frame, zero);

  Eigen::MatrixXcd h1_enc, eff_enc;
  Eigen::SparseMatrix<cplx> h1_leak, eff_leak;
  split_blocks(h1_zero, h1_enc, h1_leak);
  split_blocks(h_eff, eff_enc, eff_leak);

  // (b) Penc (H1 + Heff2) Penc = Htar.
  Eigen::MatrixXcd target = logical_matrix_zx(sys.h_tar_logical, layout);
  Eigen::MatrixXcd mismatch = h1_enc + eff_enc - target;
  report.target_mismatch =
      mismatch.size() == 0 ? 0.0 : Eigen::BDCSVD<Eigen::MatrixXcd>(mismatch).singularValues()(0);

  // (c), (d) no transitions from S_enc into its complement inside S0.
  report.h1_leakage = sparse_spectral_norm(h1_leak);
  report.eff2_leakage = sparse_spectral_norm(eff_leak);

  report.pass = report.c1_norm <= tol && report.target_mismatch <= tol &&
                report.h1_leakage <= tol && report.eff2_leakage <= tol;
  return report;
}

}  // namespace gapsim
