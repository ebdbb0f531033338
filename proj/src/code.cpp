#include "gapsim/code.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapsim/bell.hpp"

namespace gapsim {

bool block_params_valid(const BlockParams& p) {
  return p.gx != 0.0 && p.gz != 0.0 && std::abs(std::abs(p.gx) - std::abs(p.gz)) > 1e-12;
}

int CodeLayout::site_at(int block, int slot) const {
  for (size_t site = 0; site < logical_map.size(); ++site)
    if (logical_map[site].first == block && logical_map[site].second == slot)
      return static_cast<int>(site);
  throw DimensionError("CodeLayout: no logical site at (block " + std::to_string(block) +
                       ", slot " + std::to_string(slot) + ")");
}

void CodeLayout::validate() const {
  if (blocks.empty()) throw DimensionError("CodeLayout: no blocks");
  for (const auto& p : blocks)
    if (!block_params_valid(p))
      throw DimensionError("CodeLayout: block params need gx,gz nonzero and |gx| != |gz|");
  if (static_cast<int>(logical_map.size()) != n_logical())
    throw DimensionError("CodeLayout: logical_map must assign all 2n sites");
  std::vector<int> seen(static_cast<size_t>(n_logical()), 0);
  for (const auto& [block, slot] : logical_map) {
    if (block < 0 || block >= n_blocks() || slot < 0 || slot > 1)
      throw DimensionError("CodeLayout: logical_map entry out of range");
    seen[static_cast<size_t>(2 * block + slot)] += 1;
  }
  for (int count : seen)
    if (count != 1) throw DimensionError("CodeLayout: logical_map is not a bijection");
}

CodeLayout CodeLayout::uniform(int n_blocks, BlockParams params) {
  return with_params(std::vector<BlockParams>(static_cast<size_t>(n_blocks), params));
}

CodeLayout CodeLayout::with_params(std::vector<BlockParams> params) {
  CodeLayout layout;
  layout.blocks = std::move(params);
  layout.logical_map.resize(static_cast<size_t>(layout.n_logical()));
  for (int site = 0; site < layout.n_logical(); ++site)
    layout.logical_map[static_cast<size_t>(site)] = {site / 2, site % 2};
  layout.validate();
  return layout;
}

OperatorSum penalty_hamiltonian(const CodeLayout& layout) {
  layout.validate();
  const int n = layout.n_physical();
  OperatorSum h(n);
  for (int b = 0; b < layout.n_blocks(); ++b) {
    const BlockParams& p = layout.blocks[static_cast<size_t>(b)];
    const int q = 4 * b;
    h.add(PauliString::two(n, q + 0, Pauli::X, q + 1, Pauli::X, p.gx));
    h.add(PauliString::two(n, q + 0, Pauli::Z, q + 1, Pauli::Z, p.gz));
    h.add(PauliString::two(n, q + 2, Pauli::X, q + 3, Pauli::X, p.gx));
    h.add(PauliString::two(n, q + 2, Pauli::Z, q + 3, Pauli::Z, p.gz));
  }
  return h;
}

double bell_energy(const BellConfig& config, const CodeLayout& layout) {
  if (static_cast<int>(config.labels.size()) != layout.n_pairs())
    throw DimensionError("bell_energy: config needs one (s,t) pair per Bell pair");
  double e = 0.0;
  for (int p = 0; p < layout.n_pairs(); ++p) {
    const auto& [s, t] = config.labels[static_cast<size_t>(p)];
    const BlockParams& bp = layout.blocks[static_cast<size_t>(p / 2)];
    e += s * bp.gz + t * bp.gx;
  }
  return e;
}

double penalty_gap(const CodeLayout& layout) {
  BellFrame frame(layout);
  double gap = std::numeric_limits<double>::infinity();
  const size_t count = size_t{1} << frame.n_qubits();
  for (size_t label = 0; label < count; ++label) {
    double e = std::abs(frame.energy(static_cast<BellFrame::Label>(label)));
    if (e > 1e-9 && e < gap) gap = e;
  }
  return gap;
}

namespace {

SubspaceBasis basis_from_labels(const BellFrame& frame, const std::vector<BellFrame::Label>& labels,
                                int dense_limit) {
  if (frame.n_qubits() > dense_limit)
    throw CapacityError("subspace basis: " + std::to_string(frame.n_qubits()) +
                        " qubits exceeds dense limit " + std::to_string(dense_limit));
  SubspaceBasis basis;
  basis.vectors.resize(static_cast<Eigen::Index>(frame.dim()),
                       static_cast<Eigen::Index>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i)
    basis.vectors.col(static_cast<Eigen::Index>(i)) = frame.label_state(labels[i]);
  return basis;
}

}  // namespace

SubspaceBasis zero_space_basis(const CodeLayout& layout, int dense_limit) {
  layout.validate();
  BellFrame frame(layout);
  return basis_from_labels(frame, frame.zero_labels(), dense_limit);
}

SubspaceBasis encoding_basis(const CodeLayout& layout, int dense_limit) {
  layout.validate();
  BellFrame frame(layout);
  return basis_from_labels(frame, frame.codeword_labels(), dense_limit);
}

PauliString logical_to_physical(const PauliString& op, int block, const CodeLayout& layout) {
  if (op.n_qubits() != 2)
    throw UnsupportedOperatorError("logical_to_physical: operator must act on the 2 block slots");
  if (block < 0 || block >= layout.n_blocks())
    throw DimensionError("logical_to_physical: block index out of range");
  const int n = layout.n_physical();
  const int q = 4 * block;  // block-local qubits 1..4 -> q..q+3
  const Pauli a = op.letters[0], b = op.letters[1];
  double sign = 1.0;
  int qa, qb;
  Pauli letter;
  if (a == Pauli::Z && b == Pauli::I) {
    letter = Pauli::Z; qa = q + 0; qb = q + 1;           // Z1 Z2
  } else if (a == Pauli::I && b == Pauli::Z) {
    letter = Pauli::Z; qa = q + 0; qb = q + 2;           // Z1 Z3
  } else if (a == Pauli::Z && b == Pauli::Z) {
    letter = Pauli::Z; qa = q + 1; qb = q + 2;           // Z2 Z3
  } else if (a == Pauli::X && b == Pauli::I) {
    letter = Pauli::X; qa = q + 0; qb = q + 2; sign = -1.0;  // -X1 X3
  } else if (a == Pauli::I && b == Pauli::X) {
    letter = Pauli::X; qa = q + 0; qb = q + 1;           // X1 X2
  } else if (a == Pauli::X && b == Pauli::X) {
    letter = Pauli::X; qa = q + 1; qb = q + 2; sign = -1.0;  // -X2 X3
  } else {
    throw UnsupportedOperatorError(
        "logical_to_physical: only Z1, Z2, X1, X2, Z1Z2, X1X2 have 2-local encodings");
  }
  return PauliString::two(n, qa, letter, qb, letter, sign * op.coeff);
}

OperatorMatrix project(const OperatorMatrix& h, const SubspaceBasis& basis) {
  if (h.mat.cols() != basis.vectors.rows())
    throw DimensionError("project: operator and basis dimensions disagree");
  Eigen::MatrixXcd reduced = basis.vectors.adjoint() * (h.mat * basis.vectors);
  return OperatorMatrix(reduced);
}

StateVector penalty_pseudoinverse_apply(const CodeLayout& layout, const StateVector& v) {
  BellFrame frame(layout);
  if (static_cast<size_t>(v.size()) != frame.dim())
    throw DimensionError("penalty_pseudoinverse_apply: vector dimension mismatch");
  StateVector w = v;
  frame.to_bell(w);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double e = frame.energy(static_cast<BellFrame::Label>(i));
    w[i] = (std::abs(e) <= 1e-9) ? cplx(0.0, 0.0) : w[i] / e;
  }
  frame.from_bell(w);
  return w;
}

bool css_check_on_basis(const SubspaceBasis& basis, const CodeLayout& layout, double tol) {
  const int n = layout.n_physical();
  for (int b = 0; b < layout.n_blocks(); ++b) {
    for (Pauli letter : {Pauli::X, Pauli::Z}) {
      PauliString stab = PauliString::identity(n);
      for (int k = 0; k < 4; ++k) stab.letters[static_cast<size_t>(4 * b + k)] = letter;
      OperatorSum op(n);
      op.add(stab);
      PauliApplier applier(op);
      for (Eigen::Index c = 0; c < basis.vectors.cols(); ++c) {
        StateVector image = applier.apply(basis.vectors.col(c));
        if ((image + basis.vectors.col(c)).norm() > tol) return false;
      }
    }
  }
  return true;
}

bool css_equivalence_check(const CodeLayout& layout) {
  return css_check_on_basis(encoding_basis(layout), layout);
}

}  // namespace gapsim
