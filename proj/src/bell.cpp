#include "gapsim/bell.hpp"

#include <algorithm>
#include <cmath>

namespace gapsim {

BellFrame::BellFrame(const CodeLayout& layout)
    : n_qubits_(layout.n_physical()), n_pairs_(layout.n_pairs()) {
  if (n_qubits_ > 30) throw CapacityError("BellFrame: too many qubits for label arithmetic");
  pair_gx_.resize(static_cast<size_t>(n_pairs_));
  pair_gz_.resize(static_cast<size_t>(n_pairs_));
  for (int p = 0; p < n_pairs_; ++p) {
    const BlockParams& bp = layout.blocks[static_cast<size_t>(p / 2)];
    pair_gx_[static_cast<size_t>(p)] = bp.gx;
    pair_gz_[static_cast<size_t>(p)] = bp.gz;
  }
}

double BellFrame::energy(Label label) const {
  double e = 0.0;
  for (int p = 0; p < n_pairs_; ++p)
    e += s_sign(label, p) * pair_gz_[static_cast<size_t>(p)] +
         t_sign(label, p) * pair_gx_[static_cast<size_t>(p)];
  return e;
}

BellFrame::Action BellFrame::apply_string(const PauliString& term, Label label) const {
  // Single-qubit actions in the (s,t) frame:
  //   first qubit:  Z: |s,t> -> |s,-t>        X: t |−s,t>      Y: -i t |-s,-t>
  //   second qubit: Z: s |s,-t>               X: |-s,t>        Y:  i s |-s,-t>
  cplx phase = term.coeff;
  Label cur = label;
  for (int q = 0; q < n_qubits_; ++q) {
    Pauli letter = term.letters[static_cast<size_t>(q)];
    if (letter == Pauli::I) continue;
    const int pair = q / 2;
    const int side = q % 2;
    const uint32_t sbit_mask = 1u << (n_qubits_ - 1 - 2 * pair);
    const uint32_t tbit_mask = 1u << (n_qubits_ - 2 - 2 * pair);
    const double s = (cur & sbit_mask) ? -1.0 : 1.0;
    const double t = (cur & tbit_mask) ? -1.0 : 1.0;
    if (side == 0) {
      switch (letter) {
        case Pauli::Z: cur ^= tbit_mask; break;
        case Pauli::X:
          phase *= t;
          cur ^= sbit_mask;
          break;
        case Pauli::Y:
          phase *= cplx(0.0, -t);
          cur ^= sbit_mask | tbit_mask;
          break;
        default: break;
      }
    } else {
      switch (letter) {
        case Pauli::Z:
          phase *= s;
          cur ^= tbit_mask;
          break;
        case Pauli::X: cur ^= sbit_mask; break;
        case Pauli::Y:
          phase *= cplx(0.0, s);
          cur ^= sbit_mask | tbit_mask;
          break;
        default: break;
      }
    }
  }
  return {cur, phase};
}

std::vector<BellFrame::Label> BellFrame::zero_labels(double tol) const {
  std::vector<Label> out;
  const size_t count = dim();
  for (size_t label = 0; label < count; ++label)
    if (std::abs(energy(static_cast<Label>(label))) <= tol) out.push_back(static_cast<Label>(label));
  return out;
}

std::vector<BellFrame::Label> BellFrame::codeword_labels() const {
  const int n_blocks = n_pairs_ / 2;
  const size_t count = size_t{1} << (2 * n_blocks);
  std::vector<Label> out(count);
  for (size_t code = 0; code < count; ++code) {
    Label label = 0;
    for (int b = 0; b < n_blocks; ++b) {
      // Block b is the leading base-4 digit; digit bits are (s_bit, t_bit).
      const uint32_t digit = (code >> (2 * (n_blocks - 1 - b))) & 3u;
      const uint32_t sbit = (digit >> 1) & 1u;
      const uint32_t tbit = digit & 1u;
      const int p0 = 2 * b, p1 = 2 * b + 1;
      label |= sbit << (n_qubits_ - 1 - 2 * p0);
      label |= tbit << (n_qubits_ - 2 - 2 * p0);
      label |= (sbit ^ 1u) << (n_qubits_ - 1 - 2 * p1);
      label |= (tbit ^ 1u) << (n_qubits_ - 2 - 2 * p1);
    }
    out[code] = label;
  }
  return out;
}

namespace {

// Per-pair rotation between the computational and Bell bases. Columns are the
// Bell states ordered by local label (s_bit<<1)|t_bit; rows are |00>..|11>.
const double kBell[4][4] = {
    {1, 1, 0, 0},
    {0, 0, 1, 1},
    {0, 0, 1, -1},
    {1, -1, 0, 0},
};

void apply_pair_rotation(StateVector& v, int n_qubits, int pair, bool transpose) {
  const int hi_pos = n_qubits - 1 - 2 * pair;  // first-qubit bit
  const int lo_pos = hi_pos - 1;               // second-qubit bit
  const size_t hi = size_t{1} << hi_pos;
  const size_t lo = size_t{1} << lo_pos;
  const size_t dim = size_t{1} << n_qubits;
  const double inv_sqrt2 = 0.7071067811865475244;
  cplx* data = v.data();
  for (size_t base = 0; base < dim; ++base) {
    if (base & (hi | lo)) continue;
    cplx in[4] = {data[base], data[base | lo], data[base | hi], data[base | hi | lo]};
    for (int r = 0; r < 4; ++r) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < 4; ++c) acc += (transpose ? kBell[c][r] : kBell[r][c]) * in[c];
      cplx val = inv_sqrt2 * acc;
      data[base | (r & 2 ? hi : 0) | (r & 1 ? lo : 0)] = val;
    }
  }
}

}  // namespace

void BellFrame::to_bell(StateVector& v) const {
  if (static_cast<size_t>(v.size()) != dim())
    throw DimensionError("to_bell: vector dimension mismatch");
  for (int p = 0; p < n_pairs_; ++p) apply_pair_rotation(v, n_qubits_, p, /*transpose=*/true);
}

void BellFrame::from_bell(StateVector& v) const {
  if (static_cast<size_t>(v.size()) != dim())
    throw DimensionError("from_bell: vector dimension mismatch");
  for (int p = 0; p < n_pairs_; ++p) apply_pair_rotation(v, n_qubits_, p, /*transpose=*/false);
}

StateVector BellFrame::label_state(Label label) const {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(dim()));
  v[static_cast<Eigen::Index>(label)] = cplx(1.0, 0.0);
  from_bell(v);
  return v;
}

LabelIndex::LabelIndex(const std::vector<BellFrame::Label>& labels) : original_(labels) {
  order_.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) order_[i] = static_cast<int>(i);
  std::sort(order_.begin(), order_.end(),
            [&](int a, int b) { return labels[static_cast<size_t>(a)] < labels[static_cast<size_t>(b)]; });
  sorted_.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i)
    sorted_[i] = labels[static_cast<size_t>(order_[i])];
}

int LabelIndex::position(BellFrame::Label label) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), label);
  if (it == sorted_.end() || *it != label) return -1;
  return order_[static_cast<size_t>(it - sorted_.begin())];
}

Eigen::SparseMatrix<cplx> restrict_to_labels(const OperatorSum& h, const BellFrame& frame,
                                             const LabelIndex& labels) {
  const int d = labels.size();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int col = 0; col < d; ++col) {
    const BellFrame::Label col_label = labels.labels()[static_cast<size_t>(col)];
    for (const auto& term : h.terms) {
      auto act = frame.apply_string(term, col_label);
      int row = labels.position(act.label);
      if (row >= 0) trips.emplace_back(row, col, act.phase);
    }
  }
  Eigen::SparseMatrix<cplx> m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Eigen::SparseMatrix<cplx> second_order_cross(const OperatorSum& a, const OperatorSum& b,
                                             const BellFrame& frame, const LabelIndex& zero,
                                             double zero_tol) {
  const int d = zero.size();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int col = 0; col < d; ++col) {
    const BellFrame::Label col_label = zero.labels()[static_cast<size_t>(col)];
    for (const auto& tb : b.terms) {
      auto mid = frame.apply_string(tb, col_label);
      const double e_mid = frame.energy(mid.label);
      if (std::abs(e_mid) <= zero_tol) continue;  // R0 annihilates S0 components
      for (const auto& ta : a.terms) {
        auto fin = frame.apply_string(ta, mid.label);
        int row = zero.position(fin.label);
        if (row >= 0) trips.emplace_back(row, col, fin.phase * mid.phase / e_mid);
      }
    }
  }
  Eigen::SparseMatrix<cplx> m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

double sparse_spectral_norm(const Eigen::SparseMatrix<cplx>& m, double tol, int max_iter) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonZeros() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 512) {
    Eigen::MatrixXcd dense(m);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
    return svd.singularValues()(0);
  }
  const Eigen::SparseMatrix<cplx> mh = m.adjoint();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.cols());
  // Deterministic seed vector spread over all components.
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = cplx(1.0 + 0.0001 * static_cast<double>(i % 97), 0.0001 * static_cast<double>(i % 31));
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd w = mh * (m * v);
    double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    v = w / nrm;
    double est = std::sqrt(nrm);
    if (std::abs(est - prev) <= tol * std::max(1.0, est)) return est;
    prev = est;
  }
  return prev;
}

}  // namespace gapsim
