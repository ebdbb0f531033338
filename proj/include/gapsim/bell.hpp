#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "gapsim/code.hpp"
#include "gapsim/operator_matrix.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

// The penalty Hamiltonian is diagonal in the basis of Bell-pair products, and
// every Pauli string maps one Bell-product state to another with a phase in
// {+-1, +-i}. This frame does all subspace algebra (S0, S_enc, pseudoinverse,
// second-order effective operators) exactly on integer-valued labels instead
// of 2^n-dimensional matrices.
//
// A label is the index of a Bell-product state in the transformed space:
// pair p (qubits 2p, 2p+1) contributes two bits at the qubit positions, the
// first-qubit bit holding s (ZZ eigenvalue, 0 <-> +1) and the second-qubit
// bit holding t (XX eigenvalue).
class BellFrame {
 public:
  using Label = uint32_t;

  explicit BellFrame(const CodeLayout& layout);

  int n_qubits() const { return n_qubits_; }
  int n_pairs() const { return n_pairs_; }
  size_t dim() const { return size_t{1} << n_qubits_; }

  int s_sign(Label label, int pair) const {
    return ((label >> (n_qubits_ - 1 - 2 * pair)) & 1) ? -1 : +1;
  }
  int t_sign(Label label, int pair) const {
    return ((label >> (n_qubits_ - 2 - 2 * pair)) & 1) ? -1 : +1;
  }

  double energy(Label label) const;

  struct Action {
    Label label;
    cplx phase;  // includes the term coefficient
  };

  /// Image of a Bell-product state under a Pauli string.
  Action apply_string(const PauliString& term, Label label) const;

  /// Labels of all zero-energy Bell products (|E| <= tol), ascending.
  std::vector<Label> zero_labels(double tol = 1e-9) const;

  /// Codeword labels ordered block-major by (s,t) = ++, +-, -+, --.
  std::vector<Label> codeword_labels() const;

  /// In-place rotation computational basis -> Bell label amplitudes.
  void to_bell(StateVector& v) const;
  /// Inverse rotation.
  void from_bell(StateVector& v) const;

  /// Dense state vector of one Bell-product label.
  StateVector label_state(Label label) const;

 private:
  int n_qubits_;
  int n_pairs_;
  std::vector<double> pair_gx_, pair_gz_;
};

/// Index lookup for a set of labels (e.g. S0); position or -1.
class LabelIndex {
 public:
  explicit LabelIndex(const std::vector<BellFrame::Label>& labels);
  int position(BellFrame::Label label) const;
  int size() const { return static_cast<int>(original_.size()); }
  const std::vector<BellFrame::Label>& labels() const { return original_; }

 private:
  std::vector<BellFrame::Label> original_;
  std::vector<BellFrame::Label> sorted_;
  std::vector<int> order_;  // sorted position -> original position
};

/// P0 H P0 as a matrix on the given labels (columns/rows in label-list order).
Eigen::SparseMatrix<cplx> restrict_to_labels(const OperatorSum& h, const BellFrame& frame,
                                             const LabelIndex& labels);

/// P0 A R0 B P0 on the given zero-energy labels; R0 weights intermediate
/// states by 1/energy and annihilates zero-energy intermediates.
Eigen::SparseMatrix<cplx> second_order_cross(const OperatorSum& a, const OperatorSum& b,
                                             const BellFrame& frame, const LabelIndex& zero,
                                             double zero_tol = 1e-9);

/// Largest singular value of a sparse matrix (power iteration on M^dagger M).
double sparse_spectral_norm(const Eigen::SparseMatrix<cplx>& m, double tol = 1e-10,
                            int max_iter = 2000);

}  // namespace gapsim
