#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "gapsim/pauli.hpp"

namespace gapsim {

using StateVector = Eigen::VectorXcd;

/// Sparse complex matrix acting on state vectors. Usually 2^n-dimensional,
/// but subspace restrictions (projections) reuse the same type.
struct OperatorMatrix {
  Eigen::SparseMatrix<cplx> mat;

  OperatorMatrix() = default;
  explicit OperatorMatrix(Eigen::SparseMatrix<cplx> m) : mat(std::move(m)) {}
  explicit OperatorMatrix(const Eigen::MatrixXcd& dense) : mat(dense.sparseView()) {}

  Eigen::Index dim() const { return mat.rows(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat); }
};

/// Bit masks of one Pauli term: index bit (n-1-k) corresponds to qubit k.
struct PauliMasks {
  uint64_t xmask = 0;   // bits with X or Y letters (column -> row bit flips)
  uint64_t zymask = 0;  // bits with Z or Y letters (sign from bit parity)
  cplx base;            // coeff * i^(#Y)
};

PauliMasks pauli_masks(const PauliString& term);

/// Sigma coeff * (tensor product of letter matrices); exact up to rounding.
OperatorMatrix to_matrix(const OperatorSum& h, int qubit_limit = 16);

/// Matrix-vector product; no normalization applied.
StateVector apply(const OperatorMatrix& h, const StateVector& v);

/// Fast repeated application of an OperatorSum to 2^n vectors. Terms sharing
/// an X/Y flip mask are merged into one pass with a precomputed amplitude
/// table, so the per-apply cost is (#distinct masks) * 2^n.
class PauliApplier {
 public:
  explicit PauliApplier(const OperatorSum& h);

  void apply(const cplx* in, cplx* out) const;  // out = H * in (overwritten)
  StateVector apply(const StateVector& v) const;

  int n_qubits() const { return n_qubits_; }
  size_t dim() const { return dim_; }
  /// Sum |coeff|: rigorous upper bound on the spectral norm.
  double one_norm() const { return one_norm_; }

 private:
  struct Pass {
    uint64_t xmask;
    Eigen::VectorXcd amp;
  };
  int n_qubits_ = 0;
  size_t dim_ = 0;
  double one_norm_ = 0.0;
  Eigen::VectorXcd diag_;
  bool has_diag_ = false;
  std::vector<Pass> passes_;
};

}  // namespace gapsim
