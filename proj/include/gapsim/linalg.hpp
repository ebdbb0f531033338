#pragma once

#include <Eigen/Dense>

#include "gapsim/operator_matrix.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

struct HermitianEig {
  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;  // columns
};

/// Full eigendecomposition of a Hermitian matrix (LAPACK zheevd).
HermitianEig eig_hermitian(const Eigen::MatrixXcd& a);

/// exp(-i t H) v given the eigendecomposition of H.
StateVector expm_apply(const HermitianEig& eig, double t, const StateVector& v);

/// Spectral norm (largest |eigenvalue|) of a Hermitian OperatorSum via
/// Lanczos extremal eigenvalues; dense fallback for small dimensions.
double operator_spectral_norm(const OperatorSum& h, double tol = 1e-9);

}  // namespace gapsim
