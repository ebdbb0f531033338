#pragma once

// Brute-force dense reference implementations for tests. Everything here is
// built from explicit Kronecker products and Eigen's SelfAdjointEigenSolver,
// with no use of the library's Bell-label algebra, mask-based matrix builder,
// or LAPACK wrappers, so agreement is a genuine cross-check.

#include <Eigen/Dense>
#include <vector>

#include "gapsim/code.hpp"
#include "gapsim/pauli.hpp"

namespace oracles {

using gapsim::cplx;

Eigen::MatrixXcd dense_pauli(const gapsim::PauliString& term);
Eigen::MatrixXcd dense_operator(const gapsim::OperatorSum& h);

/// exp(-i t M) for Hermitian M.
Eigen::MatrixXcd dense_expm(const Eigen::MatrixXcd& m, double t);

/// Dense spectral machinery of a penalty Hamiltonian: projector onto the
/// numerically-zero eigenspace and the Moore-Penrose pseudoinverse.
struct PenaltyOracle {
  Eigen::MatrixXcd p0;   // projector onto S0
  Eigen::MatrixXcd r0;   // pseudoinverse of H_pen
  int zero_dim = 0;
  double gap = 0.0;      // smallest nonzero |eigenvalue|

  explicit PenaltyOracle(const gapsim::CodeLayout& layout, double zero_tol = 1e-7);

  /// -P0 G R0 G P0.
  Eigen::MatrixXcd effective(const Eigen::MatrixXcd& g) const;
  /// P0 A R0 B P0 + P0 B R0 A P0.
  Eigen::MatrixXcd interference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;
  /// || P0 V P0 - c P0 || with c = tr(P0 V P0) / dim(S0).
  double suppression_residual(const Eigen::MatrixXcd& v) const;
};

/// Codeword |phi_{s,t}> (x) |phi_{-s,-t}> products built from hardcoded
/// two-qubit Bell vectors; ordering matches the library convention
/// (block-major, (s,t) = ++, +-, -+, --).
Eigen::MatrixXcd oracle_codewords(const gapsim::CodeLayout& layout);

double spectral_norm(const Eigen::MatrixXcd& m);

/// Multiset of eigenvalues from enumerating Bell-label energies analytically
/// (independent sum-over-pairs bookkeeping).
std::vector<double> enumerate_bell_energies(const gapsim::CodeLayout& layout);

}  // namespace oracles
