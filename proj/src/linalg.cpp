#include "gapsim/linalg.hpp"

#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "gapsim/errors.hpp"

namespace gapsim {

HermitianEig eig_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DimensionError("eig_hermitian: matrix must be square");
  HermitianEig out;
  out.evecs = a;
  out.evals.resize(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.rows());
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.evecs.data(), n,
                                   out.evals.data());
  if (info != 0)
    throw NumericalError("zheevd failed with info = " + std::to_string(info));
  return out;
}

StateVector expm_apply(const HermitianEig& eig, double t, const StateVector& v) {
  if (eig.evecs.rows() != v.size()) throw DimensionError("expm_apply: dimension mismatch");
  Eigen::VectorXcd coeffs = eig.evecs.adjoint() * v;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs[i] *= std::polar(1.0, -eig.evals[i] * t);
  return eig.evecs * coeffs;
}

namespace {

// Lanczos tridiagonalization with full reorthogonalization; returns extremal
// Ritz values once both ends have converged.
std::pair<double, double> lanczos_extremal(const PauliApplier& applier, double tol) {
  const Eigen::Index dim = static_cast<Eigen::Index>(applier.dim());
  const int max_dim = 220;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v[i] = cplx(1.0 + 0.001 * static_cast<double>(i % 89),
                0.37 + 0.002 * static_cast<double>(i % 53));
  v.normalize();
  std::vector<Eigen::VectorXcd> basis{v};
  std::vector<double> alpha, beta;
  Eigen::VectorXcd w(dim);
  double lo_prev = 0.0, hi_prev = 0.0;
  for (int j = 0; j < max_dim; ++j) {
    applier.apply(basis.back().data(), w.data());
    cplx a = basis.back().dot(w);
    alpha.push_back(a.real());
    w -= a * basis.back();
    if (j > 0) w -= cplx(beta.back(), 0.0) * basis[basis.size() - 2];
    for (const auto& b : basis) w -= b.dot(w) * b;  // full reorthogonalization
    double nb = w.norm();
    const int m = static_cast<int>(alpha.size());
    if (m >= 2 || nb <= 1e-13) {
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) tri(i, i) = alpha[static_cast<size_t>(i)];
      for (int i = 0; i + 1 < m; ++i)
        tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
      double lo = es.eigenvalues()(0), hi = es.eigenvalues()(m - 1);
      if (nb <= 1e-13) return {lo, hi};
      if (m > 8 && std::abs(lo - lo_prev) <= tol * std::max(1.0, std::abs(lo)) &&
          std::abs(hi - hi_prev) <= tol * std::max(1.0, std::abs(hi)))
        return {lo, hi};
      lo_prev = lo;
      hi_prev = hi;
    }
    if (nb <= 1e-13) break;
    beta.push_back(nb);
    basis.push_back(w / nb);
  }
  return {lo_prev, hi_prev};
}

}  // namespace

double operator_spectral_norm(const OperatorSum& h, double tol) {
  if (h.terms.empty()) return 0.0;
  const size_t dim = size_t{1} << h.n_qubits;
  if (dim <= 1024) {
    HermitianEig eig = eig_hermitian(to_matrix(h).dense());
    return std::max(std::abs(eig.evals[0]), std::abs(eig.evals[eig.evals.size() - 1]));
  }
  PauliApplier applier(h);
  auto [lo, hi] = lanczos_extremal(applier, tol);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace gapsim
