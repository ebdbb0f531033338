#include "gapsim/operator_matrix.hpp"

#include <map>

namespace gapsim {

PauliMasks pauli_masks(const PauliString& term) {
  PauliMasks m;
  const int n = term.n_qubits();
  int y_count = 0;
  for (int k = 0; k < n; ++k) {
    uint64_t bit = 1ULL << (n - 1 - k);
    switch (term.letters[static_cast<size_t>(k)]) {
      case Pauli::I: break;
      case Pauli::X: m.xmask |= bit; break;
      case Pauli::Y:
        m.xmask |= bit;
        m.zymask |= bit;
        ++y_count;
        break;
      case Pauli::Z: m.zymask |= bit; break;
    }
  }
  static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  m.base = term.coeff * i_pow[y_count % 4];
  return m;
}

OperatorMatrix to_matrix(const OperatorSum& h, int qubit_limit) {
  if (h.n_qubits > qubit_limit)
    throw CapacityError("to_matrix: " + std::to_string(h.n_qubits) + " qubits exceeds limit " +
                        std::to_string(qubit_limit));
  const size_t dim = size_t{1} << h.n_qubits;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(h.terms.size() * dim);
  for (const auto& term : h.terms) {
    PauliMasks m = pauli_masks(term);
    for (size_t col = 0; col < dim; ++col) {
      double sign = (__builtin_parityll(col & m.zymask)) ? -1.0 : 1.0;
      trips.emplace_back(static_cast<int>(col ^ m.xmask), static_cast<int>(col), sign * m.base);
    }
  }
  Eigen::SparseMatrix<cplx> mat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > 0.0; });
  return OperatorMatrix(std::move(mat));
}

StateVector apply(const OperatorMatrix& h, const StateVector& v) {
  if (h.mat.cols() != v.size()) throw DimensionError("apply: matrix/vector dimension mismatch");
  return h.mat * v;
}

PauliApplier::PauliApplier(const OperatorSum& h)
    : n_qubits_(h.n_qubits), dim_(size_t{1} << h.n_qubits), one_norm_(h.one_norm()) {
  diag_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
  std::map<uint64_t, std::vector<PauliMasks>> by_xmask;
  for (const auto& term : h.terms) by_xmask[pauli_masks(term).xmask].push_back(pauli_masks(term));
  for (const auto& [xmask, masks] : by_xmask) {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
    for (const auto& m : masks) {
      for (size_t j = 0; j < dim_; ++j) {
        double sign = (__builtin_parityll(j & m.zymask)) ? -1.0 : 1.0;
        amp[static_cast<Eigen::Index>(j)] += sign * m.base;
      }
    }
    if (xmask == 0) {
      diag_ += amp;
      has_diag_ = true;
    } else {
      passes_.push_back({xmask, std::move(amp)});
    }
  }
}

void PauliApplier::apply(const cplx* in, cplx* out) const {
  using MapV = Eigen::Map<Eigen::VectorXcd>;
  using MapC = Eigen::Map<const Eigen::VectorXcd>;
  const Eigen::Index n = static_cast<Eigen::Index>(dim_);
  if (has_diag_) {
    MapV(out, n) = MapC(diag_.data(), n).cwiseProduct(MapC(in, n));
  } else {
    std::fill(out, out + dim_, cplx(0.0, 0.0));
  }
  static thread_local std::vector<cplx> scratch;
  for (const auto& pass : passes_) {
    const cplx* a = pass.amp.data();
    const uint64_t xm = pass.xmask;
    // j -> j^xm maps each aligned run of length 2^(lowest set bit) onto a
    // contiguous run, so wide runs use vectorized segment products.
    const size_t run = uint64_t{1} << __builtin_ctzll(xm);
    if (run >= 4) {
      const Eigen::Index len = static_cast<Eigen::Index>(run);
      for (size_t base = 0; base < dim_; base += run) {
        MapV(out + (base ^ xm), len) +=
            MapC(a + base, len).cwiseProduct(MapC(in + base, len));
      }
    } else {
      // Narrow runs: vectorize the product once, leaving a pure shuffled add.
      scratch.resize(dim_);
      cplx* w = scratch.data();
      MapV(w, n) = MapC(a, n).cwiseProduct(MapC(in, n));
      if (run == 2) {
        for (size_t base = 0; base < dim_; base += 2) {
          const size_t dst = base ^ xm;
          out[dst] += w[base];
          out[dst + 1] += w[base + 1];
        }
      } else {
        for (size_t j = 0; j < dim_; j += 2) {
          const size_t dst = j ^ xm;  // odd, since xm has bit 0 set
          out[dst] += w[j];
          out[dst ^ 1] += w[j + 1];
        }
      }
    }
  }
}

StateVector PauliApplier::apply(const StateVector& v) const {
  if (static_cast<size_t>(v.size()) != dim_)
    throw DimensionError("PauliApplier: vector dimension mismatch");
  StateVector out(v.size());
  apply(v.data(), out.data());
  return out;
}

}  // namespace gapsim
