#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gapsim/errors.hpp"

namespace gapsim {

using cplx = std::complex<double>;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit tensor product of {I,X,Y,Z} with a complex coefficient.
/// Qubit 0 is the leftmost tensor factor (most significant index bit).
struct PauliString {
  std::vector<Pauli> letters;
  cplx coeff{1.0, 0.0};

  int n_qubits() const { return static_cast<int>(letters.size()); }
  int weight() const;

  static PauliString identity(int n, cplx c = cplx(1.0, 0.0));
  static PauliString single(int n, int qubit, Pauli p, cplx c = cplx(1.0, 0.0));
  static PauliString two(int n, int qa, Pauli pa, int qb, Pauli pb, cplx c = cplx(1.0, 0.0));
  static PauliString from_labels(std::string_view labels, cplx c = cplx(1.0, 0.0));

  std::string labels() const;
};

/// Pauli group product: c.letters[k] = a.letters[k]*b.letters[k] with the
/// accumulated +/-1, +/-i phase folded into the coefficient.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff the strings commute (even number of anticommuting positions).
bool commutes(const PauliString& a, const PauliString& b);

/// Weighted list of PauliStrings on a fixed qubit count.
struct OperatorSum {
  int n_qubits = 0;
  std::vector<PauliString> terms;

  OperatorSum() = default;
  explicit OperatorSum(int n) : n_qubits(n) {}

  void add(const PauliString& term);
  void add(OperatorSum other);
  OperatorSum scaled(cplx factor) const;

  /// Merge terms with identical letters; drop coefficients below tol.
  void merge_terms(double tol = 1e-12);

  /// Sum of |coeff| over terms: a cheap upper bound on the spectral norm.
  double one_norm() const;

  /// All-real coefficients and self-inverse letter parts.
  bool is_hermitian(double tol = 1e-12) const;

  size_t size() const { return terms.size(); }
};

OperatorSum operator+(const OperatorSum& a, const OperatorSum& b);
OperatorSum operator*(cplx factor, const OperatorSum& h);
OperatorSum operator*(double factor, const OperatorSum& h);

/// Line-oriented text form: one term per line, "coeff_re coeff_im LETTERS".
std::string to_lines(const OperatorSum& h);
OperatorSum operator_sum_from_lines(std::string_view text);
/// As above but tolerates an empty term list (qubit count given explicitly).
OperatorSum operator_sum_from_lines(std::string_view text, int n_qubits);

}  // namespace gapsim
