#include "gapsim/pauli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

namespace gapsim {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ConfigError(std::string("invalid Pauli letter '") + c + "'");
  }
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : letters)
    if (p != Pauli::I) ++w;
  return w;
}

PauliString PauliString::identity(int n, cplx c) {
  PauliString s;
  s.letters.assign(static_cast<size_t>(n), Pauli::I);
  s.coeff = c;
  return s;
}

PauliString PauliString::single(int n, int qubit, Pauli p, cplx c) {
  if (qubit < 0 || qubit >= n) throw DimensionError("qubit index out of range");
  PauliString s = identity(n, c);
  s.letters[static_cast<size_t>(qubit)] = p;
  return s;
}

PauliString PauliString::two(int n, int qa, Pauli pa, int qb, Pauli pb, cplx c) {
  if (qa == qb) throw DimensionError("two-qubit term needs distinct qubits");
  PauliString s = single(n, qa, pa, c);
  if (qb < 0 || qb >= n) throw DimensionError("qubit index out of range");
  s.letters[static_cast<size_t>(qb)] = pb;
  return s;
}

PauliString PauliString::from_labels(std::string_view labels, cplx c) {
  PauliString s;
  s.coeff = c;
  s.letters.reserve(labels.size());
  for (char ch : labels) s.letters.push_back(pauli_from_char(ch));
  return s;
}

std::string PauliString::labels() const {
  std::string out;
  out.reserve(letters.size());
  for (Pauli p : letters) out.push_back(pauli_char(p));
  return out;
}

namespace {

// Single-qubit products sigma_a * sigma_b = phase * sigma_c, with phase one of
// {1, i, -i}. Indexed [a][b] with the Pauli enum values.
constexpr int kPhaseOne = 0, kPhaseI = 1, kPhaseMinusI = 2;

const std::array<std::array<std::pair<Pauli, int>, 4>, 4> kProductTable = {{
    // I*: I X Y Z
    {{{Pauli::I, kPhaseOne}, {Pauli::X, kPhaseOne}, {Pauli::Y, kPhaseOne}, {Pauli::Z, kPhaseOne}}},
    // X*: X I Z Y     XY = iZ, XZ = -iY
    {{{Pauli::X, kPhaseOne}, {Pauli::I, kPhaseOne}, {Pauli::Z, kPhaseI}, {Pauli::Y, kPhaseMinusI}}},
    // Y*: Y Z I X     YX = -iZ, YZ = iX
    {{{Pauli::Y, kPhaseOne}, {Pauli::Z, kPhaseMinusI}, {Pauli::I, kPhaseOne}, {Pauli::X, kPhaseI}}},
    // Z*: Z Y X I     ZX = iY, ZY = -iX
    {{{Pauli::Z, kPhaseOne}, {Pauli::Y, kPhaseI}, {Pauli::X, kPhaseMinusI}, {Pauli::I, kPhaseOne}}},
}};

cplx phase_value(int code) {
  switch (code) {
    case kPhaseI: return cplx(0.0, 1.0);
    case kPhaseMinusI: return cplx(0.0, -1.0);
    default: return cplx(1.0, 0.0);
  }
}

}  // namespace

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw DimensionError("PauliString multiply: mismatched qubit counts");
  PauliString c;
  c.letters.resize(a.letters.size());
  cplx phase(1.0, 0.0);
  for (size_t k = 0; k < a.letters.size(); ++k) {
    const auto& entry =
        kProductTable[static_cast<size_t>(a.letters[k])][static_cast<size_t>(b.letters[k])];
    c.letters[k] = entry.first;
    phase *= phase_value(entry.second);
  }
  c.coeff = a.coeff * b.coeff * phase;
  return c;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw DimensionError("PauliString commutes: mismatched qubit counts");
  int anticommuting = 0;
  for (size_t k = 0; k < a.letters.size(); ++k) {
    Pauli pa = a.letters[k], pb = b.letters[k];
    if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++anticommuting;
  }
  return (anticommuting % 2) == 0;
}

void OperatorSum::add(const PauliString& term) {
  if (term.n_qubits() != n_qubits)
    throw DimensionError("OperatorSum: term qubit count mismatch");
  terms.push_back(term);
}

void OperatorSum::add(OperatorSum other) {
  if (other.n_qubits != n_qubits)
    throw DimensionError("OperatorSum: operand qubit count mismatch");
  for (auto& t : other.terms) terms.push_back(std::move(t));
}

OperatorSum OperatorSum::scaled(cplx factor) const {
  OperatorSum out(n_qubits);
  out.terms = terms;
  for (auto& t : out.terms) t.coeff *= factor;
  return out;
}

void OperatorSum::merge_terms(double tol) {
  std::map<std::string, cplx> merged;
  for (const auto& t : terms) merged[t.labels()] += t.coeff;
  std::vector<PauliString> out;
  out.reserve(merged.size());
  for (const auto& [labels, coeff] : merged) {
    if (std::abs(coeff) <= tol) continue;
    out.push_back(PauliString::from_labels(labels, coeff));
  }
  terms = std::move(out);
}

double OperatorSum::one_norm() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coeff);
  return s;
}

bool OperatorSum::is_hermitian(double tol) const {
  // Pauli letter parts are self-inverse Hermitian matrices, so the sum is
  // Hermitian iff merged coefficients are real.
  OperatorSum copy = *this;
  copy.merge_terms(0.0);
  for (const auto& t : copy.terms)
    if (std::abs(t.coeff.imag()) > tol) return false;
  return true;
}

OperatorSum operator+(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out = a;
  out.add(b);
  return out;
}

OperatorSum operator*(cplx factor, const OperatorSum& h) { return h.scaled(factor); }
OperatorSum operator*(double factor, const OperatorSum& h) { return h.scaled(cplx(factor, 0.0)); }

std::string to_lines(const OperatorSum& h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : h.terms)
    out << t.coeff.real() << " " << t.coeff.imag() << " " << t.labels() << "\n";
  return out.str();
}

OperatorSum operator_sum_from_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliString> terms;
  int n = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re, im;
    std::string labels;
    if (!(ls >> re >> im >> labels))
      throw ConfigError("operator line " + std::to_string(line_no) + ": expected 're im LETTERS'");
    if (n < 0)
      n = static_cast<int>(labels.size());
    else if (static_cast<int>(labels.size()) != n)
      throw ConfigError("operator line " + std::to_string(line_no) + ": inconsistent length");
    terms.push_back(PauliString::from_labels(labels, cplx(re, im)));
  }
  if (n < 0) throw ConfigError("operator text: no terms");
  OperatorSum h(n);
  h.terms = std::move(terms);
  return h;
}

OperatorSum operator_sum_from_lines(std::string_view text, int n_qubits) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return OperatorSum(n_qubits);
  OperatorSum h = operator_sum_from_lines(text);
  if (h.n_qubits != n_qubits)
    throw ConfigError("operator text: qubit count " + std::to_string(h.n_qubits) +
                      " does not match expected " + std::to_string(n_qubits));
  return h;
}

}  // namespace gapsim
