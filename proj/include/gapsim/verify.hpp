#pragma once

#include <string>
#include <vector>

#include "gapsim/code.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

struct CheckEntry {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool must_exceed = false;  // negative controls pass by exceeding the threshold
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckEntry> checks;
  bool overall = true;

  void add(std::string name, double measured, double threshold, bool must_exceed = false);
  void merge(const CheckReport& other);
  std::string text() const;
  std::string csv() const;
};

/// Residual |P0 V P0 - c P0| for a single Pauli probe, with c taken as the
/// mean diagonal of the restriction.
double suppression_residual(const CodeLayout& layout, const PauliString& probe);

/// Error-suppression condition for every 1-local X, Y, Z (residual <= 1e-12),
/// plus a weight-2 negative control. Layouts up to 3 blocks.
CheckReport check_error_suppression(const CodeLayout& layout);

/// Smallest Pauli weight violating the suppression condition (2 for this code
/// family); searches weights 1 and 2 exhaustively, returns 3 if none violate.
int code_distance(const CodeLayout& layout);

/// Numeric instantiations of the gadget-coexistence conditions (disjoint
/// blocks, shared blocks on distinct pairs, Z/X on a shared pair, the
/// non-resonance and distinct-|g| parameter conditions) plus negative
/// controls that must show nonzero interference.
CheckReport check_lemma_suite();

/// The constructed code saturates the 2-local commuting bound: distance
/// exactly 2 (all weight-1 suppressed, some weight-2 violator exists).
CheckReport check_nogo_consistency(const CodeLayout& layout);

/// Full battery used by the CLI verify command: suppression, distance and
/// CSS checks over reference layouts, the lemma suite, and the encoding
/// conditions of the four bundled models at two blocks.
CheckReport full_battery();

}  // namespace gapsim
