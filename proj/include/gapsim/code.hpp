#pragma once

#include <utility>
#include <vector>

#include "gapsim/operator_matrix.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

/// Penalty couplings of one code block. Constraint: both nonzero, |gx| != |gz|.
struct BlockParams {
  double gx = 0.0;
  double gz = 0.0;
};

bool block_params_valid(const BlockParams& p);

/// Block structure of the code: n blocks of 4 physical qubits hosting 2n
/// logical sites. Block b owns physical qubits 4b..4b+3 (0-based) grouped
/// into Bell pairs (4b,4b+1) and (4b+2,4b+3); slot 0/1 names the first and
/// second logical qubit of a block.
struct CodeLayout {
  std::vector<BlockParams> blocks;
  std::vector<std::pair<int, int>> logical_map;  // logical site -> (block, slot)

  int n_blocks() const { return static_cast<int>(blocks.size()); }
  int n_logical() const { return 2 * n_blocks(); }
  int n_physical() const { return 4 * n_blocks(); }
  int n_pairs() const { return 2 * n_blocks(); }

  /// Logical site hosted at (block, slot); throws if unassigned.
  int site_at(int block, int slot) const;

  void validate() const;

  /// n identical blocks with the identity site assignment (site 2b+slot).
  static CodeLayout uniform(int n_blocks, BlockParams params);
  /// Per-block parameters with the identity site assignment.
  static CodeLayout with_params(std::vector<BlockParams> params);
};

/// Bell-pair eigenvalue labels (s, t) in {-1,+1}^2 for each of the 2n pairs.
struct BellConfig {
  std::vector<std::pair<int, int>> labels;
};

/// Orthonormal column vectors spanning a subspace of the 2^n space.
struct SubspaceBasis {
  Eigen::MatrixXcd vectors;  // one column per basis state

  int dimension() const { return static_cast<int>(vectors.cols()); }
};

/// Sum over blocks of gx (X1X2 + X3X4) + gz (Z1Z2 + Z3Z4); all terms commute.
OperatorSum penalty_hamiltonian(const CodeLayout& layout);

/// Analytic eigenvalue of the Bell-product state: sum of s*gz + t*gx per pair.
double bell_energy(const BellConfig& config, const CodeLayout& layout);

/// Smallest nonzero |bell_energy| over all label configurations.
double penalty_gap(const CodeLayout& layout);

/// Orthonormal basis of all Bell-product states with zero analytic energy,
/// ordered by label index. Materializes dense vectors; gated by dense_limit.
SubspaceBasis zero_space_basis(const CodeLayout& layout, int dense_limit = 12);

/// The 4^n codewords: per block the states phi_{s,t} (x) phi_{-s,-t}, ordered
/// block-major with (s,t) = (+,+), (+,-), (-,+), (-,-).
SubspaceBasis encoding_basis(const CodeLayout& layout, int dense_limit = 12);

/// Translate a slot-local logical operator (2-qubit PauliString on the slots
/// of one block) to its physical 2-local string. Supported logical letter
/// patterns: ZI, IZ, ZZ, XI, IX, XX; anything else throws.
PauliString logical_to_physical(const PauliString& op, int block, const CodeLayout& layout);

/// B^dagger h B where B stacks the basis columns.
OperatorMatrix project(const OperatorMatrix& h, const SubspaceBasis& basis);

/// R0 v: expand in the Bell-product basis, divide nonzero-energy components
/// by their energy, zero the S0 components.
StateVector penalty_pseudoinverse_apply(const CodeLayout& layout, const StateVector& v);

/// Blockwise check that X1X2X3X4 and Z1Z2Z3Z4 act as -1 on the given basis.
bool css_check_on_basis(const SubspaceBasis& basis, const CodeLayout& layout, double tol = 1e-10);

/// css_check_on_basis applied to the encoding basis.
bool css_equivalence_check(const CodeLayout& layout);

}  // namespace gapsim
