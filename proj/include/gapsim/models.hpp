#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapsim/code.hpp"
#include "gapsim/gadget.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

enum class ModelKind { TFI1D, XY1D, TFI2D, Compass2D };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

enum class ParamPolicy { Paper, Coloring, Explicit };

/// Target-model description. 1D kinds use cols as the chain length (rows=1).
/// Scalar couplings broadcast; per-bond/per-site vectors override them.
struct ModelSpec {
  ModelKind kind = ModelKind::TFI1D;
  int rows = 1;
  int cols = 0;

  double coupling = 1.0;                // J for 1D kinds
  std::vector<double> bond_couplings;   // optional per-bond J_k (1D)
  double coupling_vertical = 1.0;       // J1 (TFI2D) / J_Z (compass)
  double coupling_horizontal = 1.0;     // J2 (TFI2D) / J_X (compass)
  double field_z = 0.0;
  double field_x = 0.0;
  std::vector<double> field_z_per_site;  // optional per-site overrides
  std::vector<double> field_x_per_site;

  ParamPolicy params = ParamPolicy::Paper;
  std::vector<BlockParams> explicit_params;
  bool periodic = false;

  int n_sites() const { return rows * cols; }
  bool is_1d() const { return kind == ModelKind::TFI1D || kind == ModelKind::XY1D; }
};

/// Everything run_simulation needs: code layout, logical target, the two
/// encoding pieces (residual corrections already merged into h_enc1), and
/// the per-bond gadgets for reporting.
struct EncodedSystem {
  ModelSpec spec;
  CodeLayout layout;
  OperatorSum h_tar_logical;  // on the 2n logical sites
  OperatorSum h_enc1;         // inner-block physical terms incl. residuals
  OperatorSum h_enc2;         // gadget physical terms (sqrt(lambda) applied later)
  std::vector<Gadget> gadgets;
  double penalty_scale = 1.0;  // multiplies H_pen so its gap is >= 1
};

EncodedSystem encode(const ModelSpec& spec);

/// Residual norms of the four encoding conditions; pass iff each <= tol.
struct EncodingReport {
  double c1_norm = 0.0;          // |P0 H2 P0|
  double target_mismatch = 0.0;  // |Penc (H1 + Heff2) Penc - Htar|
  double h1_leakage = 0.0;       // |(P0 - Penc) H1 Penc|
  double eff2_leakage = 0.0;     // |(P0 - Penc) Heff2 Penc|
  double tol = 1e-9;
  bool pass = false;
};

EncodingReport verify_encoding(const EncodedSystem& sys, double tol = 1e-9);

/// Rewrite an operator on logical sites as an operator on 2n "label qubits"
/// ordered block-major (slot-0 basis = Zbar eigenstates, slot-1 = Xbar
/// eigenstates), so its matrix matches the encoding_basis codeword ordering.
OperatorSum logical_zx_rotation(const OperatorSum& logical, const CodeLayout& layout);

Eigen::MatrixXcd logical_matrix_zx(const OperatorSum& logical, const CodeLayout& layout);

}  // namespace gapsim
