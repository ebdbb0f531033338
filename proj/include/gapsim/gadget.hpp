#pragma once

#include <Eigen/Sparse>
#include <string>
#include <utility>
#include <vector>

#include "gapsim/bell.hpp"
#include "gapsim/code.hpp"
#include "gapsim/pauli.hpp"

namespace gapsim {

/// A cross-block perturbative gadget: 2-local physical terms whose
/// second-order effect realizes a cross-block logical interaction, plus the
/// inner-block correction canceling the single-site byproducts.
struct Gadget {
  OperatorSum physical;             // cross-block 2-local terms (scaled by sqrt(lambda) later)
  OperatorSum target_logical;       // intended interaction, on the 2n logical sites
  OperatorSum residual_correction;  // inner-block physical terms canceling byproducts
  std::pair<int, int> blocks_touched{-1, -1};
};

/// J * Zbar_2^(a) Zbar_1^(b) via alpha Z2^(a) X3^(b) + beta Z4^(a) X3^(b).
Gadget make_zz_gadget(int a, int b, double coupling, const CodeLayout& layout);

/// J * Xbar_2^(a) Xbar_1^(b) via alpha Z2^(a) X1^(b) + beta Z2^(a) X3^(b).
Gadget make_xx_gadget(int a, int b, double coupling, const CodeLayout& layout);

/// Jz Zbar_2^(a) Zbar_1^(b) + Jx Xbar_2^(a) Xbar_1^(b) via the three-term form
/// alpha Z2^(a) X3^(b) + beta Z4^(a) X3^(b) + gamma Z2^(a) X1^(b).
Gadget make_xy_gadget(int a, int b, double coupling_z, double coupling_x,
                      const CodeLayout& layout);

struct EffectiveResult {
  Eigen::SparseMatrix<cplx> h_eff_zero;  // -P0 G R0 G P0 on the S0 labels
  std::vector<BellFrame::Label> zero_labels;
  double criterion1_norm = 0.0;  // |P0 G P0|
  double leakage = 0.0;          // |(P0 - P_enc) H_eff P_enc|
};

/// Second-order effective Hamiltonian of g in S0, with the leakage into the
/// complement of S_enc reported. Throws GadgetError if |P0 g P0| > 1e-10.
EffectiveResult effective_hamiltonian(const OperatorSum& g, const CodeLayout& layout);

/// |P0 A R0 B P0 + P0 B R0 A P0| (spectral norm on S0).
double interference(const OperatorSum& a, const OperatorSum& b, const CodeLayout& layout);

/// One-sided |P0 A R0 B P0|; the stronger quantity the parameter-constrained
/// coexistence conditions control.
double cross_term_norm(const OperatorSum& a, const OperatorSum& b, const CodeLayout& layout);

/// Block-level interaction graph: vertices are blocks, edges carry the
/// desired cross-block coupling kind.
struct InteractionGraph {
  enum class Coupling { ZZ, XX, XY };
  struct Edge {
    int a, b;
    Coupling kind = Coupling::ZZ;
    double strength = 1.0;
  };
  int n_vertices = 0;
  std::vector<Edge> edges;
};

/// Color the conflict graph (edges plus common-neighbor pairs) greedily and
/// assign gx = 2^(2C), gz = 2^(2C+1); adjacent conflict-graph vertices then
/// have four distinct absolute parameter values.
std::vector<BlockParams> assign_block_colors(const InteractionGraph& graph);

/// Structured text report: physical terms, closed-form logical target,
/// residuals, and the numeric criterion norms.
std::string gadget_report(const Gadget& gadget, const CodeLayout& layout);

}  // namespace gapsim
