#pragma once

// Linear repair schemes built from m dual codewords per node, their
// verification, and execution with per-helper symbol accounting.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsrepair/goodpair.hpp"
#include "rsrepair/linearized.hpp"
#include "rsrepair/rscode.hpp"

namespace rsrepair {

// What helper `index` sends: tr(gamma[t] * c_index) for each t, padded with
// zeros to r symbols.  x_{j,index} = sum_t lambda[j][t] gamma[t].
struct HelperQuery {
  int index = 0;
  std::vector<Elt> gamma;
  std::vector<std::vector<std::uint32_t>> lambda;  // m rows, gamma.size() columns
};

struct NodeRepair {
  int node = 0;
  std::vector<std::vector<Elt>> x;  // x[j][u]: m dual codewords of length n
  std::vector<HelperQuery> helpers;
  std::vector<Elt> recon_dual;  // trace-dual basis of {x[j][node]}_j
};

struct RepairScheme {
  RsCode code;
  int r = 0;
  std::string construction;
  std::vector<NodeRepair> nodes;  // nodes[i].node == i

  const NodeRepair& for_node(int i) const;
};

// Derives the helper queries and reconstruction basis from the dual codewords.
// Throws if {x[j][node]} is not a basis of F_{q^m} over F_q.
NodeRepair node_from_dual_codewords(const FieldCtx& f, int node, std::vector<std::vector<Elt>> x);

// Dual codewords x_{j,a} = v'_a P_j(a - a_i)/(a - a_i), x_{j,a_i} = v'_{a_i} P_j'(0),
// for linearized P_j of q-degree <= s with q^s <= n - k; v' is the dual scaling.
std::vector<std::vector<Elt>> family_dual_codewords(const RsCode& code, int node, std::span<const LinPoly> family);
RepairScheme scheme_from_family(const RsCode& code, int r, std::string construction, std::span<const LinPoly> family);

struct PairScheme {
  RepairScheme scheme;
  std::vector<LinPoly> f;  // f_j(X) = b_j X + sum_l a_{j,l} X^{q^l}, mapping U into V
};

// Needs (U, V) weakly good.  The code is C(U, s) and r = dim V.
PairScheme scheme_from_pair(const GoodPair& pair);

// Re-indexes the scheme of node 0 of C(U, s) by the translation u -> u + u_star.
NodeRepair translate_node(const RsCode& code, const NodeRepair& node0, Elt u_star);

// Subspace-polynomial scheme over arbitrary points: P_j(X) = L_W(beta_j X) with
// W spanned by the first s polynomial-basis vectors.  Needs n - k = q^s.
RepairScheme dm_scheme(const RsCode& code, int s);

// Keeps only the surviving positions of every node scheme.
RepairScheme shorten_scheme(const RepairScheme& scheme, const RsCode& shortened, std::span<const int> removed);

// Moves a scheme to the same points with scaling v_new: x_u -> x_u v_old_u / v_new_u.
RepairScheme grs_rescale_scheme(const RepairScheme& scheme, std::vector<Elt> v_new);

struct VerifyReport {
  bool ok = true;
  int node = -1;
  int helper = -1;
  std::string violation;
};

// Dual membership, helper ranks <= r, failed-node rank m, and consistency of
// the stored queries and reconstruction basis.
VerifyReport verify_gw(const RepairScheme& scheme);

struct HelperMessage {
  int index = 0;
  std::vector<std::uint32_t> symbols;  // r entries of F_q
  int rank = 0;
};

struct RepairTranscript {
  int node = 0;
  std::vector<HelperMessage> helpers;
  Elt value;
  std::uint64_t symbols_sent = 0;
  double bits = 0.0;
};

// Codeword entries at `node` are ignored.
RepairTranscript execute_repair(const RepairScheme& scheme, std::span<const Elt> codeword, int node);

// Download k full nodes and interpolate.
double naive_bandwidth(const RsCode& code);
RepairTranscript naive_repair(const RsCode& code, std::span<const Elt> codeword, int node);

}  // namespace rsrepair
