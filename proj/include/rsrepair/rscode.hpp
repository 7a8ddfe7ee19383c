#pragma once

// Reed-Solomon and generalized Reed-Solomon codes over F_{q^m}.

#include <span>
#include <vector>

#include "rsrepair/gfield.hpp"
#include "rsrepair/subspace.hpp"

namespace rsrepair {

class Rng;

// GRS(A, k, v) = {(v_1 f(a_1), ..., v_n f(a_n)) : deg f < k}.  An empty
// scaling vector means v = (1, ..., 1), i.e. plain RS(A, k).
struct RsCode {
  FieldPtr field;
  std::vector<Elt> eval_set;
  int k = 0;
  std::vector<Elt> scaling;

  int n() const { return static_cast<int>(eval_set.size()); }
  Elt v(int i) const { return scaling.empty() ? Elt{1} : scaling[i]; }
  // Throws on repeated points, zero scaling entries or k out of range.
  void validate() const;
  int index_of(Elt a) const;  // -1 if absent
};

RsCode make_code(FieldPtr f, std::vector<Elt> eval_set, int k, std::vector<Elt> scaling = {});
// C(U, s) = RS(U, q^d - q^s), evaluated in enumeration order of U.
RsCode subspace_code(const Subspace& u, int s);

std::vector<Elt> encode(const RsCode& code, std::span<const Elt> message);
std::vector<Elt> random_codeword(const RsCode& code, Rng& rng);

// v'_i = 1 / (v_i prod_{j != i} (a_i - a_j)); the dual of GRS(A, k, v) is GRS(A, n-k, v').
std::vector<Elt> dual_scaling(const RsCode& code);
RsCode dual_code(const RsCode& code);

// <c, x> = 0 for the k codewords v * (a^t), t < k.
bool is_dual_codeword(const RsCode& code, std::span<const Elt> x);

// Keeps codewords vanishing on `remove` and deletes those positions:
// [n, k] -> [n - t, k - t], a GRS code on the remaining points.
RsCode shorten(const RsCode& code, std::span<const int> remove);
// The last t positions (largest in enumeration order).
std::vector<int> default_shortening(const RsCode& code, int t);

// f(a_i) recovered from k other coordinates by Lagrange interpolation; the
// value returned is the codeword entry v_i f(a_i).
Elt interpolate_at(const RsCode& code, std::span<const Elt> codeword, int node, std::span<const int> helpers);

}  // namespace rsrepair
