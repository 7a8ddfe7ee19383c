#include "rsrepair/rscode.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "rsrepair/rng.hpp"

namespace rsrepair {

void RsCode::validate() const {
  if (!field) throw std::invalid_argument("code has no field");
  const int len = n();
  if (len < 1) throw std::invalid_argument("empty evaluation set");
  if (k < 1 || k > len) throw std::invalid_argument("need 1 <= k <= n");
  std::unordered_set<Elt, EltHash> seen;
  for (Elt a : eval_set) {
    if (!field->valid(a)) throw std::invalid_argument("evaluation point outside the field");
    if (!seen.insert(a).second) throw std::invalid_argument("evaluation points must be distinct");
  }
  if (!scaling.empty()) {
    if (static_cast<int>(scaling.size()) != len) throw std::invalid_argument("scaling length differs from n");
    for (Elt v : scaling) {
      if (v.is_zero() || !field->valid(v)) throw std::invalid_argument("scaling entries must be nonzero field elements");
    }
  }
}

int RsCode::index_of(Elt a) const {
  const auto it = std::find(eval_set.begin(), eval_set.end(), a);
  return it == eval_set.end() ? -1 : static_cast<int>(it - eval_set.begin());
}

RsCode make_code(FieldPtr f, std::vector<Elt> eval_set, int k, std::vector<Elt> scaling) {
  RsCode c{std::move(f), std::move(eval_set), k, std::move(scaling)};
  c.validate();
  return c;
}

RsCode subspace_code(const Subspace& u, int s) {
  if (s < 0 || s >= u.dim()) throw std::invalid_argument("need 0 <= s < dim U");
  const auto pts = u.enumerate();
  const std::uint64_t n = pts.size();
  const std::uint64_t red = u.field().qpow(s);
  return make_code(u.field_ptr(), pts, static_cast<int>(n - red));
}

std::vector<Elt> encode(const RsCode& code, std::span<const Elt> message) {
  const FieldCtx& f = *code.field;
  if (static_cast<int>(message.size()) > code.k) throw std::invalid_argument("message degree must be below k");
  std::vector<Elt> out(code.n());
  for (int i = 0; i < code.n(); ++i) {
    Elt acc = f.zero();
    for (auto it = message.rbegin(); it != message.rend(); ++it) acc = f.add(f.mul(acc, code.eval_set[i]), *it);
    out[i] = f.mul(acc, code.v(i));
  }
  return out;
}

std::vector<Elt> random_codeword(const RsCode& code, Rng& rng) {
  std::vector<Elt> msg(code.k);
  for (auto& c : msg) c = code.field->random(rng);
  return encode(code, msg);
}

std::vector<Elt> dual_scaling(const RsCode& code) {
  const FieldCtx& f = *code.field;
  if (code.n() < 2) throw std::invalid_argument("dual scaling needs n >= 2");
  std::vector<Elt> out(code.n());
  for (int i = 0; i < code.n(); ++i) {
    Elt prod = code.v(i);
    for (int j = 0; j < code.n(); ++j) {
      if (j != i) prod = f.mul(prod, f.sub(code.eval_set[i], code.eval_set[j]));
    }
    out[i] = f.inv(prod);
  }
  return out;
}

RsCode dual_code(const RsCode& code) {
  if (code.k == code.n()) throw std::invalid_argument("the dual of the full space is zero");
  return make_code(code.field, code.eval_set, code.n() - code.k, dual_scaling(code));
}

bool is_dual_codeword(const RsCode& code, std::span<const Elt> x) {
  const FieldCtx& f = *code.field;
  if (static_cast<int>(x.size()) != code.n()) throw std::invalid_argument("length mismatch");
  // Accumulate sum_i v_i x_i a_i^t for t = 0..k-1.
  std::vector<Elt> w(code.n());
  for (int i = 0; i < code.n(); ++i) w[i] = f.mul(code.v(i), x[i]);
  for (int t = 0; t < code.k; ++t) {
    Elt acc = f.zero();
    for (int i = 0; i < code.n(); ++i) {
      acc = f.add(acc, w[i]);
      w[i] = f.mul(w[i], code.eval_set[i]);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

RsCode shorten(const RsCode& code, std::span<const int> remove) {
  const FieldCtx& f = *code.field;
  const int t = static_cast<int>(remove.size());
  if (t >= code.k) throw std::invalid_argument("cannot shorten by k or more positions");
  std::vector<bool> drop(code.n(), false);
  for (int i : remove) {
    if (i < 0 || i >= code.n() || drop[i]) throw std::invalid_argument("invalid shortening position");
    drop[i] = true;
  }
  std::vector<Elt> pts, scale;
  for (int i = 0; i < code.n(); ++i) {
    if (drop[i]) continue;
    Elt v = code.v(i);
    for (int j : remove) v = f.mul(v, f.sub(code.eval_set[i], code.eval_set[j]));
    pts.push_back(code.eval_set[i]);
    scale.push_back(v);
  }
  return make_code(code.field, std::move(pts), code.k - t, std::move(scale));
}

std::vector<int> default_shortening(const RsCode& code, int t) {
  if (t < 0 || t > code.n()) throw std::invalid_argument("invalid shortening count");
  std::vector<int> out;
  for (int i = code.n() - t; i < code.n(); ++i) out.push_back(i);
  return out;
}

Elt interpolate_at(const RsCode& code, std::span<const Elt> codeword, int node, std::span<const int> helpers) {
  const FieldCtx& f = *code.field;
  if (static_cast<int>(helpers.size()) < code.k) throw std::invalid_argument("need k helpers");
  const Elt ai = code.eval_set[node];
  Elt acc = f.zero();
  for (int h = 0; h < code.k; ++h) {
    const int u = helpers[h];
    if (u == node) throw std::invalid_argument("helper equals the erased node");
    Elt num = f.one(), den = f.one();
    for (int l = 0; l < code.k; ++l) {
      if (l == h) continue;
      num = f.mul(num, f.sub(ai, code.eval_set[helpers[l]]));
      den = f.mul(den, f.sub(code.eval_set[u], code.eval_set[helpers[l]]));
    }
    const Elt fu = f.div(codeword[u], code.v(u));
    acc = f.add(acc, f.mul(fu, f.div(num, den)));
  }
  return f.mul(acc, code.v(node));
}

}  // namespace rsrepair
