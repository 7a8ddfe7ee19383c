#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rsrepair/goodpair.hpp"

namespace rsrepair {

namespace {

using CodeVec = std::vector<std::uint64_t>;

CodeVec codes(std::span<const Elt> v) {
  CodeVec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].code;
  return c;
}

// Adds every kernel vector of T(u; s) with F_q-independent entries to `out`.
void collect_bad(const FieldCtx& f, std::span<const Elt> u, int s, std::set<CodeVec>& out, std::uint64_t& tests,
                 std::uint64_t guard) {
  const int n = static_cast<int>(u.size());
  const auto ker = right_kernel(f, t_matrix(f, u, s));
  const int k = static_cast<int>(ker.size());
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > guard / f.size()) throw std::length_error("bad-set enumeration exceeds the guard");
    total *= f.size();
  }
  if (tests + total > guard) throw std::length_error("bad-set enumeration exceeds the guard");
  tests += total;
  std::vector<Elt> x(n);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::fill(x.begin(), x.end(), f.zero());
    std::uint64_t v = t;
    for (int i = 0; i < k; ++i) {
      const Elt c{v % f.size()};
      v /= f.size();
      if (c.is_zero()) continue;
      for (int j = 0; j < n; ++j) x[j] = f.add(x[j], f.mul(c, ker[i][j]));
    }
    if (rank_q(f, x) == n) out.insert(codes(x));
  }
}

}  // namespace

int bad_u_kernel_dim(const FieldCtx& f, std::span<const Elt> u, int s) {
  if (std::all_of(u.begin(), u.end(), [](Elt e) { return e.is_zero(); })) {
    throw std::invalid_argument("u must be nonzero");
  }
  return static_cast<int>(u.size()) - rank(f, t_matrix(f, u, s));
}

std::vector<std::vector<Elt>> bad_of(const FieldCtx& f, std::span<const Elt> u, int s, std::uint64_t guard) {
  std::set<CodeVec> found;
  std::uint64_t tests = 0;
  collect_bad(f, u, s, found, tests, guard);
  std::vector<std::vector<Elt>> out;
  for (const auto& c : found) {
    std::vector<Elt> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = Elt{c[i]};
    out.push_back(std::move(v));
  }
  return out;
}

BadSetResult bad_set(const Subspace& u, int s, int r, std::size_t max_witnesses, std::uint64_t guard) {
  const FieldCtx& f = u.field();
  const int m = f.m();
  const int n = m - r;
  if (s < 1 || r < 1 || r > m) throw std::invalid_argument("bad_set: need s >= 1 and 1 <= r <= m");
  BadSetResult res;
  res.a = u.subfield_degree().value_or(1);
  const double q = static_cast<double>(f.q());
  res.upper_bound = std::pow(q, static_cast<double>(u.dim()) * n - static_cast<double>(m) * s) *
                    std::pow(q, static_cast<double>(m) * n) / (std::pow(q, res.a) - 1.0);
  res.omega_size = 1;
  for (int j = 0; j < n; ++j) res.omega_size *= f.size() - f.qpow(j);
  if (n == 0) return res;

  const std::vector<Elt> elems = u.enumerate();
  std::uint64_t tuples = 1;
  for (int i = 0; i < n; ++i) {
    if (tuples > guard / elems.size()) throw std::length_error("bad-set enumeration exceeds the guard");
    tuples *= elems.size();
  }
  std::vector<Elt> scalars;
  for (Elt b : subfield(u.field_ptr(), res.a).enumerate()) {
    if (b.code > 1) scalars.push_back(b);
  }

  std::set<CodeVec> found;
  std::vector<Elt> vec(n), scaled(n);
  for (std::uint64_t t = 1; t < tuples; ++t) {
    std::uint64_t v = t;
    for (int i = 0; i < n; ++i) {
      vec[i] = elems[v % elems.size()];
      v /= elems.size();
    }
    // Keep one representative per F_{q^a}^* scaling class: the smallest by codes.
    bool minimal = true;
    for (Elt beta : scalars) {
      for (int i = 0; i < n; ++i) scaled[i] = f.mul(beta, vec[i]);
      if (codes(scaled) < codes(vec)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    collect_bad(f, vec, s, found, res.kernel_tests, guard);
  }
  res.count = found.size();
  for (const auto& c : found) {
    if (res.witnesses.size() >= max_witnesses) break;
    std::vector<Elt> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = Elt{c[i]};
    res.witnesses.push_back(std::move(w));
  }
  return res;
}

}  // namespace rsrepair
