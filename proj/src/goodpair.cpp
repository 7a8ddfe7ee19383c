#include "rsrepair/goodpair.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsrepair/rng.hpp"

namespace rsrepair {

void SchemeParams::validate() const {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (!(1 <= s && s < d && d <= m)) throw std::invalid_argument("need 1 <= s < d <= m");
  if (!(1 <= r && r <= m)) throw std::invalid_argument("need 1 <= r <= m");
}

GoodnessMatrix build_goodness_matrix(const FieldCtx& f, std::span<const Elt> u_basis, std::span<const Elt> v_basis,
                                     int s, std::span<const Elt> completion) {
  const int m = f.m();
  const int d = static_cast<int>(u_basis.size());
  const int r = static_cast<int>(v_basis.size());
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  if (rank_q(f, u_basis) != d) throw std::invalid_argument("U basis is not independent");
  std::vector<Elt> s_elems = complete_basis(f, v_basis, completion);
  Basis sb(f, s_elems);
  std::vector<int> rows_b2;
  for (int j = r; j < m; ++j) rows_b2.push_back(j);

  const int n = m - r;
  Matrix mat(d * n, m * (s + 1));
  for (int i = 0; i < d; ++i) {
    Elt up = u_basis[i];
    for (int l = 0; l <= s; ++l) {
      const Matrix blk = row_block(f, up, rows_b2, sb);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < m; ++b) mat.at(i * n + a, l * m + b) = blk.at(a, b);
      up = f.frobenius(up, 1);
    }
  }
  return GoodnessMatrix{std::move(mat),
                        m,
                        std::vector<Elt>(u_basis.begin(), u_basis.end()),
                        std::vector<Elt>(s_elems.begin(), s_elems.begin() + r),
                        std::vector<Elt>(s_elems.begin() + r, s_elems.end()),
                        std::move(sb)};
}

GoodnessMatrix build_goodness_matrix(const Subspace& u, const Subspace& v, int s) {
  return build_goodness_matrix(u.field(), u.basis(), v.basis(), s);
}

Certificate certify(const FieldCtx& f, const GoodnessMatrix& g, int s) {
  const int m = f.m();
  Certificate c;
  c.rows = g.m.rows();
  c.rate_ok = static_cast<long long>(m) * s >= static_cast<long long>(c.rows);
  if (c.rows == 0) {
    c.good = true;
    c.weak_ok = true;
    return c;
  }
  c.rank_m2 = rank(f, g.m2());
  c.rank_m2_m1 = rank(f, g.m);
  c.good = c.rate_ok && c.rank_m2 == c.rows;
  c.weak_ok = c.rank_m2 == c.rank_m2_m1;
  return c;
}

Certificate certify(const Subspace& u, const Subspace& v, int s) {
  return certify(u.field(), build_goodness_matrix(u, v, s), s);
}

bool is_good(const Subspace& u, const Subspace& v, int s) { return certify(u, v, s).good; }

bool is_weakly_good(const Subspace& u, const Subspace& v, int s) { return certify(u, v, s).weak_ok; }

GoodPair make_pair(const Subspace& u, const Subspace& v, int s) {
  SchemeParams p{u.field().q(), u.field().m(), u.dim(), s, v.dim()};
  return GoodPair{u, v, p, certify(u, v, s)};
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::ok_q3:
      return "ok_q3";
    case Feasibility::ok_q2_slack:
      return "ok_q2_slack";
    case Feasibility::ok_q2_subfield:
      return "ok_q2_subfield";
    case Feasibility::infeasible:
      return "infeasible";
  }
  return "?";
}

double goodness_bound(const SchemeParams& p, int a) {
  if (p.r == p.m) return 1.0;
  const double q = static_cast<double>(p.q);
  const double excess = static_cast<double>(p.d) * (p.m - p.r) - static_cast<double>(p.m) * p.s;
  return 1.0 - std::pow(q, excess) / (std::pow(q, a) - 1.0) * (q - 1.0) / (q - 1.0 - std::pow(q, -p.r));
}

FeasibilityReport feasible(const SchemeParams& p, int a) {
  p.validate();
  FeasibilityReport rep;
  const bool a_ok = a >= 1 && p.m % a == 0 && p.d % a == 0;
  rep.a = a_ok ? a : 1;
  rep.degenerate = p.r == p.m;
  const long long ms = static_cast<long long>(p.m) * p.s;
  const long long dn = static_cast<long long>(p.d) * (p.m - p.r);

  if (ms < dn) {
    rep.detail = "rate condition ms >= d(m-r) fails";
  } else if (p.q >= 3) {
    rep.cls = Feasibility::ok_q3;
    rep.detail = "q >= 3 and ms >= d(m-r)";
  } else if (p.r >= 2 && ms >= dn + 1) {
    rep.cls = Feasibility::ok_q2_slack;
    rep.detail = "q = 2, r >= 2 and ms >= d(m-r) + 1";
  } else if (ms == dn && a_ok && a >= 2) {
    rep.cls = Feasibility::ok_q2_subfield;
    rep.detail = "q = 2, ms = d(m-r) and U is linear over F_{q^" + std::to_string(a) + "}";
  } else if (ms == dn && std::gcd(p.m, p.d) == 1) {
    rep.detail = "q = 2 and ms = d(m-r) with gcd(m, d) = 1; no subfield structure is possible";
  } else if (ms == dn) {
    rep.detail = "q = 2 and ms = d(m-r) need U linear over F_{q^a} for a common factor a >= 2 of m and d";
  } else {
    rep.detail = "q = 2 with r = 1 is not covered";
  }
  rep.bound = goodness_bound(p, rep.a);
  if (rep.degenerate) rep.detail += " (r = m: every pair is trivially good)";
  return rep;
}

Subspace sample_v(FieldPtr f, int r, std::uint64_t seed) {
  const int n = f->m() - r;
  if (n == 0) return Subspace::whole(f);
  Rng rng(seed);
  const auto vp = sample_omega(*f, n, rng);
  return orthogonal_complement(Subspace::span(f, vp));
}

SearchResult search_good_pair(const Subspace& u, int s, int r, int trials, std::uint64_t seed) {
  const FieldCtx& f = u.field();
  SchemeParams p{f.q(), f.m(), u.dim(), s, r};
  SearchResult res;
  res.feasibility = feasible(p, u.subfield_degree().value_or(1));
  if (res.feasibility.cls == Feasibility::infeasible) throw std::invalid_argument(res.feasibility.detail);
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  for (int t = 0; t < trials; ++t) {
    ++res.trials_run;
    Subspace v = sample_v(u.field_ptr(), r, derive_seed(seed, static_cast<std::uint64_t>(t)));
    GoodPair pair = make_pair(u, v, s);
    if (pair.certificate.good) {
      res.success_trial = t;
      res.pair = std::move(pair);
      break;
    }
  }
  return res;
}

GoodPair duality_transform(const GoodPair& pair) {
  if (!pair.certificate.good) throw std::invalid_argument("duality transform needs a good pair");
  const int s = pair.params.s;
  Subspace u2 = orthogonal_complement(pair.v);
  Subspace v2 = orthogonal_complement(frobenius_image(pair.u, s + 1));
  return make_pair(u2, v2, s);
}

GoodPair explicit_pair(FieldPtr f, int d, int r, int s) {
  const int m = f->m();
  if (r >= m || r < 1) throw std::invalid_argument("need 1 <= r < m");
  if (m % (m - r) != 0) throw std::invalid_argument("m - r must divide m");
  if (d >= m || d < 1) throw std::invalid_argument("need 1 <= d < m");
  if (static_cast<long long>(m) * s < static_cast<long long>(d) * (m - r)) throw std::invalid_argument("rate condition fails");
  std::vector<Elt> gens(d);
  Elt x = f->one();
  for (int i = 0; i < d; ++i) {
    gens[i] = x;
    x = f->mul(x, f->alpha());
  }
  Subspace u = Subspace::span(f, gens);
  Subspace v = orthogonal_complement(subfield(f, m - r));
  return make_pair(u, v, s);
}

Counterexample counterexample_pair(const Subspace& u, int r, int s) {
  const FieldCtx& f = u.field();
  const int m = f.m();
  const int d = u.dim();
  if (!(1 <= s && s < d && d < m)) throw std::invalid_argument("need 1 <= s < d < m");
  if (!(r >= 1 && r < m - s)) throw std::invalid_argument("need 1 <= r < m - s");
  const int n = m - r;
  const int tau = std::min(d, n);
  std::vector<Elt> w(u.basis().begin(), u.basis().begin() + tau);
  const auto ker = right_kernel(f, t_matrix(f, w, tau - 1));
  if (ker.empty()) throw std::logic_error("T(w; tau-1) has a trivial kernel");
  std::vector<Elt> bp = ker.front();
  if (rank_q(f, bp) != tau) throw std::logic_error("kernel vector entries are F_q-dependent");
  bp = complete_basis(f, bp);
  bp.resize(n);
  w.resize(n, f.zero());
  Elt acc = f.zero();
  for (int j = 0; j < n; ++j) acc = f.add(acc, f.mul(w[j], bp[j]));
  if (acc.is_zero()) throw std::logic_error("counterexample witness sum vanished");
  Subspace v = orthogonal_complement(Subspace::span(u.field_ptr(), bp));
  return Counterexample{std::move(v), std::move(w), std::move(bp), tau};
}

}  // namespace rsrepair
