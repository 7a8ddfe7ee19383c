#include <set>

#include "doctest.h"
#include "rsrepair/basis.hpp"
#include "rsrepair/goodpair.hpp"
#include "rsrepair/linalg.hpp"
#include "rsrepair/linearized.hpp"
#include "rsrepair/rng.hpp"
#include "test_util.hpp"

using namespace rsrepair;
using rsrepair::testing::brute_rank;

namespace {

// Weak goodness straight from its meaning: for every a_0 there are a_1..a_s with
// a_0 X + a_1 X^q + ... + a_s X^{q^s} mapping U into V.
bool weakly_good_oracle(const Subspace& u, const Subspace& v, int s) {
  const FieldCtx& f = u.field();
  std::uint64_t tuples = 1;
  for (int i = 0; i < s; ++i) tuples *= f.size();
  for (std::uint64_t a0 = 0; a0 < f.size(); ++a0) {
    bool found = false;
    for (std::uint64_t t = 0; t < tuples && !found; ++t) {
      bool maps = true;
      for (Elt b : u.basis()) {
        Elt y = f.mul(Elt{a0}, b);
        std::uint64_t rest = t;
        for (int l = 1; l <= s; ++l) {
          y = f.add(y, f.mul(Elt{rest % f.size()}, f.frobenius(b, l)));
          rest /= f.size();
        }
        if (!v.contains(y)) {
          maps = false;
          break;
        }
      }
      found = maps;
    }
    if (!found) return false;
  }
  return true;
}

// x in Bad(U): some nonzero (u_1..u_n) in U^n has sum_j u_j^{q^t} x_j = 0 for t = 1..s.
bool in_bad_oracle(const Subspace& u, const std::vector<Elt>& x, int s) {
  const FieldCtx& f = u.field();
  const auto elems = u.enumerate();
  const int n = static_cast<int>(x.size());
  std::uint64_t total = 1;
  for (int j = 0; j < n; ++j) total *= elems.size();
  for (std::uint64_t t = 1; t < total; ++t) {
    bool zero = true;
    for (int row = 1; row <= s && zero; ++row) {
      Elt acc = f.zero();
      std::uint64_t rest = t;
      for (int j = 0; j < n; ++j) {
        acc = f.add(acc, f.mul(f.frobenius(elems[rest % elems.size()], row), x[j]));
        rest /= elems.size();
      }
      zero = acc.is_zero();
    }
    if (zero) return true;
  }
  return false;
}

std::vector<std::vector<Elt>> all_omega(const FieldCtx& f, int n) {
  std::vector<std::vector<Elt>> out;
  std::uint64_t total = 1;
  for (int j = 0; j < n; ++j) total *= f.size();
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<Elt> x(n);
    std::uint64_t rest = t;
    for (auto& e : x) {
      e = Elt{rest % f.size()};
      rest /= f.size();
    }
    if (brute_rank(f, x) == n) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("goodness matrix shape") {
  auto f = FieldCtx::make(2, 1, 8);
  Rng rng(1);
  const Subspace u = random_subspace(f, 4, rng);
  const Subspace v = random_subspace(f, 4, rng);
  const GoodnessMatrix g = build_goodness_matrix(u, v, 2);
  CHECK(g.m.rows() == 16);
  CHECK(g.m.cols() == 24);
  CHECK(g.m1().cols() == 8);
  CHECK(g.m2().cols() == 16);
  for (int i = 0; i < g.m.rows(); ++i)
    for (int j = 0; j < g.m.cols(); ++j) CHECK(f->is_scalar(g.m.at(i, j)));
}

TEST_CASE("M1 for U = span(1) selects the complement rows of the identity") {
  auto f = FieldCtx::make(2, 1, 4);
  const Subspace v = Subspace::span(f, std::vector<Elt>{f->one(), f->gen()});
  const std::vector<Elt> u{f->one()};
  const GoodnessMatrix g = build_goodness_matrix(*f, u, v.basis(), 1);
  const std::vector<int> rows{2, 3};
  CHECK(g.m1() == row_block(*f, f->one(), rows, g.s_basis));
  const Matrix m1 = g.m1();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) CHECK(m1.at(i, j) == (j == i + 2 ? f->one() : f->zero()));
}

TEST_CASE("r = m gives an empty, vacuously good matrix") {
  auto f = FieldCtx::make(2, 1, 4);
  Rng rng(2);
  const Subspace u = random_subspace(f, 2, rng);
  const Certificate c = certify(u, Subspace::whole(f), 1);
  CHECK(c.rows == 0);
  CHECK(c.good);
  CHECK(c.weak_ok);
}

TEST_CASE("goodness checks agree with brute-force oracles over GF(16)") {
  auto f = FieldCtx::make(2, 1, 4);
  Rng rng(3);
  int goods = 0, weaks = 0, checked = 0;
  for (int d : {2, 3}) {
    for (int s = 1; s < d; ++s) {
      for (int r = 1; r <= 3; ++r) {
        for (int t = 0; t < 12; ++t) {
          const Subspace u = random_subspace(f, d, rng);
          const Subspace v = random_subspace(f, r, rng);
          const Certificate c = certify(u, v, s);
          CAPTURE(d);
          CAPTURE(s);
          CAPTURE(r);
          CHECK(c.weak_ok == weakly_good_oracle(u, v, s));
          if (c.rate_ok) {
            const Subspace vp = orthogonal_complement(v);
            CHECK(c.good == !in_bad_oracle(u, vp.basis(), s));
          } else {
            CHECK_FALSE(c.good);
          }
          if (c.good) CHECK(c.weak_ok);
          goods += c.good;
          weaks += c.weak_ok;
          ++checked;
        }
      }
    }
  }
  // Both outcomes were exercised.
  CHECK(goods > 0);
  CHECK(goods < checked);
  CHECK(weaks < checked);
}

TEST_CASE("goodness does not depend on the bases used") {
  Rng rng(4);
  for (auto f : {FieldCtx::make(2, 1, 6), FieldCtx::make(3, 1, 4)}) {
    int flips = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const int m = f->m();
      const Subspace u = random_subspace(f, 3, rng);
      const Subspace v = random_subspace(f, m - 2, rng);
      const Certificate ref = certify(u, v, 2);
      for (int change = 0; change < 10; ++change) {
        // Random invertible change of U-basis.
        std::vector<Elt> ub;
        while (static_cast<int>(ub.size()) < 3) {
          Elt x = f->zero();
          for (Elt b : u.basis()) x = f->add(x, f->scale(static_cast<std::uint32_t>(rng.uniform(f->q())), b));
          ub.push_back(x);
          if (brute_rank(*f, ub) < static_cast<int>(ub.size())) ub.pop_back();
        }
        // Random V-basis and random completion to S.
        std::vector<Elt> vb;
        while (static_cast<int>(vb.size()) < v.dim()) {
          Elt x = f->zero();
          for (Elt b : v.basis()) x = f->add(x, f->scale(static_cast<std::uint32_t>(rng.uniform(f->q())), b));
          vb.push_back(x);
          if (brute_rank(*f, vb) < static_cast<int>(vb.size())) vb.pop_back();
        }
        std::vector<Elt> extra;
        for (int i = 0; i < 6; ++i) extra.push_back(f->random(rng));
        const auto full = complete_basis(*f, vb, extra);
        const std::vector<Elt> completion(full.begin() + v.dim(), full.end());
        const GoodnessMatrix g = build_goodness_matrix(*f, ub, vb, 2, completion);
        const Certificate c = certify(*f, g, 2);
        CHECK(c.good == ref.good);
        CHECK(c.weak_ok == ref.weak_ok);
        CHECK(c.rank_m2 == ref.rank_m2);
        flips += c.good;
      }
    }
    CHECK(flips > 0);
  }
}

TEST_CASE("good implies weakly good; large r is always weakly good") {
  auto f = FieldCtx::make(2, 1, 5);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Subspace u = random_subspace(f, 3, rng);
    const Subspace v = random_subspace(f, 2 + static_cast<int>(rng.uniform(3)), rng);
    const Certificate c = certify(u, v, 2);
    if (c.good) CHECK(c.weak_ok);
  }
  // r >= m - s: every pair is weakly good.
  for (int t = 0; t < 50; ++t) {
    const Subspace u = random_subspace(f, 3, rng);
    const Subspace v = random_subspace(f, 3, rng);
    CHECK(is_weakly_good(u, v, 2));
  }
}

TEST_CASE("feasibility classes and bounds") {
  using F = Feasibility;
  CHECK(feasible({3, 4, 2, 1, 2}, 1).cls == F::ok_q3);
  CHECK(feasible({2, 8, 4, 2, 4}, 4).cls == F::ok_q2_subfield);
  CHECK(feasible({2, 8, 4, 2, 4}, 1).cls == F::infeasible);
  CHECK(feasible({2, 5, 3, 2, 2}, 1).cls == F::ok_q2_slack);
  CHECK(feasible({2, 15, 6, 4, 5}, 3).cls == F::ok_q2_subfield);
  CHECK(feasible({2, 4, 2, 1, 2}, 2).cls == F::ok_q2_subfield);
  // q = 2, r = 1 at equality is excluded, and so is the rate violation.
  CHECK(feasible({2, 5, 3, 2, 1}, 1).cls == F::infeasible);
  CHECK(feasible({2, 4, 4, 3, 1}, 1).cls == F::infeasible);
  CHECK(feasible({2, 6, 3, 1, 4}, 1).cls == F::infeasible);
  CHECK(feasible({2, 3, 3, 2, 1}, 1).cls == F::infeasible);
  CHECK(feasible({2, 5, 3, 2, 5}, 1).degenerate);
  CHECK_THROWS(feasible({2, 4, 2, 2, 2}, 1));

  // q = 3, r = 1, ms = d(m - r): 1 - (1/2)(2/(2 - 1/3)) = 2/5.
  CHECK(goodness_bound({3, 3, 3, 2, 1}, 1) == doctest::Approx(0.4).epsilon(1e-12));
  // q = 2, r >= 2, ms = d(m - r) + 1: at least 1/3.
  CHECK(goodness_bound({2, 5, 3, 2, 2}, 1) >= 1.0 / 3 - 1e-12);
  // Large slack drives the bound to 1.
  CHECK(goodness_bound({3, 6, 2, 4, 1}, 1) > 0.99);
  CHECK(goodness_bound({2, 15, 6, 4, 5}, 3) >= 1.0 / 3);
}

TEST_CASE("random search") {
  auto f = FieldCtx::make(3, 1, 6);
  Rng rng(6);
  const Subspace u = random_subspace(f, 2, rng);
  const SearchResult res = search_good_pair(u, 1, 4, 10, 99);
  REQUIRE(res.pair);
  CHECK(res.success_trial <= 1);
  CHECK(res.pair->v.dim() == 4);
  CHECK(is_good(res.pair->u, res.pair->v, 1));
  // Deterministic in the seed.
  const SearchResult again = search_good_pair(u, 1, 4, 10, 99);
  CHECK(again.pair->v == res.pair->v);

  auto g = FieldCtx::make(2, 1, 6);
  CHECK_THROWS_AS(search_good_pair(random_subspace(g, 3, rng), 2, 2, 10, 1), std::invalid_argument);
  CHECK(sample_v(g, 2, 7).dim() == 2);
  CHECK(sample_v(g, 6, 7).dim() == 6);
}

TEST_CASE("duality transform round trip") {
  auto f = FieldCtx::make(2, 1, 6);
  Rng rng(7);
  int done = 0;
  for (int trial = 0; done < 20 && trial < 400; ++trial) {
    const Subspace u = random_subspace(f, 3, rng);
    const auto res = search_good_pair(u, 2, 3, 16, rng.next());
    if (!res.pair) continue;
    const GoodPair dual = duality_transform(*res.pair);
    CHECK(dual.certificate.good);
    CHECK(dual.u.dim() == 3);
    CHECK(dual.v.dim() == 3);
    const GoodPair back = duality_transform(dual);
    CHECK(back.certificate.good);
    CHECK(back.u.dim() == u.dim());
    CHECK(back.v.dim() == res.pair->v.dim());
    ++done;
  }
  CHECK(done == 20);

  // Not good -> the transform refuses.
  const Subspace u = random_subspace(f, 3, rng);
  const GoodPair bad = make_pair(u, orthogonal_complement(Subspace::span(f, std::vector<Elt>{u.basis()[0]})), 2);
  if (!bad.certificate.good) CHECK_THROWS(duality_transform(bad));

  // The explicit pair maps to a pair on the subfield F_{q^{m-r}}.
  const GoodPair ex = explicit_pair(f, 2, 3, 1);
  REQUIRE(ex.certificate.good);
  CHECK(duality_transform(ex).u == subfield(f, 3));
}

TEST_CASE("explicit pairs are good") {
  const GoodPair a = explicit_pair(FieldCtx::make(2, 1, 6), 4, 3, 2);
  CHECK(a.certificate.good);
  CHECK(a.v.dim() == 3);
  const GoodPair b = explicit_pair(FieldCtx::make(2, 1, 4), 3, 2, 2);
  CHECK(b.certificate.good);
  CHECK(b.v.dim() == 2);
  CHECK(explicit_pair(FieldCtx::make(3, 1, 4), 2, 2, 1).certificate.good);
  CHECK_THROWS(explicit_pair(FieldCtx::make(2, 1, 6), 4, 2, 3));
}

TEST_CASE("counterexample pairs fail weak goodness") {
  auto f = FieldCtx::make(2, 1, 4);
  const auto all = all_subspaces(f, 2);
  REQUIRE(all.size() == 35);
  for (const auto& u : all) {
    const Counterexample ce = counterexample_pair(u, 2, 1);
    CHECK(ce.v.dim() == 2);
    CHECK_FALSE(is_weakly_good(u, ce.v, 1));
    CHECK_FALSE(weakly_good_oracle(u, ce.v, 1));
    CHECK(rank_q(*f, std::span<const Elt>(ce.b_prime.data(), ce.tau)) == ce.tau);
    Elt acc = f->zero();
    for (int j = 0; j < static_cast<int>(ce.w.size()); ++j) acc = f->add(acc, f->mul(ce.w[j], ce.b_prime[j]));
    CHECK_FALSE(acc.is_zero());
  }
  CHECK_THROWS(counterexample_pair(all[0], 3, 1));
}

TEST_CASE("bad sets match a brute-force count") {
  auto f = FieldCtx::make(2, 1, 4);
  const auto omega = all_omega(*f, 2);
  REQUIRE(omega.size() == 210);
  Rng rng(8);
  for (int d : {2, 3}) {
    for (int t = 0; t < 4; ++t) {
      const Subspace u = random_subspace(f, d, rng);
      for (int s = 1; s < d; ++s) {
        std::set<std::vector<Elt>> expect;
        for (const auto& x : omega)
          if (in_bad_oracle(u, x, s)) expect.insert(x);
        const BadSetResult b = bad_set(u, s, 2, 1000);
        CHECK(b.count == expect.size());
        CHECK(b.omega_size == 210);
        for (const auto& w : b.witnesses) CHECK(expect.count(w) == 1);
        // Good exactly off the bad set (rate permitting).
        if (4 * s >= d * 2) {
          for (const auto& x : omega) {
            const Subspace v = orthogonal_complement(Subspace::span(f, x));
            CHECK(is_good(u, v, s) == (expect.count(x) == 0));
          }
        }
      }
    }
  }
}

TEST_CASE("bad-set structure") {
  auto f = FieldCtx::make(2, 1, 5);
  Rng rng(9);
  // rank 1 with s = 1: Bad(u) is empty.
  const Elt u0 = f->random_nonzero(rng);
  CHECK(bad_of(*f, std::vector<Elt>{u0, f->zero()}, 1).empty());
  // rho = m - r entries, s < rho: kernel dimension m - r - s.
  for (int t = 0; t < 10; ++t) {
    const auto u = sample_omega(*f, 3, rng);
    CHECK(bad_u_kernel_dim(*f, u, 1) == 2);
    CHECK(bad_u_kernel_dim(*f, u, 2) == 1);
  }
  // Scaling u by a nonzero constant gives the same bad set.
  auto g = FieldCtx::make(2, 1, 4);
  const auto u = sample_omega(*g, 2, rng);
  const auto ref = bad_of(*g, u, 1);
  CHECK_FALSE(ref.empty());
  for (std::uint64_t c = 1; c < 16; ++c) {
    std::vector<Elt> scaled{g->mul(Elt{c}, u[0]), g->mul(Elt{c}, u[1])};
    CHECK(bad_of(*g, scaled, 1) == ref);
  }
}

TEST_CASE("zero/positive dichotomy and the upper bound, exhaustively at q = 2, m = 4") {
  auto f = FieldCtx::make(2, 1, 4);
  for (const auto& u : all_subspaces(f, 3)) {
    const BadSetResult b = bad_set(u, 2, 2);
    CHECK(b.count == 0);
    CHECK(static_cast<double>(b.count) < b.upper_bound);
  }
  for (const auto& u : all_subspaces(f, 2)) {
    const BadSetResult b = bad_set(u, 1, 2);
    CHECK(b.count > 0);
    CHECK(static_cast<double>(b.count) < b.upper_bound);
  }
}
