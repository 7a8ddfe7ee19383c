// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "rsrepair/basis.hpp"
#include "rsrepair/composite.hpp"
#include "rsrepair/goodpair.hpp"
#include "rsrepair/linalg.hpp"
#include "rsrepair/linearized.hpp"
#include "rsrepair/repair.hpp"
#include "rsrepair/rng.hpp"
#include "rsrepair/rscode.hpp"
#include "test_util.hpp"

using namespace rsrepair;
using rsrepair::testing::brute_rank;
using rsrepair::testing::trace_by_pow;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass &= ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

// Erases every node of `codewords` random codewords; checks exactness and bits.
void repair_all(Outcome& o, const RepairScheme& s, int codewords, double bits, std::uint64_t seed) {
  Rng rng(seed);
  int repairs = 0, exact = 0, on_budget = 0;
  for (int w = 0; w < codewords; ++w) {
    const auto cw = random_codeword(s.code, rng);
    for (int i = 0; i < s.code.n(); ++i) {
      const RepairTranscript t = execute_repair(s, cw, i);
      ++repairs;
      exact += t.value == cw[i];
      on_budget += t.bits == bits;
    }
  }
  o.require(exact == repairs, "inexact repair");
  o.require(on_budget == repairs, "bandwidth differs from target");
  o.detail << repairs << " repairs, " << exact << " exact, " << on_budget << " at " << bits << " bits; ";
}

void criterion_composite(Outcome& o) {
  auto f = FieldCtx::make(2, 1, 8);
  const CompositeScheme cs = composite_scheme_subfield(f, 4, 2);
  const auto removed = default_shortening(cs.scheme.code, 2);
  const RsCode code = shorten(cs.scheme.code, removed);
  const RepairScheme s = shorten_scheme(cs.scheme, code, removed);
  o.require(code.n() == 14 && code.k == 10, "code is not [14,10]");
  o.require(verify_gw(s).ok, "scheme fails verification");
  repair_all(o, s, 100, 52, kSeed);
  // Component-wise executor on the same code.
  Rng rng(kSeed + 1);
  int ok = 0;
  for (int w = 0; w < 10; ++w) {
    const auto cw = random_codeword(code, rng);
    for (int i = 0; i < 14; ++i) {
      const auto t = composite_component_repair(cs, code, cw, i);
      ok += t.value == cw[i] && t.bits == 52;
    }
  }
  o.require(ok == 140, "component executor disagrees");
  o.detail << "component executor " << ok << "/140";
}

void criterion_good_pair(Outcome& o) {
  auto f = FieldCtx::make(2, 1, 15);
  Rng rng(derive_seed(kSeed, 1));
  const Subspace u = subfield_subspace(f, 3, 2, rng);
  const SearchResult res = search_good_pair(u, 4, 5, 64, kSeed);
  o.require(res.pair.has_value(), "no good pair in 64 trials");
  if (!res.pair) return;
  o.detail << "good pair at trial " << res.success_trial << "; ";
  const RepairScheme s = scheme_from_pair(*res.pair).scheme;
  o.require(s.code.n() == 64 && s.code.k == 48 && s.r == 5, "wrong code parameters");
  o.require(verify_gw(s).ok, "scheme fails verification");
  repair_all(o, s, 10, 315, kSeed + 2);
}

void criterion_baselines(Outcome& o) {
  auto f8 = FieldCtx::make(2, 1, 8);
  const RsCode c14 = shorten(subspace_code(subfield(f8, 4), 2), default_shortening(subspace_code(subfield(f8, 4), 2), 2));
  auto f15 = FieldCtx::make(2, 1, 15);
  Rng rng(derive_seed(kSeed, 1));
  const RsCode c64 = subspace_code(subfield_subspace(f15, 3, 2, rng), 4);
  o.require(naive_bandwidth(c14) == 80, "naive [14,10] != 80");
  o.require(naive_bandwidth(c64) == 720, "naive [64,48] != 720");
  Rng cwr(kSeed + 3);
  const auto cw14 = random_codeword(c14, cwr);
  const auto cw64 = random_codeword(c64, cwr);
  for (int i : {0, 7, 13}) o.require(naive_repair(c14, cw14, i).value == cw14[i], "naive repair inexact");
  const RepairScheme dm = dm_scheme(c64, 4);
  o.require(verify_gw(dm).ok, "subspace-polynomial scheme fails verification");
  repair_all(o, dm, 2, 693, kSeed + 4);
  const RepairScheme dm14 = dm_scheme(c14, 2);
  const double uniform14 = execute_repair(dm14, cw14, 0).bits;
  o.detail << "naive 80/720; [14,10] subspace-polynomial: 54 reported for an imbalanced variant (not reproduced), "
           << "uniform scheme " << uniform14 << " bits";
}

// Fraction of `samples` random V (from seeds) making (U, V) good.
double good_rate(const Subspace& u, int s, int r, int samples, std::uint64_t seed) {
  int good = 0;
  for (int t = 0; t < samples; ++t) good += is_good(u, sample_v(u.field_ptr(), r, derive_seed(seed, t)), s);
  return static_cast<double>(good) / samples;
}

void criterion_monte_carlo(Outcome& o) {
  constexpr int kSamples = 300;
  struct Case {
    const char* label;
    std::uint32_t p;
    int m, d, s, r, a;
    double reference;  // the bound the empirical rate is held to
  };
  const Case cases[] = {
      {"q=3 m=4 d=2 s=1 r=2", 3, 4, 2, 1, 2, 1, 0.4},
      {"q=2 slack m=5 d=3 s=2 r=2", 2, 5, 3, 2, 2, 1, 1.0 / 3},
      {"q=2 subfield m=4 d=2 s=1 r=2 a=2", 2, 4, 2, 1, 2, 2, 1.0 / 3},
  };
  int idx = 0;
  for (const Case& c : cases) {
    auto f = FieldCtx::make(c.p, 1, c.m);
    Rng rng(derive_seed(kSeed, 100 + idx));
    const Subspace u = subfield_subspace(f, c.a, c.d / c.a, rng);
    const SchemeParams params{f->q(), c.m, c.d, c.s, c.r};
    const double bound = goodness_bound(params, c.a);
    const double rate = good_rate(u, c.s, c.r, kSamples, derive_seed(kSeed, 200 + idx));
    const double threshold = c.reference - 3 * std::sqrt(c.reference * (1 - c.reference) / kSamples);
    o.require(bound >= c.reference - 1e-12, std::string(c.label) + ": bound below reference");
    o.require(rate >= threshold, std::string(c.label) + ": empirical rate below threshold");
    o.detail << c.label << ": rate " << std::fixed << std::setprecision(3) << rate << " (bound " << bound
             << ", threshold " << threshold << "); ";
    ++idx;
  }
}

void criterion_dichotomy(Outcome& o) {
  auto f = FieldCtx::make(2, 1, 4);
  int zero_ok = 0, pos_ok = 0, bound_ok = 0, total = 0;
  const auto u3 = all_subspaces(f, 3);
  const auto u2 = all_subspaces(f, 2);
  for (const auto& u : u3) {
    const BadSetResult b = bad_set(u, 2, 2);
    zero_ok += b.count == 0;
    bound_ok += static_cast<double>(b.count) <= b.upper_bound;
    ++total;
  }
  for (const auto& u : u2) {
    const BadSetResult b = bad_set(u, 1, 2);
    pos_ok += b.count > 0;
    bound_ok += static_cast<double>(b.count) <= b.upper_bound;
    ++total;
  }
  o.require(zero_ok == static_cast<int>(u3.size()), "some 3-dim U has a nonempty bad set");
  o.require(pos_ok == static_cast<int>(u2.size()), "some 2-dim U has an empty bad set");
  o.require(bound_ok == total, "count above the upper bound");
  o.detail << "d=3: " << zero_ok << "/" << u3.size() << " empty; d=2: " << pos_ok << "/" << u2.size()
           << " nonempty; bound respected " << bound_ok << "/" << total;
}

void criterion_properties(Outcome& o) {
  Rng rng(derive_seed(kSeed, 7));
  // Rank of T(x; s) = min(s, rank_q(x)).
  int rank_ok = 0;
  for (auto f : {FieldCtx::make(2, 1, 6), FieldCtx::make(3, 1, 4)}) {
    for (int t = 0; t < 200; ++t) {
      const int l = 1 + static_cast<int>(rng.uniform(6));
      const int s = 1 + static_cast<int>(rng.uniform(6));
      auto xs = rsrepair::testing::random_elems(*f, l, rng);
      if (l > 2 && rng.uniform(2)) xs[l - 1] = f->add(xs[0], xs[1]);
      rank_ok += rank(*f, t_matrix(*f, xs, s)) == std::min(s, brute_rank(*f, xs));
    }
  }
  o.require(rank_ok == 400, "T-matrix rank formula");
  o.detail << "T-rank " << rank_ok << "/400; ";

  // Row-block identity: w [u]_{B,S} = coordinates of u w in S'.
  {
    auto f = FieldCtx::make(2, 1, 4);
    const Basis s(*f, {f->one(), f->alpha(), f->pow(f->alpha(), 2), f->pow(f->alpha(), 3)});
    const std::vector<int> b{0, 2};
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
      const Elt u = f->random(rng);
      const std::uint32_t w0 = static_cast<std::uint32_t>(rng.uniform(2)), w1 = static_cast<std::uint32_t>(rng.uniform(2));
      const Elt w = f->add(f->scale(w0, s.dual_elems()[0]), f->scale(w1, s.dual_elems()[2]));
      const Matrix blk = row_block(*f, u, b, s);
      bool all = true;
      for (int j = 0; j < 4; ++j)
        all &= f->add(f->scale(w0, blk.at(0, j)), f->scale(w1, blk.at(1, j))) == f->trace(f->mul(f->mul(u, w), s[j]));
      ok += all;
    }
    o.require(ok == 100, "row-block identity");
    o.detail << "row-block identity " << ok << "/100; ";
  }

  // Basis invariance of goodness.
  {
    auto f = FieldCtx::make(2, 1, 6);
    int ok = 0;
    for (int change = 0; change < 10; ++change) {
      const Subspace u = random_subspace(f, 3, rng);
      const Subspace v = random_subspace(f, 4, rng);
      const Certificate ref = certify(u, v, 2);
      std::vector<Elt> ub;
      while (ub.size() < 3) {
        Elt x = f->zero();
        for (Elt e : u.basis()) x = f->add(x, f->scale(static_cast<std::uint32_t>(rng.uniform(2)), e));
        ub.push_back(x);
        if (brute_rank(*f, ub) < static_cast<int>(ub.size())) ub.pop_back();
      }
      std::vector<Elt> extra;
      for (int i = 0; i < 6; ++i) extra.push_back(f->random(rng));
      const auto full = complete_basis(*f, v.basis(), extra);
      const std::vector<Elt> completion(full.begin() + 4, full.end());
      const Certificate c = certify(*f, build_goodness_matrix(*f, ub, v.basis(), 2, completion), 2);
      ok += c.good == ref.good && c.weak_ok == ref.weak_ok;
    }
    o.require(ok == 10, "basis invariance");
    o.detail << "basis invariance " << ok << "/10; ";
  }

  // Duality round trip.
  {
    auto f = FieldCtx::make(2, 1, 6);
    int done = 0, ok = 0;
    for (int t = 0; done < 20 && t < 400; ++t) {
      const auto res = search_good_pair(random_subspace(f, 3, rng), 2, 3, 16, rng.next());
      if (!res.pair) continue;
      ++done;
      const GoodPair d1 = duality_transform(*res.pair);
      const GoodPair d2 = duality_transform(d1);
      ok += d1.certificate.good && d2.certificate.good && d2.u.dim() == 3 && d2.v.dim() == 3;
    }
    o.require(done == 20 && ok == 20, "duality round trip");
    o.detail << "duality " << ok << "/20; ";
  }

  // Explicit pairs.
  const GoodPair e1 = explicit_pair(FieldCtx::make(2, 1, 6), 4, 3, 2);
  const GoodPair e2 = explicit_pair(FieldCtx::make(2, 1, 4), 3, 2, 2);
  o.require(e1.certificate.good && e2.certificate.good, "explicit pairs");

  // Counterexamples fail weak goodness.
  {
    auto f = FieldCtx::make(2, 1, 4);
    int ok = 0;
    const auto all = all_subspaces(f, 2);
    for (const auto& u : all) ok += !is_weakly_good(u, counterexample_pair(u, 2, 1).v, 1);
    o.require(ok == static_cast<int>(all.size()), "counterexample pairs");
    o.detail << "counterexamples " << ok << "/" << all.size() << "; ";
  }

  // Every construction path passes verification.
  {
    auto f8 = FieldCtx::make(2, 1, 8);
    auto f6 = FieldCtx::make(2, 1, 6);
    std::vector<RepairScheme> schemes;
    schemes.push_back(scheme_from_pair(e1).scheme);
    schemes.push_back(scheme_from_pair(e2).scheme);
    const CompositeScheme cs = composite_scheme_subfield(f8, 4, 2);
    schemes.push_back(cs.scheme);
    const auto removed = default_shortening(cs.scheme.code, 2);
    schemes.push_back(shorten_scheme(cs.scheme, shorten(cs.scheme.code, removed), removed));
    schemes.push_back(dm_scheme(cs.scheme.code, 2));
    std::vector<Elt> v(16);
    for (auto& x : v) x = f6->random_nonzero(rng);
    schemes.push_back(grs_rescale_scheme(schemes[0], v));
    const auto searched = search_good_pair(random_subspace(FieldCtx::make(3, 1, 4), 2, rng), 1, 2, 20, rng.next());
    if (searched.pair) schemes.push_back(scheme_from_pair(*searched.pair).scheme);
    int ok = 0;
    for (const auto& s : schemes) ok += verify_gw(s).ok;
    o.require(ok == static_cast<int>(schemes.size()) && searched.pair, "some construction fails verification");
    o.detail << "verified schemes " << ok << "/" << schemes.size();
  }
}

void criterion_duals(Outcome& o) {
  int fields = 0;
  bool gram = true;
  for (auto f : {FieldCtx::make(2, 1, 2), FieldCtx::make(2, 1, 4), FieldCtx::make(2, 1, 6), FieldCtx::make(3, 1, 4),
                 FieldCtx::make(2, 1, 8), FieldCtx::make(2, 2, 3), FieldCtx::make(2, 3, 5), FieldCtx::make(2, 1, 15)}) {
    const Basis s = Basis::polynomial(*f);
    for (int i = 0; i < f->m(); ++i)
      for (int j = 0; j < f->m(); ++j)
        gram &= trace_by_pow(*f, f->mul(s.dual_elems()[i], s[j])) == (i == j ? f->one() : f->zero());
    ++fields;
  }
  o.require(gram, "Gram identity");
  o.detail << "Gram identity on " << fields << " fields; ";

  auto f = FieldCtx::make(2, 1, 4);
  Rng rng(derive_seed(kSeed, 9));
  int ok = 0, total = 0;
  for (int s = 1; s <= 2; ++s) {
    for (int t = 0; t < 10; ++t) {
      const Subspace v = random_subspace(f, 4 - s, rng);
      const LinPoly p = image_poly(v);
      std::set<std::uint64_t> image;
      int kernel = 0;
      for (std::uint64_t x = 0; x < 16; ++x) {
        const Elt y = eval(*f, p, Elt{x});
        image.insert(y.code);
        kernel += y.is_zero();
      }
      bool inside = true;
      for (auto y : image) inside &= v.contains(Elt{y});
      ok += image.size() == (1u << (4 - s)) && kernel == (1 << s) && inside;
      ++total;
    }
  }
  o.require(ok == total, "image polynomial dimensions");
  o.detail << "image polynomials " << ok << "/" << total;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "composite [14,10] over GF(2^8): exact repair at 52 bits", 10, criterion_composite},
      {2, "good-pair [64,48] over GF(2^15): search and exact repair at 315 bits", 60, criterion_good_pair},
      {3, "baselines: naive 80 and 720, subspace-polynomial 693", 30, criterion_baselines},
      {4, "empirical goodness rate versus the lower bound", 30, criterion_monte_carlo},
      {5, "bad-set dichotomy and upper bound at q=2, m=4", 60, criterion_dichotomy},
      {6, "property suites", 30, criterion_properties},
      {7, "dual bases and image polynomials", 30, criterion_duals},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.time_limit_s) o.require(false, "time limit exceeded");
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.time_limit_s << " s) -- "
              << o.detail.str() << std::endl;
  }
  return failed;
}
