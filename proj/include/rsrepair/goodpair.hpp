#pragma once

// Good pairs (U, V): the goodness matrix, goodness checks, randomized search,
// feasibility classification, the duality transform, explicit constructions
// and the bad-set machinery.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsrepair/basis.hpp"
#include "rsrepair/linalg.hpp"
#include "rsrepair/linearized.hpp"
#include "rsrepair/subspace.hpp"

namespace rsrepair {

struct SchemeParams {
  std::uint64_t q = 2;
  int m = 2;
  int d = 1;
  int s = 1;
  int r = 1;

  bool rate_ok() const { return static_cast<long long>(m) * s >= static_cast<long long>(d) * (m - r); }
  // Throws std::invalid_argument unless 1 <= s < d <= m and 1 <= r <= m.
  void validate() const;
};

// M = (M1 | M2) with block (i, l) = [u_i^{q^l}]_{B2,S}, i < d, l = 0..s.
struct GoodnessMatrix {
  Matrix m;
  int split = 0;  // M1 is columns [0, split)
  std::vector<Elt> u_basis;
  std::vector<Elt> b1;  // basis of V
  std::vector<Elt> b2;  // completion of b1 to S
  Basis s_basis;

  Matrix m1() const { return m.columns(0, split); }
  Matrix m2() const { return m.columns(split, m.cols() - split); }
};

GoodnessMatrix build_goodness_matrix(const FieldCtx& f, std::span<const Elt> u_basis, std::span<const Elt> v_basis,
                                     int s, std::span<const Elt> completion = {});
GoodnessMatrix build_goodness_matrix(const Subspace& u, const Subspace& v, int s);

struct Certificate {
  int rows = 0;  // d(m-r)
  int rank_m2 = 0;
  int rank_m2_m1 = 0;
  bool rate_ok = false;
  bool good = false;
  bool weak_ok = false;
};

Certificate certify(const FieldCtx& f, const GoodnessMatrix& g, int s);
Certificate certify(const Subspace& u, const Subspace& v, int s);
bool is_good(const Subspace& u, const Subspace& v, int s);
bool is_weakly_good(const Subspace& u, const Subspace& v, int s);

struct GoodPair {
  Subspace u;
  Subspace v;
  SchemeParams params;
  Certificate certificate;
};

GoodPair make_pair(const Subspace& u, const Subspace& v, int s);

enum class Feasibility { ok_q3, ok_q2_slack, ok_q2_subfield, infeasible };
const char* to_string(Feasibility f);

struct FeasibilityReport {
  Feasibility cls = Feasibility::infeasible;
  bool degenerate = false;  // r = m: nothing to save, helpers send everything
  int a = 1;                // subfield degree used for the bound
  double bound = 0.0;       // lower bound on the probability that a random V is good
  std::string detail;
};

// Lower bound 1 - q^{d(m-r)-ms}/(q^a-1) * (q-1)/(q-1-q^{-r}) for a U that is
// F_{q^a}-linear; 1 when r = m.
double goodness_bound(const SchemeParams& p, int a);
// `a` is the subfield degree U is known to have (1 if none).
FeasibilityReport feasible(const SchemeParams& p, int a);

struct SearchResult {
  std::optional<GoodPair> pair;
  int trials_run = 0;
  int success_trial = -1;  // index of the first good trial
  FeasibilityReport feasibility;
};

// Samples v' uniformly from Omega, sets V = span(v')^perp and tests goodness;
// trial t uses the seed derive_seed(seed, t).  Throws if the parameters are
// infeasible.
SearchResult search_good_pair(const Subspace& u, int s, int r, int trials, std::uint64_t seed);
// One trial of the search: the V produced from seed.
Subspace sample_v(FieldPtr f, int r, std::uint64_t seed);

// (V^perp, (U^{q^{s+1}})^perp); throws unless the input is good.
GoodPair duality_transform(const GoodPair& pair);

// U = span(1, alpha, ..., alpha^{d-1}), V = F_{q^{m-r}}^perp; requires (m-r) | m.
GoodPair explicit_pair(FieldPtr f, int d, int r, int s);

struct BadSetResult {
  std::uint64_t count = 0;
  std::uint64_t omega_size = 0;
  double upper_bound = 0.0;  // q^{d(m-r)-ms} q^{m(m-r)} / (q^a - 1)
  int a = 1;
  std::uint64_t kernel_tests = 0;
  std::vector<std::vector<Elt>> witnesses;
};

inline constexpr std::uint64_t kBadSetGuard = 1ULL << 22;

// Exact |Bad(U)| by enumeration of F_{q^a}-scaling class representatives.
BadSetResult bad_set(const Subspace& u, int s, int r, std::size_t max_witnesses = 0,
                     std::uint64_t guard = kBadSetGuard);
// F_{q^m}-dimension of the right kernel of T(u; s); u must be nonzero.
int bad_u_kernel_dim(const FieldCtx& f, std::span<const Elt> u, int s);
// Bad(u): kernel vectors of T(u; s) with F_q-independent entries, sorted.
std::vector<std::vector<Elt>> bad_of(const FieldCtx& f, std::span<const Elt> u, int s,
                                     std::uint64_t guard = kBadSetGuard);

struct Counterexample {
  Subspace v;
  std::vector<Elt> w;        // length m - r, zero-padded
  std::vector<Elt> b_prime;  // basis of V^perp
  int tau = 0;
};

// For r < m - s: a V with (U, V) not weakly good, plus its witnesses.
Counterexample counterexample_pair(const Subspace& u, int r, int s);

}  // namespace rsrepair
