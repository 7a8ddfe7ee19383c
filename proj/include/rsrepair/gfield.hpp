#pragma once

// Two-level finite field tower F_p -> F_q = F_p[y]/(g) -> F_{q^m} = F_q[x]/(h).
//
// Elements of F_{q^m} are dense coefficient vectors packed into an integer: the
// element sum_j c_j x^j (c_j in F_q) has code sum_j c_j q^j, and each F_q
// coefficient c_j is itself packed as sum_t r_t p^t over its residues mod g.
// In other words the code is the base-p digit string of the full coefficient
// vector, constant term first.  F_q sits inside F_{q^m} as the codes below q.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rsrepair {

class Rng;

struct Elt {
  std::uint64_t code = 0;

  friend auto operator<=>(const Elt&, const Elt&) = default;
  bool is_zero() const { return code == 0; }
};

struct EltHash {
  std::size_t operator()(const Elt& e) const noexcept { return std::hash<std::uint64_t>{}(e.code); }
};

// Polynomials over a base field, coefficients as field codes, constant term first.
using CoeffPoly = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// F_q as F_p[y]/(g).  For e = 1 the modulus is g = y, i.e. plain arithmetic mod p.
class BaseField {
 public:
  BaseField(std::uint32_t p, CoeffPoly g);

  std::uint32_t p() const { return p_; }
  int e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const CoeffPoly& g() const { return g_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;

  std::vector<std::uint32_t> residues(std::uint32_t a) const;
  std::uint32_t from_residues(std::span<const std::uint32_t> r) const;

 private:
  std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  int e_;
  std::uint32_t q_;
  CoeffPoly g_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

// Polynomial helpers over a BaseField, exposed for construction and tests.
namespace poly {
CoeffPoly trim(CoeffPoly a);
CoeffPoly mod(const BaseField& f, CoeffPoly a, const CoeffPoly& modulus);
CoeffPoly mulmod(const BaseField& f, const CoeffPoly& a, const CoeffPoly& b, const CoeffPoly& modulus);
CoeffPoly powmod(const BaseField& f, CoeffPoly a, std::uint64_t n, const CoeffPoly& modulus);
CoeffPoly gcd(const BaseField& f, CoeffPoly a, CoeffPoly b);
// Rabin's test; `monic` must have degree >= 1 and leading coefficient 1.
bool is_irreducible(const BaseField& f, const CoeffPoly& monic);
// Smallest monic irreducible of the given degree, ordered by the integer
// sum_i c_i q^i of its non-leading coefficients.
CoeffPoly smallest_irreducible(const BaseField& f, int degree);
}  // namespace poly

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Tables are built for fields up to this many elements; larger fields use
// polynomial multiplication only.  Behaviour is identical either way.
inline constexpr std::uint64_t kLogTableLimit = 1ULL << 20;
inline constexpr std::uint64_t kMaxFieldSize = 1ULL << 40;

class FieldCtx {
 public:
  // Deterministic construction: lex-smallest g and h, smallest primitive alpha.
  static FieldPtr make(std::uint32_t p, int e, int m);
  // Explicit moduli; both are checked for irreducibility.
  static FieldPtr make(std::uint32_t p, CoeffPoly g, CoeffPoly h);

  std::uint32_t p() const { return base_.p(); }
  int e() const { return base_.e(); }
  int m() const { return m_; }
  std::uint64_t q() const { return base_.q(); }
  std::uint64_t size() const { return size_; }
  // q^j for 0 <= j <= m.
  std::uint64_t qpow(int j) const { return qpow_[j]; }
  const BaseField& base() const { return base_; }
  const CoeffPoly& g() const { return base_.g(); }
  const CoeffPoly& h() const { return h_; }
  double log2_q() const;
  std::string describe() const;

  Elt zero() const { return Elt{0}; }
  Elt one() const { return Elt{1}; }
  // The generator x of the polynomial basis.
  Elt gen() const { return Elt{q()}; }
  Elt alpha() const { return alpha_; }
  Elt scalar(std::uint32_t c) const { return Elt{c}; }
  bool is_scalar(Elt a) const { return a.code < q(); }

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t n) const;
  // F_q scalar times element, done coordinate-wise.
  Elt scale(std::uint32_t c, Elt a) const;
  // Reference multiplication by polynomial product mod h; never uses tables.
  Elt mul_reference(Elt a, Elt b) const;
  bool has_tables() const { return !exp_.empty(); }

  // a^{q^i}
  Elt frobenius(Elt a, int i = 1) const;
  // Absolute trace to F_q; the result is a scalar element.
  Elt trace(Elt a) const;
  std::uint32_t trace_scalar(Elt a) const;
  // sum_{i < terms} a^{q^{step * i}}; e.g. the relative trace F_{q^m} -> F_{q^a}
  // is relative_trace(x, a, m / a) and F_{q^a} -> F_q is relative_trace(y, 1, a).
  Elt relative_trace(Elt a, int step, int terms) const;

  std::uint32_t coord(Elt a, int j) const;
  std::vector<std::uint32_t> coords(Elt a) const;
  Elt from_coords(std::span<const std::uint32_t> c) const;
  std::vector<std::vector<std::uint32_t>> residues(Elt a) const;
  Elt from_residues(const std::vector<std::vector<std::uint32_t>>& r) const;
  bool valid(Elt a) const { return a.code < size_; }

  Elt random(Rng& rng) const;
  Elt random_nonzero(Rng& rng) const;

  FieldCtx(BaseField base, CoeffPoly h);

 private:
  void init();

  BaseField base_;
  int m_;
  CoeffPoly h_;
  std::uint64_t size_;
  std::vector<std::uint64_t> qpow_;
  Elt alpha_{};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elt> frob_images_;          // sigma(x^j)
  std::vector<std::uint32_t> basis_trace_;  // tr(x^j)
};

}  // namespace rsrepair
