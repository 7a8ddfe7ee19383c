#pragma once

// F_q-linear subspaces of F_{q^m} in reduced row echelon form.

#include <optional>
#include <span>
#include <vector>

#include "rsrepair/gfield.hpp"

namespace rsrepair {

class Rng;

inline constexpr std::uint64_t kEnumerationGuard = 1ULL << 20;

class Subspace {
 public:
  // The zero subspace.
  explicit Subspace(FieldPtr f);
  static Subspace span(FieldPtr f, std::span<const Elt> gens);
  static Subspace whole(FieldPtr f);

  const FieldCtx& field() const { return *f_; }
  const FieldPtr& field_ptr() const { return f_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  // Canonical basis: each vector has a distinct pivot coordinate (its lowest
  // nonzero coordinate) equal to 1, and all other basis vectors are zero there.
  const std::vector<Elt>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  std::optional<int> subfield_degree() const { return subfield_degree_; }
  // Records F_{q^a}-linearity after checking closure; throws if it fails.
  void set_subfield_degree(int a);

  bool contains(Elt x) const;
  // Remainder of x after reduction against the basis (zero iff x is in the span).
  Elt reduce(Elt x) const;

  std::uint64_t count() const;
  // Element number t = sum_k c_k q^k maps to sum_k c_k basis[k].
  Elt element(std::uint64_t t) const;
  std::vector<Elt> enumerate(std::uint64_t guard = kEnumerationGuard) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  FieldPtr f_;
  std::vector<Elt> basis_;
  std::vector<int> pivots_;
  std::optional<int> subfield_degree_;
};

Subspace orthogonal_complement(const Subspace& v);
Subspace frobenius_image(const Subspace& u, int i);
// a + b.
Subspace sum(const Subspace& a, const Subspace& b);

// The subfield F_{q^a}, i.e. the fixed points of x -> x^{q^a}.  Requires a | m.
Subspace subfield(FieldPtr f, int a);
// span over F_{q^a} of gens; subfield_degree is recorded.
Subspace subfield_span(FieldPtr f, int a, std::span<const Elt> gens);

// Uniform vector of n elements of F_{q^m} that are F_q-linearly independent.
std::vector<Elt> sample_omega(const FieldCtx& f, int n, Rng& rng);
// Random F_{q^a}-subspace of F_{q^a}-dimension dim_over_subfield.
Subspace subfield_subspace(FieldPtr f, int a, int dim_over_subfield, Rng& rng);
Subspace random_subspace(FieldPtr f, int dim, Rng& rng);
// Every F_q-subspace of the given dimension (for tiny exhaustive scans).
std::vector<Subspace> all_subspaces(FieldPtr f, int dim, std::uint64_t guard = kEnumerationGuard);

// Extends an independent list to a basis of F_{q^m}, first trying `extra`
// in order and then the polynomial basis 1, x, ..., x^{m-1}.
std::vector<Elt> complete_basis(const FieldCtx& f, std::span<const Elt> partial, std::span<const Elt> extra = {});

}  // namespace rsrepair
