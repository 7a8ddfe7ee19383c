#pragma once

// Bases of F_{q^m} over F_q, trace-dual bases and multiplication matrices.

#include <span>
#include <vector>

#include "rsrepair/gfield.hpp"
#include "rsrepair/linalg.hpp"

namespace rsrepair {

class Basis {
 public:
  enum class Kind { primal, dual };

  // Throws if `elems` is not a basis of F_{q^m} over F_q.
  Basis(const FieldCtx& f, std::vector<Elt> elems);
  static Basis polynomial(const FieldCtx& f);

  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<Elt>& elems() const { return elems_; }
  const std::vector<Elt>& dual_elems() const { return dual_; }
  Elt operator[](int i) const { return elems_[i]; }
  Kind kind() const { return kind_; }

  // The trace-dual basis S' with tr(b'_i b_j) = delta_ij.
  Basis dual() const;

  // x = sum_i coords[i] b_i with coords[i] = tr(x b'_i).
  std::vector<std::uint32_t> coords(const FieldCtx& f, Elt x) const;
  Elt combine(const FieldCtx& f, std::span<const std::uint32_t> coords) const;

  friend bool operator==(const Basis& a, const Basis& b) { return a.elems_ == b.elems_; }

 private:
  Basis(std::vector<Elt> elems, std::vector<Elt> dual, Kind kind)
      : elems_(std::move(elems)), dual_(std::move(dual)), kind_(kind) {}

  std::vector<Elt> elems_;
  std::vector<Elt> dual_;
  Kind kind_ = Kind::primal;
};

// Trace-dual of an arbitrary basis, by inverting the Gram matrix [tr(b_i b_j)].
std::vector<Elt> dual_basis(const FieldCtx& f, std::span<const Elt> elems);

// [u]_S: entry (i, j) = tr(b'_i b_j u), so [u]_S * coords(x) = coords(u x).
Matrix mult_matrix(const FieldCtx& f, Elt u, const Basis& s);
// Rows (resp. columns) of [u]_S picked by index.
Matrix row_block(const FieldCtx& f, Elt u, std::span<const int> rows, const Basis& s);
Matrix col_block(const FieldCtx& f, Elt u, std::span<const int> cols, const Basis& s);

// Dimension over F_q of span(elems).
int rank_q(const FieldCtx& f, std::span<const Elt> elems);

// F_q coordinate rows of elements w.r.t. the polynomial basis (one row each).
Matrix coord_matrix(const FieldCtx& f, std::span<const Elt> elems);

}  // namespace rsrepair
