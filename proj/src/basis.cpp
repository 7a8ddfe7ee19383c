#include "rsrepair/basis.hpp"

#include <stdexcept>

namespace rsrepair {

Matrix coord_matrix(const FieldCtx& f, std::span<const Elt> elems) {
  Matrix a(static_cast<int>(elems.size()), f.m());
  for (int i = 0; i < a.rows(); ++i) {
    const auto c = f.coords(elems[i]);
    for (int j = 0; j < f.m(); ++j) a.at(i, j) = Elt{c[j]};
  }
  return a;
}

int rank_q(const FieldCtx& f, std::span<const Elt> elems) {
  if (elems.empty()) return 0;
  return rank(f, coord_matrix(f, elems));
}

std::vector<Elt> dual_basis(const FieldCtx& f, std::span<const Elt> elems) {
  const int m = f.m();
  if (static_cast<int>(elems.size()) != m) throw std::invalid_argument("dual_basis: need exactly m elements");
  Matrix gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram.at(i, j) = f.trace(f.mul(elems[i], elems[j]));
  const auto inv = inverse(f, gram);
  if (!inv) throw std::invalid_argument("dual_basis: elements are not a basis");
  // b'_i = sum_k (G^{-1})_{ik} b_k gives tr(b'_i b_j) = (G^{-1} G)_{ij}.
  std::vector<Elt> dual(m);
  for (int i = 0; i < m; ++i) {
    Elt acc = f.zero();
    for (int k = 0; k < m; ++k) acc = f.add(acc, f.mul(inv->at(i, k), elems[k]));
    dual[i] = acc;
  }
  return dual;
}

Basis::Basis(const FieldCtx& f, std::vector<Elt> elems) : elems_(std::move(elems)) {
  dual_ = dual_basis(f, elems_);
}

Basis Basis::polynomial(const FieldCtx& f) {
  std::vector<Elt> e(f.m());
  Elt x = f.one();
  for (int j = 0; j < f.m(); ++j) {
    e[j] = x;
    x = f.mul(x, f.gen());
  }
  return Basis(f, std::move(e));
}

Basis Basis::dual() const { return Basis(dual_, elems_, kind_ == Kind::primal ? Kind::dual : Kind::primal); }

std::vector<std::uint32_t> Basis::coords(const FieldCtx& f, Elt x) const {
  std::vector<std::uint32_t> c(dual_.size());
  for (std::size_t i = 0; i < dual_.size(); ++i) c[i] = f.trace_scalar(f.mul(x, dual_[i]));
  return c;
}

Elt Basis::combine(const FieldCtx& f, std::span<const std::uint32_t> coords) const {
  if (coords.size() != elems_.size()) throw std::invalid_argument("combine: wrong number of coordinates");
  Elt acc = f.zero();
  for (std::size_t i = 0; i < coords.size(); ++i) acc = f.add(acc, f.scale(coords[i], elems_[i]));
  return acc;
}

Matrix mult_matrix(const FieldCtx& f, Elt u, const Basis& s) {
  const int m = s.size();
  Matrix a(m, m);
  for (int j = 0; j < m; ++j) {
    const Elt prod = f.mul(s[j], u);
    for (int i = 0; i < m; ++i) a.at(i, j) = f.trace(f.mul(s.dual_elems()[i], prod));
  }
  return a;
}

Matrix row_block(const FieldCtx& f, Elt u, std::span<const int> rows, const Basis& s) {
  const int m = s.size();
  Matrix a(static_cast<int>(rows.size()), m);
  for (int j = 0; j < m; ++j) {
    const Elt prod = f.mul(s[j], u);
    for (int r = 0; r < a.rows(); ++r) {
      if (rows[r] < 0 || rows[r] >= m) throw std::out_of_range("row_block: index outside the basis");
      a.at(r, j) = f.trace(f.mul(s.dual_elems()[rows[r]], prod));
    }
  }
  return a;
}

Matrix col_block(const FieldCtx& f, Elt u, std::span<const int> cols, const Basis& s) {
  const int m = s.size();
  Matrix a(m, static_cast<int>(cols.size()));
  for (int c = 0; c < a.cols(); ++c) {
    if (cols[c] < 0 || cols[c] >= m) throw std::out_of_range("col_block: index outside the basis");
    const Elt prod = f.mul(s[cols[c]], u);
    for (int i = 0; i < m; ++i) a.at(i, c) = f.trace(f.mul(s.dual_elems()[i], prod));
  }
  return a;
}

}  // namespace rsrepair
