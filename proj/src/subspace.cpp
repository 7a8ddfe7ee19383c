#include "rsrepair/subspace.hpp"

#include <stdexcept>

#include "rsrepair/basis.hpp"
#include "rsrepair/linalg.hpp"
#include "rsrepair/rng.hpp"

namespace rsrepair {

namespace {

Elt from_coord_row(const FieldCtx& f, const Matrix& a, int i) {
  std::vector<std::uint32_t> c(f.m());
  for (int j = 0; j < f.m(); ++j) c[j] = static_cast<std::uint32_t>(a.at(i, j).code);
  return f.from_coords(c);
}

Elt from_coord_vec(const FieldCtx& f, const std::vector<Elt>& v) {
  std::vector<std::uint32_t> c(f.m());
  for (int j = 0; j < f.m(); ++j) c[j] = static_cast<std::uint32_t>(v[j].code);
  return f.from_coords(c);
}

std::uint64_t pow_guarded(std::uint64_t base, int exp, std::uint64_t guard) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > guard / base) throw std::length_error("enumeration exceeds the size guard");
    r *= base;
  }
  return r;
}

}  // namespace

Subspace::Subspace(FieldPtr f) : f_(std::move(f)) {
  if (!f_) throw std::invalid_argument("null field");
}

Subspace Subspace::span(FieldPtr f, std::span<const Elt> gens) {
  Subspace s(std::move(f));
  if (gens.empty()) return s;
  const FieldCtx& ctx = *s.f_;
  const Echelon e = row_reduce(ctx, coord_matrix(ctx, gens));
  for (int i = 0; i < e.rank(); ++i) {
    s.basis_.push_back(from_coord_row(ctx, e.rref, i));
    s.pivots_.push_back(e.pivots[i]);
  }
  return s;
}

Subspace Subspace::whole(FieldPtr f) {
  const auto b = Basis::polynomial(*f).elems();
  return span(std::move(f), b);
}

void Subspace::set_subfield_degree(int a) {
  const FieldCtx& f = *f_;
  if (a < 1 || f.m() % a != 0) throw std::invalid_argument("subfield degree must divide m");
  if (dim() % a != 0) throw std::invalid_argument("dimension is not a multiple of the subfield degree");
  const Subspace k = subfield(f_, a);
  for (Elt beta : k.basis()) {
    for (Elt u : basis_) {
      if (!contains(f.mul(beta, u))) throw std::invalid_argument("subspace is not closed under the subfield");
    }
  }
  subfield_degree_ = a;
}

Elt Subspace::reduce(Elt x) const {
  const FieldCtx& f = *f_;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::uint32_t c = f.coord(x, pivots_[k]);
    if (c) x = f.sub(x, f.scale(c, basis_[k]));
  }
  return x;
}

bool Subspace::contains(Elt x) const { return reduce(x).is_zero(); }

std::uint64_t Subspace::count() const { return pow_guarded(f_->q(), dim(), kMaxFieldSize); }

Elt Subspace::element(std::uint64_t t) const {
  const FieldCtx& f = *f_;
  Elt acc = f.zero();
  for (std::size_t k = 0; k < basis_.size() && t; ++k) {
    const auto c = static_cast<std::uint32_t>(t % f.q());
    t /= f.q();
    if (c) acc = f.add(acc, f.scale(c, basis_[k]));
  }
  return acc;
}

std::vector<Elt> Subspace::enumerate(std::uint64_t guard) const {
  const std::uint64_t n = pow_guarded(f_->q(), dim(), guard);
  std::vector<Elt> out;
  out.reserve(n);
  for (std::uint64_t t = 0; t < n; ++t) out.push_back(element(t));
  return out;
}

Subspace orthogonal_complement(const Subspace& v) {
  const FieldCtx& f = v.field();
  if (v.dim() == 0) return Subspace::whole(v.field_ptr());
  Matrix a(v.dim(), f.m());
  for (int i = 0; i < v.dim(); ++i) {
    Elt xj = f.one();
    for (int j = 0; j < f.m(); ++j) {
      a.at(i, j) = f.trace(f.mul(v.basis()[i], xj));
      xj = f.mul(xj, f.gen());
    }
  }
  std::vector<Elt> gens;
  for (const auto& k : right_kernel(f, a)) gens.push_back(from_coord_vec(f, k));
  return Subspace::span(v.field_ptr(), gens);
}

Subspace frobenius_image(const Subspace& u, int i) {
  if (i < 0) throw std::invalid_argument("negative Frobenius power");
  std::vector<Elt> gens;
  for (Elt b : u.basis()) gens.push_back(u.field().frobenius(b, i));
  return Subspace::span(u.field_ptr(), gens);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  std::vector<Elt> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.field_ptr(), gens);
}

Subspace subfield(FieldPtr fp, int a) {
  const FieldCtx& f = *fp;
  if (a < 1 || f.m() % a != 0) throw std::invalid_argument("subfield degree must divide m");
  Matrix mat(f.m(), f.m());
  Elt xj = f.one();
  for (int j = 0; j < f.m(); ++j) {
    const auto c = f.coords(f.sub(f.frobenius(xj, a), xj));
    for (int i = 0; i < f.m(); ++i) mat.at(i, j) = Elt{c[i]};
    xj = f.mul(xj, f.gen());
  }
  std::vector<Elt> gens;
  for (const auto& k : right_kernel(f, mat)) gens.push_back(from_coord_vec(f, k));
  Subspace s = Subspace::span(fp, gens);
  if (s.dim() != a) throw std::logic_error("fixed field has the wrong dimension");
  return s;
}

Subspace subfield_span(FieldPtr fp, int a, std::span<const Elt> gens) {
  const FieldCtx& f = *fp;
  const Subspace k = subfield(fp, a);
  std::vector<Elt> all;
  for (Elt g : gens)
    for (Elt beta : k.basis()) all.push_back(f.mul(beta, g));
  Subspace s = Subspace::span(fp, all);
  s.set_subfield_degree(a);
  return s;
}

std::vector<Elt> sample_omega(const FieldCtx& f, int n, Rng& rng) {
  if (n < 1 || n > f.m()) throw std::invalid_argument("sample_omega: need 1 <= n <= m");
  std::vector<Elt> v(n);
  while (true) {
    for (auto& x : v) x = f.random(rng);
    if (rank_q(f, v) == n) return v;
  }
}

Subspace subfield_subspace(FieldPtr fp, int a, int dim_over_subfield, Rng& rng) {
  const FieldCtx& f = *fp;
  if (a < 1 || f.m() % a != 0) throw std::invalid_argument("subfield degree must divide m");
  if (dim_over_subfield < 0 || a * dim_over_subfield > f.m()) throw std::invalid_argument("subspace dimension out of range");
  std::vector<Elt> gens(dim_over_subfield);
  while (true) {
    for (auto& x : gens) x = f.random(rng);
    Subspace s = subfield_span(fp, a, gens);
    if (s.dim() == a * dim_over_subfield) return s;
  }
}

Subspace random_subspace(FieldPtr f, int dim, Rng& rng) { return subfield_subspace(std::move(f), 1, dim, rng); }

std::vector<Subspace> all_subspaces(FieldPtr fp, int dim, std::uint64_t guard) {
  const FieldCtx& f = *fp;
  const int m = f.m();
  if (dim < 0 || dim > m) throw std::invalid_argument("dimension out of range");
  std::vector<Subspace> out;
  // Walk pivot sets as increasing index tuples; for each, every choice of the
  // free (non-pivot, right-of-pivot) entries gives one reduced basis.
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;  // (row, column)
    for (int i = 0; i < dim; ++i) {
      for (int j = piv[i] + 1; j < m; ++j) {
        bool is_piv = false;
        for (int p : piv) is_piv |= (p == j);
        if (!is_piv) free.emplace_back(i, j);
      }
    }
    const std::uint64_t n = pow_guarded(f.q(), static_cast<int>(free.size()), guard);
    if (out.size() + n > guard) throw std::length_error("too many subspaces to enumerate");
    for (std::uint64_t t = 0; t < n; ++t) {
      std::vector<std::vector<std::uint32_t>> rows(dim, std::vector<std::uint32_t>(m, 0));
      for (int i = 0; i < dim; ++i) rows[i][piv[i]] = 1;
      std::uint64_t v = t;
      for (auto [i, j] : free) {
        rows[i][j] = static_cast<std::uint32_t>(v % f.q());
        v /= f.q();
      }
      std::vector<Elt> gens;
      for (const auto& r : rows) gens.push_back(f.from_coords(r));
      out.push_back(Subspace::span(fp, gens));
    }
    int i = dim - 1;
    while (i >= 0 && piv[i] == m - dim + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int k = i + 1; k < dim; ++k) piv[k] = piv[k - 1] + 1;
  }
  return out;
}

std::vector<Elt> complete_basis(const FieldCtx& f, std::span<const Elt> partial, std::span<const Elt> extra) {
  std::vector<Elt> out(partial.begin(), partial.end());
  if (rank_q(f, out) != static_cast<int>(out.size())) throw std::invalid_argument("complete_basis: input is dependent");
  auto try_add = [&](Elt c) {
    if (static_cast<int>(out.size()) == f.m()) return;
    out.push_back(c);
    if (rank_q(f, out) != static_cast<int>(out.size())) out.pop_back();
  };
  for (Elt c : extra) try_add(c);
  Elt xj = f.one();
  for (int j = 0; j < f.m(); ++j) {
    try_add(xj);
    xj = f.mul(xj, f.gen());
  }
  return out;
}

}  // namespace rsrepair
