#include "rsrepair/linearized.hpp"

#include <stdexcept>

#include "rsrepair/basis.hpp"
#include "rsrepair/rng.hpp"

namespace rsrepair {

Elt eval(const FieldCtx& f, const LinPoly& p, Elt x) {
  Elt acc = f.zero();
  Elt xp = x;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (!p.coeffs[i].is_zero()) acc = f.add(acc, f.mul(p.coeffs[i], xp));
    xp = f.frobenius(xp, 1);
  }
  return acc;
}

LinPoly annihilator(const Subspace& w) {
  const FieldCtx& f = w.field();
  LinPoly l{{f.one()}};
  // L <- L^q - L(w)^{q-1} L = prod_{c in F_q} (L - c L(w)) adds w to the root space.
  for (Elt b : w.basis()) {
    const Elt c = eval(f, l, b);
    const Elt cq1 = f.pow(c, f.q() - 1);
    LinPoly next{std::vector<Elt>(l.coeffs.size() + 1, f.zero())};
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
      next.coeffs[i + 1] = f.add(next.coeffs[i + 1], f.frobenius(l.coeffs[i], 1));
      next.coeffs[i] = f.sub(next.coeffs[i], f.mul(cq1, l.coeffs[i]));
    }
    l = std::move(next);
  }
  return l;
}

LinPoly image_poly(const Subspace& v) {
  const FieldCtx& f = v.field();
  const int m = f.m();
  const int s = m - v.dim();
  if (s == 0) return LinPoly{{f.one()}};

  const Subspace perp = orthogonal_complement(v);
  std::vector<Elt> powers(m);  // x^t
  powers[0] = f.one();
  for (int t = 1; t < m; ++t) powers[t] = f.mul(powers[t - 1], f.gen());

  // Unknowns: F_q coordinates of b_0..b_s; constraint tr(v' F(x^t)) = 0.
  Matrix a(s * m, (s + 1) * m);
  for (int k = 0; k < s; ++k) {
    const Elt vp = perp.basis()[k];
    for (int t = 0; t < m; ++t) {
      Elt xt = powers[t];
      for (int i = 0; i <= s; ++i) {
        const Elt base = f.mul(vp, xt);
        for (int l = 0; l < m; ++l) a.at(k * m + t, i * m + l) = f.trace(f.mul(base, powers[l]));
        xt = f.frobenius(xt, 1);
      }
    }
  }
  const auto kernel = right_kernel(f, a);

  auto to_poly = [&](const std::vector<Elt>& sol) {
    LinPoly p{std::vector<Elt>(s + 1)};
    for (int i = 0; i <= s; ++i) {
      std::vector<std::uint32_t> c(m);
      for (int l = 0; l < m; ++l) c[l] = static_cast<std::uint32_t>(sol[i * m + l].code);
      p.coeffs[i] = f.from_coords(c);
    }
    return p;
  };
  auto valid = [&](const LinPoly& p) {
    if (p.coeffs[0].is_zero()) return false;
    std::vector<Elt> img(m);
    for (int t = 0; t < m; ++t) img[t] = eval(f, p, powers[t]);
    return rank_q(f, img) == m - s;
  };

  for (const auto& k : kernel) {
    LinPoly p = to_poly(k);
    if (valid(p)) return p;
  }
  Rng rng(0x1ea7);
  for (int attempt = 0; attempt < 1000 && !kernel.empty(); ++attempt) {
    std::vector<Elt> sol((s + 1) * m);
    for (const auto& k : kernel) {
      const auto c = static_cast<std::uint32_t>(rng.uniform(f.q()));
      for (std::size_t j = 0; j < sol.size(); ++j) sol[j] = f.add(sol[j], f.mul(Elt{c}, k[j]));
    }
    LinPoly p = to_poly(sol);
    if (valid(p)) return p;
  }
  throw std::logic_error("image polynomial not found");
}

Matrix t_matrix(const FieldCtx& f, std::span<const Elt> xs, int s) {
  if (s < 1) throw std::invalid_argument("t_matrix: s must be >= 1");
  Matrix t(s, static_cast<int>(xs.size()));
  for (int i = 0; i < t.cols(); ++i) {
    Elt x = xs[i];
    for (int row = 0; row < s; ++row) {
      x = f.frobenius(x, 1);
      t.at(row, i) = x;
    }
  }
  return t;
}

}  // namespace rsrepair
