#include "rsrepair/composite.hpp"

#include <stdexcept>

#include "rsrepair/basis.hpp"
#include "rsrepair/linalg.hpp"

namespace rsrepair {

namespace {

// Dual of `elems` inside the subfield spanned by them, w.r.t. the trace
// sum_{i < terms} x^{q^{step i}}.
std::vector<Elt> relative_dual(const FieldCtx& f, std::span<const Elt> elems, int step, int terms) {
  const int k = static_cast<int>(elems.size());
  Matrix gram(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gram.at(a, b) = f.relative_trace(f.mul(elems[a], elems[b]), step, terms);
  const auto inv = inverse(f, gram);
  if (!inv) throw std::invalid_argument("elements are not a basis of the subfield");
  std::vector<Elt> dual(k);
  for (int a = 0; a < k; ++a) {
    Elt acc = f.zero();
    for (int b = 0; b < k; ++b) acc = f.add(acc, f.mul(inv->at(a, b), elems[b]));
    dual[a] = acc;
  }
  return dual;
}

}  // namespace

CompositeScheme composite_scheme_subfield(FieldPtr fp, int d, int s) {
  const FieldCtx& f = *fp;
  const int m = f.m();
  if (d < 2 || d >= m || m % d != 0) throw std::invalid_argument("need d | m with 1 < d < m");
  if (s < 1 || s >= d) throw std::invalid_argument("need 1 <= s < d");
  const int parts = m / d;

  CompositeScheme cs;
  cs.d = d;
  cs.s = s;
  const Subspace k = subfield(fp, d);
  cs.beta = k.basis();
  cs.lw = annihilator(Subspace::span(fp, std::span<const Elt>(cs.beta.data(), s)));
  Elt x = f.one();
  for (int j = 0; j < parts; ++j) {
    cs.b.push_back(x);
    x = f.mul(x, f.alpha());
  }
  cs.b_dual = relative_dual(f, cs.b, d, parts);

  std::vector<LinPoly> family;
  for (int j = 0; j < parts; ++j) {
    for (int l = 0; l < d; ++l) {
      LinPoly p{std::vector<Elt>(cs.lw.coeffs.size())};
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        p.coeffs[i] = f.mul(cs.b_dual[j], f.mul(cs.lw.coeffs[i], f.frobenius(cs.beta[l], static_cast<int>(i))));
      }
      family.push_back(std::move(p));
    }
  }
  cs.scheme = scheme_from_family(subspace_code(k, s), (d - s) * parts, "composite", family);
  return cs;
}

RepairTranscript composite_component_repair(const CompositeScheme& cs, const RsCode& code,
                                            std::span<const Elt> codeword, int node) {
  const FieldCtx& f = *code.field;
  const BaseField& fq = f.base();
  const int d = cs.d;
  const int parts = static_cast<int>(cs.b.size());
  const int n = code.n();
  const int per = d - cs.s;
  if (static_cast<int>(codeword.size()) != n) throw std::invalid_argument("codeword length mismatch");
  if (node < 0 || node >= n) throw std::out_of_range("node index");
  auto in_subfield = [&](Elt a) { return f.frobenius(a, d) == a; };
  for (int u = 0; u < n; ++u) {
    if (!in_subfield(code.eval_set[u]) || !in_subfield(code.v(u))) {
      throw std::invalid_argument("component repair needs points and scaling in the subfield");
    }
  }

  // Component dual codewords y_{l,a} = w'_a L_W(beta_l (a - a_i)) / (a - a_i), all in F_{q^d}.
  std::vector<std::vector<Elt>> y(d);
  for (int l = 0; l < d; ++l) {
    LinPoly p{std::vector<Elt>(cs.lw.coeffs.size())};
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      p.coeffs[i] = f.mul(cs.lw.coeffs[i], f.frobenius(cs.beta[l], static_cast<int>(i)));
    }
    y[l] = family_dual_codewords(code, node, std::span<const LinPoly>(&p, 1))[0];
  }

  std::vector<Elt> col(d);
  for (int l = 0; l < d; ++l) col[l] = y[l][node];
  const std::vector<Elt> recon = relative_dual(f, col, 1, d);

  RepairTranscript tr;
  tr.node = node;
  // sums[j][l] accumulates tr_{q,d}(y_{l,u} c_{j,u}) over helpers u.
  std::vector<std::vector<std::uint32_t>> sums(parts, std::vector<std::uint32_t>(d, 0));
  for (int u = 0; u < n; ++u) {
    if (u == node) continue;
    for (int l = 0; l < d; ++l) col[l] = y[l][u];
    const Echelon e = row_reduce(f, coord_matrix(f, col));
    if (e.rank() > per) throw std::logic_error("component helper rank exceeds d - s");
    std::vector<Elt> gamma;
    for (int t = 0; t < e.rank(); ++t) {
      std::vector<std::uint32_t> c(f.m());
      for (int l = 0; l < f.m(); ++l) c[l] = static_cast<std::uint32_t>(e.rref.at(t, l).code);
      gamma.push_back(f.from_coords(c));
    }
    HelperMessage msg;
    msg.index = u;
    msg.rank = e.rank() * parts;
    msg.symbols.assign(static_cast<std::size_t>(per) * parts, 0);
    for (int j = 0; j < parts; ++j) {
      const Elt cj = f.relative_trace(f.mul(codeword[u], cs.b_dual[j]), d, parts);
      for (int t = 0; t < e.rank(); ++t) {
        const Elt sym = f.relative_trace(f.mul(gamma[t], cj), 1, d);
        msg.symbols[j * per + t] = static_cast<std::uint32_t>(sym.code);
        for (int l = 0; l < d; ++l) {
          sums[j][l] = fq.add(sums[j][l], fq.mul(f.coord(col[l], e.pivots[t]), msg.symbols[j * per + t]));
        }
      }
    }
    tr.helpers.push_back(std::move(msg));
  }

  Elt value = f.zero();
  for (int j = 0; j < parts; ++j) {
    Elt cji = f.zero();
    for (int l = 0; l < d; ++l) cji = f.add(cji, f.scale(fq.neg(sums[j][l]), recon[l]));
    value = f.add(value, f.mul(cs.b[j], cji));
  }
  tr.value = value;
  tr.symbols_sent = static_cast<std::uint64_t>(n - 1) * per * parts;
  tr.bits = static_cast<double>(tr.symbols_sent) * f.log2_q();
  return tr;
}

}  // namespace rsrepair
