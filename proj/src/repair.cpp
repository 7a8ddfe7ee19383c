#include "rsrepair/repair.hpp"

#include <stdexcept>

#include "rsrepair/basis.hpp"

namespace rsrepair {

const NodeRepair& RepairScheme::for_node(int i) const {
  if (i < 0 || i >= static_cast<int>(nodes.size()) || nodes[i].node != i) {
    throw std::out_of_range("scheme has no entry for node " + std::to_string(i));
  }
  return nodes[i];
}

NodeRepair node_from_dual_codewords(const FieldCtx& f, int node, std::vector<std::vector<Elt>> x) {
  const int m = f.m();
  if (static_cast<int>(x.size()) != m) throw std::invalid_argument("need m dual codewords");
  const int n = static_cast<int>(x[0].size());
  NodeRepair nr;
  nr.node = node;
  std::vector<Elt> col(m);
  for (int u = 0; u < n; ++u) {
    if (u == node) continue;
    for (int j = 0; j < m; ++j) col[j] = x[j][u];
    const Echelon e = row_reduce(f, coord_matrix(f, col));
    HelperQuery h;
    h.index = u;
    for (int t = 0; t < e.rank(); ++t) {
      std::vector<std::uint32_t> c(m);
      for (int l = 0; l < m; ++l) c[l] = static_cast<std::uint32_t>(e.rref.at(t, l).code);
      h.gamma.push_back(f.from_coords(c));
    }
    h.lambda.assign(m, std::vector<std::uint32_t>(e.rank()));
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < e.rank(); ++t) h.lambda[j][t] = f.coord(col[j], e.pivots[t]);
    nr.helpers.push_back(std::move(h));
  }
  for (int j = 0; j < m; ++j) col[j] = x[j][node];
  nr.recon_dual = dual_basis(f, col);
  nr.x = std::move(x);
  return nr;
}

namespace {

std::vector<std::vector<Elt>> family_codewords(const RsCode& code, const std::vector<Elt>& vp, int node,
                                               std::span<const LinPoly> family) {
  const FieldCtx& f = *code.field;
  const Elt ai = code.eval_set[node];
  std::vector<std::vector<Elt>> x(family.size(), std::vector<Elt>(code.n()));
  for (int u = 0; u < code.n(); ++u) {
    if (u == node) {
      for (std::size_t j = 0; j < family.size(); ++j) x[j][u] = f.mul(vp[u], family[j].coeffs.at(0));
      continue;
    }
    const Elt y = f.sub(code.eval_set[u], ai);
    const Elt scale = f.div(vp[u], y);
    for (std::size_t j = 0; j < family.size(); ++j) x[j][u] = f.mul(scale, eval(f, family[j], y));
  }
  return x;
}

}  // namespace

std::vector<std::vector<Elt>> family_dual_codewords(const RsCode& code, int node, std::span<const LinPoly> family) {
  return family_codewords(code, dual_scaling(code), node, family);
}

RepairScheme scheme_from_family(const RsCode& code, int r, std::string construction, std::span<const LinPoly> family) {
  const FieldCtx& f = *code.field;
  if (static_cast<int>(family.size()) != f.m()) throw std::invalid_argument("need m repair polynomials");
  int qdeg = 0;
  for (const auto& p : family) qdeg = std::max(qdeg, p.q_degree());
  if (qdeg > f.m()) throw std::invalid_argument("repair polynomial degree too large");
  if (f.qpow(qdeg) > static_cast<std::uint64_t>(code.n() - code.k)) {
    throw std::invalid_argument("repair polynomials have degree above n - k");
  }
  const auto vp = dual_scaling(code);
  RepairScheme sch{code, r, std::move(construction), {}};
  for (int i = 0; i < code.n(); ++i) {
    sch.nodes.push_back(node_from_dual_codewords(f, i, family_codewords(code, vp, i, family)));
  }
  return sch;
}

PairScheme scheme_from_pair(const GoodPair& pair) {
  const FieldCtx& f = pair.u.field();
  const int m = f.m();
  const int s = pair.params.s;
  const GoodnessMatrix g = build_goodness_matrix(pair.u, pair.v, s);
  std::vector<LinPoly> polys;
  if (g.m.rows() == 0) {
    for (int j = 0; j < m; ++j) polys.push_back(LinPoly{{g.s_basis[j]}});
  } else {
    const Matrix m1 = g.m1(), m2 = g.m2();
    for (int j = 0; j < m; ++j) {
      std::vector<Elt> rhs(m1.rows());
      for (int i = 0; i < m1.rows(); ++i) rhs[i] = f.neg(m1.at(i, j));
      const auto sol = solve(f, m2, rhs);
      if (!sol) throw std::invalid_argument("pair is not weakly good: no polynomial maps U into V");
      LinPoly p{std::vector<Elt>(s + 1, f.zero())};
      p.coeffs[0] = g.s_basis[j];
      for (int l = 1; l <= s; ++l) {
        Elt a = f.zero();
        for (int t = 0; t < m; ++t) a = f.add(a, f.mul((*sol)[(l - 1) * m + t], g.s_basis[t]));
        p.coeffs[l] = a;
      }
      polys.push_back(std::move(p));
    }
  }
  RsCode code = subspace_code(pair.u, s);
  return PairScheme{scheme_from_family(code, pair.v.dim(), "pair", polys), std::move(polys)};
}

NodeRepair translate_node(const RsCode& code, const NodeRepair& node0, Elt u_star) {
  const FieldCtx& f = *code.field;
  const int target = code.index_of(f.add(code.eval_set[node0.node], u_star));
  if (target < 0) throw std::invalid_argument("translation leaves the evaluation set");
  std::vector<std::vector<Elt>> x(node0.x.size(), std::vector<Elt>(code.n()));
  for (int u = 0; u < code.n(); ++u) {
    const int src = code.index_of(f.sub(code.eval_set[u], u_star));
    if (src < 0) throw std::invalid_argument("evaluation set is not closed under the translation");
    for (std::size_t j = 0; j < x.size(); ++j) x[j][u] = node0.x[j][src];
  }
  return node_from_dual_codewords(f, target, std::move(x));
}

RepairScheme dm_scheme(const RsCode& code, int s) {
  const FieldCtx& f = *code.field;
  if (s < 1 || s >= f.m()) throw std::invalid_argument("need 1 <= s < m");
  if (static_cast<std::uint64_t>(code.n() - code.k) < f.qpow(s)) throw std::invalid_argument("need n - k >= q^s");
  std::vector<Elt> wgens;
  Elt x = f.one();
  for (int i = 0; i < s; ++i) {
    wgens.push_back(x);
    x = f.mul(x, f.gen());
  }
  const LinPoly lw = annihilator(Subspace::span(code.field, wgens));
  std::vector<LinPoly> family;
  Elt beta = f.one();
  for (int j = 0; j < f.m(); ++j) {
    LinPoly p{std::vector<Elt>(lw.coeffs.size())};
    for (std::size_t i = 0; i < lw.coeffs.size(); ++i) {
      p.coeffs[i] = f.mul(lw.coeffs[i], f.frobenius(beta, static_cast<int>(i)));
    }
    family.push_back(std::move(p));
    beta = f.mul(beta, f.gen());
  }
  return scheme_from_family(code, f.m() - s, "dm", family);
}

RepairScheme shorten_scheme(const RepairScheme& scheme, const RsCode& shortened, std::span<const int> removed) {
  const FieldCtx& f = *scheme.code.field;
  const int n = scheme.code.n();
  std::vector<bool> drop(n, false);
  for (int i : removed) drop.at(i) = true;
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (!drop[i]) kept.push_back(i);
  }
  if (static_cast<int>(kept.size()) != shortened.n()) throw std::invalid_argument("shortened code length mismatch");
  RepairScheme out{shortened, scheme.r, scheme.construction + "+shortened", {}};
  for (int ni = 0; ni < static_cast<int>(kept.size()); ++ni) {
    const NodeRepair& src = scheme.for_node(kept[ni]);
    std::vector<std::vector<Elt>> x(src.x.size(), std::vector<Elt>(kept.size()));
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t u = 0; u < kept.size(); ++u) x[j][u] = src.x[j][kept[u]];
    out.nodes.push_back(node_from_dual_codewords(f, ni, std::move(x)));
  }
  return out;
}

RepairScheme grs_rescale_scheme(const RepairScheme& scheme, std::vector<Elt> v_new) {
  const FieldCtx& f = *scheme.code.field;
  RsCode code = scheme.code;
  code.scaling = std::move(v_new);
  code.validate();
  RepairScheme out{code, scheme.r, scheme.construction, {}};
  for (const auto& nr : scheme.nodes) {
    auto x = nr.x;
    for (auto& row : x)
      for (int u = 0; u < code.n(); ++u) row[u] = f.mul(row[u], f.div(scheme.code.v(u), code.v(u)));
    out.nodes.push_back(node_from_dual_codewords(f, nr.node, std::move(x)));
  }
  return out;
}

VerifyReport verify_gw(const RepairScheme& scheme) {
  const RsCode& code = scheme.code;
  const FieldCtx& f = *code.field;
  const int m = f.m();
  const int n = code.n();
  auto fail = [](int node, int helper, std::string why) { return VerifyReport{false, node, helper, std::move(why)}; };
  if (scheme.r < 0) return fail(-1, -1, "negative budget");
  if (static_cast<int>(scheme.nodes.size()) != n) return fail(-1, -1, "scheme does not cover every node");
  for (int i = 0; i < n; ++i) {
    const NodeRepair& nr = scheme.nodes[i];
    if (nr.node != i) return fail(i, -1, "node entries out of order");
    if (static_cast<int>(nr.x.size()) != m) return fail(i, -1, "expected m dual codewords");
    for (int j = 0; j < m; ++j) {
      if (static_cast<int>(nr.x[j].size()) != n) return fail(i, -1, "dual codeword has the wrong length");
      if (!is_dual_codeword(code, nr.x[j])) return fail(i, -1, "vector " + std::to_string(j) + " is not a dual codeword");
    }
    std::vector<Elt> col(m);
    for (int j = 0; j < m; ++j) col[j] = nr.x[j][i];
    if (rank_q(f, col) != m) return fail(i, i, "failed-node entries do not have rank m");
    if (static_cast<int>(nr.recon_dual.size()) != m) return fail(i, i, "reconstruction basis has the wrong size");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const std::uint32_t t = f.trace_scalar(f.mul(nr.recon_dual[a], col[b]));
        if (t != (a == b ? 1u : 0u)) return fail(i, i, "reconstruction basis is not trace-dual");
      }
    if (static_cast<int>(nr.helpers.size()) != n - 1) return fail(i, -1, "helper list is incomplete");
    int expect = 0;
    for (const auto& h : nr.helpers) {
      if (expect == i) ++expect;
      if (h.index != expect) return fail(i, h.index, "helper indices out of order");
      ++expect;
      for (int j = 0; j < m; ++j) col[j] = nr.x[j][h.index];
      const int rk = rank_q(f, col);
      if (rk > scheme.r) return fail(i, h.index, "helper rank " + std::to_string(rk) + " exceeds r");
      if (static_cast<int>(h.gamma.size()) > scheme.r) return fail(i, h.index, "helper sends more than r symbols");
      if (static_cast<int>(h.lambda.size()) != m) return fail(i, h.index, "coefficient matrix has the wrong shape");
      for (int j = 0; j < m; ++j) {
        if (h.lambda[j].size() != h.gamma.size()) return fail(i, h.index, "coefficient matrix has the wrong shape");
        Elt acc = f.zero();
        for (std::size_t t = 0; t < h.gamma.size(); ++t) {
          if (h.lambda[j][t] >= f.q()) return fail(i, h.index, "coefficient outside F_q");
          acc = f.add(acc, f.scale(h.lambda[j][t], h.gamma[t]));
        }
        if (acc != col[j]) return fail(i, h.index, "queries do not reproduce the dual codeword entries");
      }
    }
  }
  return VerifyReport{};
}

RepairTranscript execute_repair(const RepairScheme& scheme, std::span<const Elt> codeword, int node) {
  const FieldCtx& f = *scheme.code.field;
  const int m = f.m();
  if (static_cast<int>(codeword.size()) != scheme.code.n()) throw std::invalid_argument("codeword length mismatch");
  const NodeRepair& nr = scheme.for_node(node);
  const BaseField& fq = f.base();
  RepairTranscript tr;
  tr.node = node;
  std::vector<std::uint32_t> sums(m, 0);  // sum_{u != i} tr(x_{j,u} c_u)
  for (const auto& h : nr.helpers) {
    if (static_cast<int>(h.gamma.size()) > scheme.r) throw std::invalid_argument("helper query exceeds the budget");
    HelperMessage msg;
    msg.index = h.index;
    msg.rank = static_cast<int>(h.gamma.size());
    msg.symbols.assign(scheme.r, 0);
    for (std::size_t t = 0; t < h.gamma.size(); ++t) msg.symbols[t] = f.trace_scalar(f.mul(h.gamma[t], codeword[h.index]));
    for (int j = 0; j < m; ++j)
      for (std::size_t t = 0; t < h.gamma.size(); ++t) sums[j] = fq.add(sums[j], fq.mul(h.lambda[j][t], msg.symbols[t]));
    tr.helpers.push_back(std::move(msg));
  }
  Elt value = f.zero();
  for (int j = 0; j < m; ++j) value = f.add(value, f.scale(fq.neg(sums[j]), nr.recon_dual[j]));
  tr.value = value;
  tr.symbols_sent = static_cast<std::uint64_t>(nr.helpers.size()) * scheme.r;
  tr.bits = static_cast<double>(tr.symbols_sent) * f.log2_q();
  return tr;
}

double naive_bandwidth(const RsCode& code) {
  return static_cast<double>(code.k) * code.field->m() * code.field->log2_q();
}

RepairTranscript naive_repair(const RsCode& code, std::span<const Elt> codeword, int node) {
  const FieldCtx& f = *code.field;
  std::vector<int> helpers;
  for (int u = 0; u < code.n() && static_cast<int>(helpers.size()) < code.k; ++u) {
    if (u != node) helpers.push_back(u);
  }
  RepairTranscript tr;
  tr.node = node;
  for (int u : helpers) tr.helpers.push_back(HelperMessage{u, f.coords(codeword[u]), f.m()});
  tr.value = interpolate_at(code, codeword, node, helpers);
  tr.symbols_sent = static_cast<std::uint64_t>(helpers.size()) * f.m();
  tr.bits = static_cast<double>(tr.symbols_sent) * f.log2_q();
  return tr;
}

}  // namespace rsrepair
