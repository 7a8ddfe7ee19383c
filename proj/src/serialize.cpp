#include "rsrepair/serialize.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rsrepair {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("malformed JSON: " + what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

json field_to_json(const FieldCtx& f) {
  json h = json::array();
  for (auto c : f.h()) h.push_back(scalar_to_json(f, c));
  return json{{"p", f.p()}, {"e", f.e()}, {"m", f.m()}, {"g", f.g()}, {"h", h}};
}

FieldPtr field_from_json(const json& j) {
  const auto p = need(j, "p").get<std::uint32_t>();
  const int e = need(j, "e").get<int>();
  const int m = need(j, "m").get<int>();
  const auto g = need(j, "g").get<CoeffPoly>();
  if (static_cast<int>(g.size()) != e + 1) bad("g must have e + 1 coefficients");
  BaseField base(p, g);
  CoeffPoly h;
  for (const auto& c : need(j, "h")) {
    const auto r = c.get<std::vector<std::uint32_t>>();
    h.push_back(base.from_residues(r));
  }
  if (static_cast<int>(h.size()) != m + 1) bad("h must have m + 1 coefficients");
  return FieldCtx::make(p, g, h);
}

json scalar_to_json(const FieldCtx& f, std::uint32_t c) { return f.base().residues(c); }

std::uint32_t scalar_from_json(const FieldCtx& f, const json& j) {
  if (!j.is_array()) bad("scalar must be an array of residues");
  return f.base().from_residues(j.get<std::vector<std::uint32_t>>());
}

json elem_to_json(const FieldCtx& f, Elt a) { return f.residues(a); }

Elt elem_from_json(const FieldCtx& f, const json& j) {
  if (!j.is_array()) bad("element must be an array of coefficients");
  return f.from_residues(j.get<std::vector<std::vector<std::uint32_t>>>());
}

json elems_to_json(const FieldCtx& f, std::span<const Elt> v) {
  json a = json::array();
  for (Elt x : v) a.push_back(elem_to_json(f, x));
  return a;
}

std::vector<Elt> elems_from_json(const FieldCtx& f, const json& j) {
  if (!j.is_array()) bad("expected an array of elements");
  std::vector<Elt> out;
  for (const auto& x : j) out.push_back(elem_from_json(f, x));
  return out;
}

json subspace_to_json(const Subspace& s) {
  json j{{"dim", s.dim()}, {"basis", elems_to_json(s.field(), s.basis())}};
  if (s.subfield_degree()) j["subfield_degree"] = *s.subfield_degree();
  return j;
}

Subspace subspace_from_json(FieldPtr f, const json& j) {
  const auto basis = elems_from_json(*f, need(j, "basis"));
  Subspace s = Subspace::span(f, basis);
  if (s.dim() != need(j, "dim").get<int>()) bad("basis rank differs from dim");
  if (j.contains("subfield_degree")) s.set_subfield_degree(j.at("subfield_degree").get<int>());
  return s;
}

json pair_to_json(const GoodPair& p) {
  const FieldCtx& f = p.u.field();
  return json{{"field", field_to_json(f)},
              {"params", {{"q", p.params.q}, {"m", p.params.m}, {"d", p.params.d}, {"s", p.params.s}, {"r", p.params.r}}},
              {"U", subspace_to_json(p.u)},
              {"V", subspace_to_json(p.v)},
              {"certificate",
               {{"rank_M2", p.certificate.rank_m2}, {"weak_ok", p.certificate.weak_ok}, {"good", p.certificate.good}}}};
}

GoodPair pair_from_json(const json& j) {
  FieldPtr f = field_from_json(need(j, "field"));
  Subspace u = subspace_from_json(f, need(j, "U"));
  Subspace v = subspace_from_json(f, need(j, "V"));
  const int s = need(need(j, "params"), "s").get<int>();
  return make_pair(u, v, s);
}

json code_to_json(const RsCode& c) {
  const FieldCtx& f = *c.field;
  json j{{"field", field_to_json(f)}, {"eval_set", elems_to_json(f, c.eval_set)}, {"k", c.k}};
  if (!c.scaling.empty()) j["scaling"] = elems_to_json(f, c.scaling);
  return j;
}

RsCode code_from_json(const json& j) {
  FieldPtr f = field_from_json(need(j, "field"));
  auto pts = elems_from_json(*f, need(j, "eval_set"));
  std::vector<Elt> scaling;
  if (j.contains("scaling")) scaling = elems_from_json(*f, j.at("scaling"));
  return make_code(f, std::move(pts), need(j, "k").get<int>(), std::move(scaling));
}

json scheme_to_json(const RepairScheme& s) {
  const FieldCtx& f = *s.code.field;
  json nodes = json::array();
  for (const auto& nr : s.nodes) {
    json x = json::array();
    for (const auto& row : nr.x) x.push_back(elems_to_json(f, row));
    json helpers = json::array();
    for (const auto& h : nr.helpers) {
      json lambda = json::array();
      for (const auto& row : h.lambda) {
        json r = json::array();
        for (auto c : row) r.push_back(scalar_to_json(f, c));
        lambda.push_back(r);
      }
      helpers.push_back(json{{"index", h.index}, {"gamma", elems_to_json(f, h.gamma)}, {"lambda", lambda}});
    }
    nodes.push_back(json{{"node", nr.node}, {"x", x}, {"helpers", helpers}, {"recon_dual", elems_to_json(f, nr.recon_dual)}});
  }
  return json{{"schema", kSchemaVersion},
              {"code", code_to_json(s.code)},
              {"r", s.r},
              {"construction", s.construction},
              {"nodes", nodes}};
}

RepairScheme scheme_from_json(const json& j) {
  if (need(j, "schema").get<int>() != kSchemaVersion) bad("unsupported schema version");
  RepairScheme s;
  s.code = code_from_json(need(j, "code"));
  const FieldCtx& f = *s.code.field;
  s.r = need(j, "r").get<int>();
  s.construction = j.value("construction", std::string());
  for (const auto& jn : need(j, "nodes")) {
    NodeRepair nr;
    nr.node = need(jn, "node").get<int>();
    for (const auto& row : need(jn, "x")) nr.x.push_back(elems_from_json(f, row));
    for (const auto& jh : need(jn, "helpers")) {
      HelperQuery h;
      h.index = need(jh, "index").get<int>();
      h.gamma = elems_from_json(f, need(jh, "gamma"));
      for (const auto& row : need(jh, "lambda")) {
        std::vector<std::uint32_t> r;
        for (const auto& c : row) r.push_back(scalar_from_json(f, c));
        h.lambda.push_back(std::move(r));
      }
      nr.helpers.push_back(std::move(h));
    }
    nr.recon_dual = elems_from_json(f, need(jn, "recon_dual"));
    s.nodes.push_back(std::move(nr));
  }
  return s;
}

json transcript_to_json(const FieldCtx& f, const RepairTranscript& t) {
  json helpers = json::array();
  for (const auto& h : t.helpers) {
    json syms = json::array();
    for (auto c : h.symbols) syms.push_back(scalar_to_json(f, c));
    helpers.push_back(json{{"index", h.index}, {"symbols", syms}, {"rank", h.rank}});
  }
  json j{{"schema", kSchemaVersion},
         {"node", t.node},
         {"helpers", helpers},
         {"value", elem_to_json(f, t.value)},
         {"symbols_sent", t.symbols_sent}};
  if (t.bits == std::floor(t.bits)) {
    j["bits"] = static_cast<std::uint64_t>(t.bits);
  } else {
    j["bits"] = t.bits;
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rsrepair
