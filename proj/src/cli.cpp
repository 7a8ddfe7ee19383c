#include "rsrepair/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsrepair/composite.hpp"
#include "rsrepair/goodpair.hpp"
#include "rsrepair/repair.hpp"
#include "rsrepair/rng.hpp"
#include "rsrepair/rscode.hpp"
#include "rsrepair/serialize.hpp"

namespace rsrepair {

namespace {

// Random streams derived from the master seed.
constexpr std::uint64_t kSubspaceStream = 0x5ab5;
constexpr std::uint64_t kCodewordStream = 0xc0de;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> q;
  std::uint32_t p = 2;
  int e = 1;
  int m = 0;
  int d = 0;
  int s = 0;
  int r = 0;
  int a = 1;
  std::uint64_t seed = 1;
  int trials = 64;
  int codewords = 10;
  int node = 0;
  int shorten = 0;
  int samples = 0;
  std::uint64_t guard = kBadSetGuard;
  std::string construction = "pair";
  std::string in;
  std::string out_path;
  std::string json_path;
};

void resolve_q(RunConfig& c) {
  if (!c.q) return;
  const std::uint64_t q = *c.q;
  const auto factors = prime_factors(q);
  if (q < 2 || factors.size() != 1) throw UsageError("--q must be a prime power");
  c.p = static_cast<std::uint32_t>(factors[0]);
  c.e = 0;
  for (std::uint64_t v = q; v > 1; v /= c.p) ++c.e;
}

FieldPtr make_field(RunConfig& c) {
  resolve_q(c);
  if (c.m < 2) throw UsageError("--m is required (m >= 2)");
  return FieldCtx::make(c.p, c.e, c.m);
}

void require_dsr(const RunConfig& c) {
  if (c.d < 1 || c.s < 1 || c.r < 1) throw UsageError("--d, --s and --r are required");
}

Subspace make_u(const FieldPtr& f, const RunConfig& c) {
  if (c.a < 1 || c.d % c.a != 0) throw UsageError("--a must divide --d");
  Rng rng(derive_seed(c.seed, kSubspaceStream));
  return subfield_subspace(f, c.a, c.d / c.a, rng);
}

void emit_json(const RunConfig& c, const json& j) {
  if (!c.json_path.empty()) write_json_file(c.json_path, j);
}

std::string fmt_bits(double b) {
  std::ostringstream os;
  if (b == std::floor(b)) {
    os << static_cast<long long>(b);
  } else {
    os << std::fixed << std::setprecision(3) << b;
  }
  return os.str();
}

json feasibility_json(const FeasibilityReport& rep) {
  return json{{"class", to_string(rep.cls)},
              {"degenerate", rep.degenerate},
              {"a", rep.a},
              {"bound", rep.bound},
              {"detail", rep.detail}};
}

// ---------------------------------------------------------------------------

int cmd_feasible(RunConfig& c, std::ostream& out) {
  resolve_q(c);
  require_dsr(c);
  std::uint64_t q = 1;
  for (int i = 0; i < c.e; ++i) q *= c.p;
  const SchemeParams p{q, c.m, c.d, c.s, c.r};
  const FeasibilityReport rep = feasible(p, c.a);
  out << "params: q=" << q << " m=" << c.m << " d=" << c.d << " s=" << c.s << " r=" << c.r << " a=" << c.a << "\n";
  out << "class: " << to_string(rep.cls) << "\n";
  out << "reason: " << rep.detail << "\n";
  out << "probability bound (a=" << rep.a << "): " << std::fixed << std::setprecision(6) << rep.bound << "\n";
  emit_json(c, feasibility_json(rep));
  return rep.cls == Feasibility::infeasible ? 1 : 0;
}

int cmd_search(RunConfig& c, std::ostream& out) {
  require_dsr(c);
  FieldPtr f = make_field(c);
  const Subspace u = make_u(f, c);
  out << "field: " << f->describe() << "\n";
  out << "U: F_q-dimension " << u.dim();
  if (c.a > 1) out << " (linear over F_{q^" << c.a << "})";
  out << "\n";
  SearchResult res;
  try {
    res = search_good_pair(u, c.s, c.r, c.trials, c.seed);
  } catch (const std::invalid_argument& ex) {
    out << "infeasible: " << ex.what() << "\n";
    return 1;
  }
  json j{{"feasibility", feasibility_json(res.feasibility)}, {"trials_run", res.trials_run}};
  out << "class: " << to_string(res.feasibility.cls) << ", bound " << std::fixed << std::setprecision(6)
      << res.feasibility.bound << "\n";
  if (!res.pair) {
    out << "no good pair in " << res.trials_run << " trials\n";
    j["success_trial"] = nullptr;
    emit_json(c, j);
    return 1;
  }
  out << "good pair found at trial " << res.success_trial << " (rank M2 = " << res.pair->certificate.rank_m2 << " = "
      << res.pair->certificate.rows << ")\n";
  j["success_trial"] = res.success_trial;
  j["pair"] = pair_to_json(*res.pair);
  if (!c.out_path.empty()) write_json_file(c.out_path, pair_to_json(*res.pair));
  emit_json(c, j);
  return 0;
}

std::optional<RepairScheme> build_scheme(RunConfig& c, std::ostream& out) {
  if (c.construction == "pair") {
    GoodPair pair = [&] {
      if (!c.in.empty()) return pair_from_json(read_json_file(c.in));
      require_dsr(c);
      FieldPtr f = make_field(c);
      auto res = search_good_pair(make_u(f, c), c.s, c.r, c.trials, c.seed);
      if (!res.pair) throw std::runtime_error("no good pair found in " + std::to_string(c.trials) + " trials");
      return *res.pair;
    }();
    if (!pair.certificate.weak_ok) {
      out << "pair is not weakly good; no scheme\n";
      return std::nullopt;
    }
    return scheme_from_pair(pair).scheme;
  }
  if (c.construction == "explicit") {
    require_dsr(c);
    FieldPtr f = make_field(c);
    RepairScheme s = scheme_from_pair(explicit_pair(f, c.d, c.r, c.s)).scheme;
    s.construction = "explicit";
    return s;
  }
  if (c.construction == "composite") {
    if (c.d < 1 || c.s < 1) throw UsageError("--d and --s are required");
    FieldPtr f = make_field(c);
    return composite_scheme_subfield(f, c.d, c.s).scheme;
  }
  if (c.construction == "dm") {
    if (c.d < 1 || c.s < 1) throw UsageError("--d and --s are required");
    FieldPtr f = make_field(c);
    return dm_scheme(subspace_code(make_u(f, c), c.s), c.s);
  }
  throw UsageError("unknown construction '" + c.construction + "'");
}

int report_verify(const RepairScheme& s, std::ostream& out) {
  const VerifyReport v = verify_gw(s);
  if (v.ok) {
    out << "verify: ok\n";
    return 0;
  }
  out << "verify: FAIL";
  if (v.node >= 0) out << " node " << v.node;
  if (v.helper >= 0) out << " helper " << v.helper;
  out << ": " << v.violation << "\n";
  return 1;
}

void describe_scheme(const RepairScheme& s, std::ostream& out) {
  const RsCode& code = s.code;
  out << "code: [" << code.n() << "," << code.k << "] over " << code.field->describe() << "\n";
  out << "construction: " << s.construction << ", r = " << s.r << "\n";
  out << "bandwidth per repair: " << fmt_bits((code.n() - 1) * s.r * code.field->log2_q()) << " bits\n";
}

int cmd_build(RunConfig& c, std::ostream& out) {
  auto scheme = build_scheme(c, out);
  if (!scheme) return 1;
  if (c.shorten > 0) {
    const auto removed = default_shortening(scheme->code, c.shorten);
    const RsCode shortened = shorten(scheme->code, removed);
    scheme = shorten_scheme(*scheme, shortened, removed);
  }
  describe_scheme(*scheme, out);
  const int rc = report_verify(*scheme, out);
  if (!c.out_path.empty()) write_json_file(c.out_path, scheme_to_json(*scheme));
  emit_json(c, json{{"n", scheme->code.n()},
                    {"k", scheme->code.k},
                    {"r", scheme->r},
                    {"construction", scheme->construction},
                    {"verified", rc == 0}});
  return rc;
}

RepairScheme load_scheme(const RunConfig& c) {
  if (c.in.empty()) throw UsageError("--in is required");
  return scheme_from_json(read_json_file(c.in));
}

int cmd_verify(RunConfig& c, std::ostream& out) {
  const RepairScheme s = load_scheme(c);
  describe_scheme(s, out);
  const int rc = report_verify(s, out);
  const VerifyReport v = verify_gw(s);
  emit_json(c, json{{"ok", v.ok}, {"node", v.node}, {"helper", v.helper}, {"violation", v.violation}});
  return rc;
}

int cmd_repair(RunConfig& c, std::ostream& out) {
  const RepairScheme s = load_scheme(c);
  if (c.node < 0 || c.node >= s.code.n()) throw UsageError("--node out of range");
  Rng rng(derive_seed(c.seed, kCodewordStream));
  const auto cw = random_codeword(s.code, rng);
  const RepairTranscript t = execute_repair(s, cw, c.node);
  const bool ok = t.value == cw[c.node];
  out << "node " << c.node << ": " << (ok ? "repaired exactly" : "WRONG VALUE") << ", " << t.symbols_sent
      << " symbols, " << fmt_bits(t.bits) << " bits\n";
  if (!c.out_path.empty()) write_json_file(c.out_path, transcript_to_json(*s.code.field, t));
  emit_json(c, transcript_to_json(*s.code.field, t));
  return ok ? 0 : 1;
}

int cmd_simulate(RunConfig& c, std::ostream& out) {
  const RepairScheme s = load_scheme(c);
  if (c.codewords < 1) throw UsageError("--codewords must be positive");
  json rows = json::array();
  int failures = 0;
  double min_bits = std::numeric_limits<double>::infinity(), max_bits = 0;
  for (int w = 0; w < c.codewords; ++w) {
    Rng rng(derive_seed(c.seed, kCodewordStream + static_cast<std::uint64_t>(w)));
    const auto cw = random_codeword(s.code, rng);
    for (int i = 0; i < s.code.n(); ++i) {
      const RepairTranscript t = execute_repair(s, cw, i);
      const bool ok = t.value == cw[i];
      failures += ok ? 0 : 1;
      min_bits = std::min(min_bits, t.bits);
      max_bits = std::max(max_bits, t.bits);
      rows.push_back(json{{"codeword", w}, {"node", i}, {"success", ok}, {"bits", t.bits}});
    }
  }
  const int repairs = c.codewords * s.code.n();
  describe_scheme(s, out);
  out << "repairs: " << repairs << ", exact: " << repairs - failures << ", failed: " << failures << "\n";
  out << "bits per repair: " << fmt_bits(min_bits);
  if (max_bits != min_bits) out << ".." << fmt_bits(max_bits);
  out << "\n";
  emit_json(c, json{{"rows", rows},
                    {"repairs", repairs},
                    {"failures", failures},
                    {"bits_min", min_bits},
                    {"bits_max", max_bits}});
  return failures == 0 ? 0 : 1;
}

int cmd_table1(RunConfig& c, std::ostream& out) {
  const auto rows = compute_table1(c.seed, c.codewords);
  out << std::left << std::setw(24) << "scheme" << std::right << std::setw(4) << "q" << std::setw(5) << "m"
      << std::setw(5) << "n" << std::setw(5) << "k" << std::setw(5) << "r" << std::setw(7) << "b"
      << "  check\n";
  json j = json::array();
  bool all_ok = true;
  for (const auto& row : rows) {
    std::string check = row.simulated ? (row.exact ? "exact" : "FAILED") : "-";
    all_ok &= !row.simulated || row.exact;
    out << std::left << std::setw(24) << row.scheme << std::right << std::setw(4) << row.q << std::setw(5) << row.m
        << std::setw(5) << row.n << std::setw(5) << row.k << std::setw(5) << (row.r < 0 ? "-" : std::to_string(row.r))
        << std::setw(7) << fmt_bits(row.bits) << "  " << check;
    if (!row.note.empty()) out << "  (" << row.note << ")";
    out << "\n";
    j.push_back(json{{"scheme", row.scheme},
                     {"q", row.q},
                     {"m", row.m},
                     {"n", row.n},
                     {"k", row.k},
                     {"r", row.r},
                     {"bits", row.bits},
                     {"simulated", row.simulated},
                     {"exact", row.exact},
                     {"note", row.note}});
  }
  emit_json(c, json{{"rows", j}});
  return all_ok ? 0 : 1;
}

int cmd_badscan(RunConfig& c, std::ostream& out) {
  require_dsr(c);
  FieldPtr f = make_field(c);
  const int m = f->m();
  std::vector<Subspace> us;
  if (c.samples > 0) {
    for (int t = 0; t < c.samples; ++t) {
      Rng rng(derive_seed(c.seed, kSubspaceStream + static_cast<std::uint64_t>(t)));
      us.push_back(subfield_subspace(f, c.a, c.d / c.a, rng));
    }
  } else {
    us = all_subspaces(f, c.d);
  }
  const bool dichotomy_applies = 1 <= c.s && c.s < c.d && c.d < m &&
                                 static_cast<long long>(m) * c.s >= static_cast<long long>(c.d) * (m - c.r);
  const bool expect_zero = c.r >= m - c.s;
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max(), hi = 0;
  int zero = 0, positive = 0, over_bound = 0;
  double bound = 0;
  json counts = json::array();
  for (const auto& u : us) {
    const BadSetResult b = bad_set(u, c.s, c.r, 0, c.guard);
    lo = std::min(lo, b.count);
    hi = std::max(hi, b.count);
    (b.count == 0 ? zero : positive)++;
    if (!(static_cast<double>(b.count) < b.upper_bound)) ++over_bound;
    bound = b.upper_bound;
    counts.push_back(b.count);
  }
  out << "field: " << f->describe() << "\n";
  out << "subspaces scanned: " << us.size() << " (d=" << c.d << ", s=" << c.s << ", r=" << c.r << ")\n";
  out << "|Bad(U)| range: " << lo << ".." << hi << "; zero for " << zero << ", positive for " << positive << "\n";
  out << "upper bound " << std::fixed << std::setprecision(3) << bound << " exceeded by " << over_bound << "\n";
  bool ok = over_bound == 0;
  if (dichotomy_applies) {
    const bool dich = expect_zero ? positive == 0 : zero == 0;
    out << "expected " << (expect_zero ? "all zero (r >= m - s)" : "all positive (r < m - s)") << ": "
        << (dich ? "yes" : "NO") << "\n";
    ok &= dich;
  } else {
    out << "dichotomy check skipped: needs 1 <= s < d < m and ms >= d(m-r)\n";
  }
  emit_json(c, json{{"counts", counts}, {"bound", bound}, {"over_bound", over_bound}, {"ok", ok}});
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct Simulated {
  double bits = 0;
  bool exact = true;
};

template <typename Repair>
Simulated simulate(const RsCode& code, std::uint64_t seed, int codewords, Repair&& repair) {
  Simulated out;
  for (int w = 0; w < codewords; ++w) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(w)));
    const auto cw = random_codeword(code, rng);
    for (int i = 0; i < code.n(); ++i) {
      const RepairTranscript t = repair(cw, i);
      out.exact &= t.value == cw[i];
      out.bits = std::max(out.bits, t.bits);
    }
  }
  return out;
}

}  // namespace

std::vector<Table1Row> compute_table1(std::uint64_t seed, int codewords) {
  std::vector<Table1Row> rows;

  // [14,10] over GF(2^8): C(F_16, 2) shortened by two positions.
  {
    FieldPtr f = FieldCtx::make(2, 1, 8);
    const CompositeScheme cs = composite_scheme_subfield(f, 4, 2);
    const auto removed = default_shortening(cs.scheme.code, 2);
    const RsCode code = shorten(cs.scheme.code, removed);
    const RepairScheme sch = shorten_scheme(cs.scheme, code, removed);
    const bool ok = verify_gw(sch).ok;
    Simulated sim = simulate(code, seed, codewords, [&](const auto& cw, int i) { return execute_repair(sch, cw, i); });
    rows.push_back({"subfield composite", 2, 8, code.n(), code.k, sch.r, sim.bits, true, sim.exact && ok, ""});

    sim = simulate(code, seed, codewords, [&](const auto& cw, int i) { return naive_repair(code, cw, i); });
    rows.push_back({"naive", 2, 8, code.n(), code.k, 8, naive_bandwidth(code), true, sim.exact, ""});

    const RepairScheme dm = dm_scheme(code, 2);
    const double dm_bits = (code.n() - 1) * dm.r * f->log2_q();
    rows.push_back({"subspace poly", 2, 8, code.n(), code.k, -1, 54, false, false,
                    "reported 54; imbalanced variant out of scope, uniform scheme gives " + fmt_bits(dm_bits)});
  }

  // [64,48] over GF(2^15): U linear over F_8 of F_8-dimension 2, s = 4, r = 5.
  {
    FieldPtr f = FieldCtx::make(2, 1, 15);
    Rng rng(derive_seed(seed, kSubspaceStream));
    const Subspace u = subfield_subspace(f, 3, 2, rng);
    const SearchResult res = search_good_pair(u, 4, 5, 64, seed);
    if (res.pair) {
      const RepairScheme sch = scheme_from_pair(*res.pair).scheme;
      const bool ok = verify_gw(sch).ok;
      const Simulated sim =
          simulate(sch.code, seed, codewords, [&](const auto& cw, int i) { return execute_repair(sch, cw, i); });
      rows.push_back({"good pair", 2, 15, sch.code.n(), sch.code.k, sch.r, sim.bits, true, sim.exact && ok,
                      "found at trial " + std::to_string(res.success_trial)});
    } else {
      rows.push_back({"good pair", 2, 15, 64, 48, 5, 0, true, false, "no good pair within 64 trials"});
    }
    const RsCode code = subspace_code(u, 4);
    Simulated sim = simulate(code, seed, codewords, [&](const auto& cw, int i) { return naive_repair(code, cw, i); });
    rows.push_back({"naive", 2, 15, code.n(), code.k, 15, naive_bandwidth(code), true, sim.exact, ""});

    const RepairScheme dm = dm_scheme(code, 4);
    const bool ok = verify_gw(dm).ok;
    sim = simulate(code, seed, codewords, [&](const auto& cw, int i) { return execute_repair(dm, cw, i); });
    rows.push_back({"subspace poly", 2, 15, code.n(), code.k, dm.r, sim.bits, true, sim.exact && ok, ""});
  }
  return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear repair schemes for Reed-Solomon codes on subspace evaluation sets", "rsrepair"};
  app.require_subcommand(1);
  RunConfig c;

  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--q", c.q, "base field size (prime power); overrides --p/--e");
    sub->add_option("--p", c.p, "characteristic");
    sub->add_option("--e", c.e, "q = p^e");
    sub->add_option("--m", c.m, "extension degree over F_q");
  };
  auto scheme_opts = [&](CLI::App* sub) {
    sub->add_option("--d", c.d, "dimension of U");
    sub->add_option("--s", c.s, "the code has redundancy q^s");
    sub->add_option("--r", c.r, "symbols per helper / dimension of V");
    sub->add_option("--a", c.a, "U is linear over F_{q^a}");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--json", c.json_path, "write a machine-readable report here");
  };

  auto* feas = app.add_subcommand("feasible", "classify parameters and print the success-probability bound");
  field_opts(feas);
  scheme_opts(feas);
  common(feas);

  auto* search = app.add_subcommand("search", "random search for a good pair");
  field_opts(search);
  scheme_opts(search);
  common(search);
  search->add_option("--trials", c.trials, "maximum number of trials");
  search->add_option("--out", c.out_path, "write the pair here");

  auto* build = app.add_subcommand("build", "construct and verify a repair scheme");
  field_opts(build);
  scheme_opts(build);
  common(build);
  build->add_option("--construction", c.construction, "pair | explicit | composite | dm")
      ->check(CLI::IsMember({"pair", "explicit", "composite", "dm"}));
  build->add_option("--in", c.in, "pair file (construction pair)");
  build->add_option("--trials", c.trials, "search trials when no pair file is given");
  build->add_option("--shorten", c.shorten, "shorten by this many positions");
  build->add_option("--out", c.out_path, "write the scheme here");

  auto* verify = app.add_subcommand("verify", "check a scheme file against the dual-codeword criterion");
  verify->add_option("--in", c.in, "scheme file")->required();
  common(verify);

  auto* repair = app.add_subcommand("repair", "repair one node of a random codeword");
  repair->add_option("--in", c.in, "scheme file")->required();
  repair->add_option("--node", c.node, "erased node");
  repair->add_option("--out", c.out_path, "write the transcript here");
  common(repair);

  auto* simulate_cmd = app.add_subcommand("simulate", "erase every node of random codewords in turn");
  simulate_cmd->add_option("--in", c.in, "scheme file")->required();
  simulate_cmd->add_option("--codewords", c.codewords, "number of random codewords");
  common(simulate_cmd);

  auto* table = app.add_subcommand("table1", "bandwidth comparison for the [14,10] and [64,48] codes");
  table->add_option("--codewords", c.codewords, "random codewords per simulated row");
  common(table);

  auto* scan = app.add_subcommand("badscan", "exact bad-set census over subspaces U");
  field_opts(scan);
  scheme_opts(scan);
  common(scan);
  scan->add_option("--samples", c.samples, "random subspaces to scan (0 = all)");
  scan->add_option("--guard", c.guard, "limit on kernel vectors examined per subspace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*feas) return cmd_feasible(c, out);
    if (*search) return cmd_search(c, out);
    if (*build) return cmd_build(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*repair) return cmd_repair(c, out);
    if (*simulate_cmd) return cmd_simulate(c, out);
    if (*table) return cmd_table1(c, out);
    if (*scan) return cmd_badscan(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rsrepair
