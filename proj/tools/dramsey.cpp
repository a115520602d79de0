// dramsey: constructions, searches, verifications and bound derivations for
// k-th power Paley digraphs and their Mathon-type completions.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "ramsey/bounds.hpp"
#include "ramsey/field.hpp"
#include "ramsey/graphs.hpp"
#include "ramsey/search.hpp"
#include "ramsey/verify.hpp"
#include "ramsey/version.hpp"

using namespace ramsey;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string format = "text";
  std::string cache_path = "dramsey-cache.jsonl";
  bool no_cache = false;
  int threads = 1;
  double budget_seconds = 0.0;
  bool stats = false;

  bool json_out() const { return format == "json"; }

  SearchOptions search_options() const {
    SearchOptions o;
    o.threads = threads;
    if (budget_seconds > 0) {
      o.budget = std::chrono::milliseconds(static_cast<std::int64_t>(budget_seconds * 1000));
    }
    return o;
  }
};

std::string chain_str(const std::vector<std::uint32_t>& chain) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) os << " ";
    os << chain[i];
  }
  return os.str();
}

json result_json(const GlobalOpts& g, const SearchResult& r) {
  json j;
  switch (r.kind) {
    case SearchKind::exists:
      j["kind"] = "exists";
      j["value"] = r.exists;
      break;
    case SearchKind::count:
      j["kind"] = "count";
      j["value"] = r.count;
      break;
    case SearchKind::max:
      j["kind"] = "max";
      j["value"] = r.max_order;
      break;
  }
  if (!r.witness.empty()) {
    j["witness"] = r.witness;
    j["witness_color"] = r.witness_color;
  } else {
    j["witness"] = nullptr;
  }
  j["at_limit"] = r.at_limit;
  if (g.stats) {
    j["nodes"] = r.nodes;
    j["elapsed_ms"] = r.elapsed.count();
  }
  return j;
}

json report_json(const CheckReport& r) { return json::parse(r.to_json_line()); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct FieldArgs {
  std::uint32_t q = 0;
};

struct BuildArgs {
  std::string family;
  std::uint32_t k = 0, q = 0;
  std::uint64_t seed = 0;
  bool complete = false;
  std::string out;
};

struct SearchArgs {
  std::string kind;
  std::uint32_t k = 0, q = 0, m = 0;
  int color = -1;  // -1: default per graph family
  std::string method = "symmetric";
  std::string graph = "paley";
  std::uint64_t seed = 0;
};

struct ScanArgs {
  std::uint32_t k = 0, m = 0, q_max = 0;
  std::string direction = "desc";
};

struct VerifyArgs {
  std::string what;
  std::uint32_t k = 0, q = 0, m = 0, trials = 100;
  std::uint64_t seed = 0;
};

struct BoundsArgs {
  std::string what;
  std::uint32_t t_max = 6, m_max = 10;
  std::string facts_path;
  bool provenance = false;
};

FactBase load_facts(const BoundsArgs& a) {
  if (a.facts_path.empty()) return FactBase::shipped();
  return FactBase::load(a.facts_path);
}

int run_field(const GlobalOpts& g, const FieldArgs& a) {
  FieldCtx f = FieldCtx::build(a.q);
  if (g.json_out()) {
    json j;
    j["q"] = f.order();
    j["p"] = f.characteristic();
    j["n"] = f.degree();
    j["modulus"] = f.degree() > 1 ? json(f.modulus_string()) : json(nullptr);
    j["modulus_coeffs"] = f.modulus();
    j["omega"] = f.omega();
    emit(j);
  } else {
    std::cout << "GF(" << f.order() << "): characteristic " << f.characteristic() << ", degree "
              << f.degree() << "\n";
    if (f.degree() > 1) std::cout << "modulus: " << f.modulus_string() << "\n";
    std::cout << "omega: " << f.omega() << "\n";
  }
  return 0;
}

int run_build(const GlobalOpts& g, const BuildArgs& a) {
  ResidueSystem rs = ResidueSystem::build(a.k, a.q);
  std::ostringstream graph_text;
  json meta;
  meta["k"] = a.k;
  meta["q"] = a.q;
  if (a.family == "paley") {
    ColoredTournament t = build_paley(rs);
    write_graph(graph_text, t, "paley", a.k, a.q, std::nullopt);
    meta["family"] = "paley";
    meta["n"] = t.order();
    meta["colors"] = t.colors();
  } else {
    MathonDigraph M(rs);
    meta["n"] = M.order();
    meta["digons"] = M.digons().size();
    if (a.complete) {
      ColoredTournament t = complete_mathon(M, a.seed);
      write_graph(graph_text, t, "mathon-star", a.k, a.q, a.seed);
      meta["family"] = "mathon-star";
      meta["seed"] = a.seed;
    } else {
      write_graph(graph_text, M);
      meta["family"] = "mathon";
    }
  }
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << graph_text.str();
    meta["file"] = a.out;
    if (g.json_out()) {
      emit(meta);
    } else {
      std::cout << "wrote " << meta["family"].get<std::string>() << " k=" << a.k << " q=" << a.q
                << " n=" << meta["n"].get<std::uint32_t>() << " to " << a.out << "\n";
    }
  } else {
    std::cout << graph_text.str();
  }
  return 0;
}

int run_search(const GlobalOpts& g, const SearchArgs& a) {
  ResidueSystem rs = ResidueSystem::build(a.k, a.q);
  SearchOptions opts = g.search_options();

  // graph family: the implicit paley view (affine symmetry), the colored
  // digraph M_k(q), or a seeded completion of it
  std::optional<PaleyView> paley;
  std::optional<MathonDigraph> mathon;
  std::optional<ColoredTournament> star;
  GraphHandle handle = static_cast<const ColoredTournament*>(nullptr);
  std::optional<std::uint32_t> color;
  if (a.color > 0) color = static_cast<std::uint32_t>(a.color);
  if (a.graph == "paley") {
    paley.emplace(rs);
    handle = &*paley;
    if (a.color < 0) color = 1;  // default: G_k(q), the color-1 digraph
  } else if (a.graph == "mathon") {
    mathon.emplace(rs);
    handle = &*mathon;
  } else if (a.graph == "mathon-star") {
    mathon.emplace(rs);
    star = complete_mathon(*mathon, a.seed);
    handle = &*star;
  } else {
    throw CLI::ValidationError("--graph must be paley, mathon or mathon-star");
  }

  bool cacheable = a.graph == "paley" && !g.no_cache;
  std::optional<SearchCache> cache;
  if (cacheable) cache.emplace(g.cache_path);
  std::uint32_t cache_color = color.value_or(0);

  SearchResult r;
  bool from_cache = false;
  if ((a.kind == "exists" || a.kind == "count") && a.m == 0) {
    throw CLI::ValidationError("--m is required for exists/count searches");
  }
  if (cache) {
    auto hit = cache->lookup(a.k, a.q, a.kind == "max" ? 0 : a.m, a.kind, cache_color);
    if (hit && !hit->at_limit) {
      from_cache = true;
      r.kind = a.kind == "exists" ? SearchKind::exists
                                  : (a.kind == "count" ? SearchKind::count : SearchKind::max);
      r.exists = hit->value != 0;
      r.count = hit->value;
      r.max_order = static_cast<std::uint32_t>(hit->value);
      if (hit->witness) r.witness = *hit->witness;
    }
  }
  if (!from_cache) {
    if (a.kind == "exists") {
      r = exists_tt(handle, a.m, color, opts);
    } else if (a.kind == "count") {
      CountMethod method;
      if (a.method == "brute") {
        method = CountMethod::brute;
      } else if (a.method == "symmetric") {
        method = CountMethod::symmetric;
      } else {
        throw CLI::ValidationError("--method must be brute or symmetric");
      }
      if (a.graph != "paley") method = CountMethod::brute;
      r = count_tt(handle, a.m, color, method, opts);
    } else {
      r = max_tt(handle, color, opts);
    }
    if (cache) {
      cache->append(make_cache_record(a.k, a.q, a.kind == "max" ? 0 : a.m, a.kind, cache_color, r));
    }
  }

  if (g.json_out()) {
    json j = result_json(g, r);
    j["k"] = a.k;
    j["q"] = a.q;
    j["graph"] = a.graph;
    if (a.m) j["m"] = a.m;
    j["color"] = color ? json(*color) : json(nullptr);
    j["from_cache"] = from_cache;
    emit(j);
  } else {
    std::string where = a.graph == "paley"
                            ? "G_" + std::to_string(a.k) + "(" + std::to_string(a.q) + ")"
                            : a.graph + " k=" + std::to_string(a.k) + " q=" + std::to_string(a.q);
    if (color) where += " color " + std::to_string(*color);
    if (a.kind == "exists") {
      std::cout << "TT_" << a.m << " in " << where << ": " << (r.exists ? "exists" : "none");
      if (r.exists) std::cout << "  witness: " << chain_str(r.witness);
    } else if (a.kind == "count") {
      std::cout << "TT_" << a.m << " count in " << where << ": " << r.count;
    } else {
      std::cout << "max TT order in " << where << ": " << r.max_order << "  witness: "
                << chain_str(r.witness);
    }
    if (r.at_limit) std::cout << "  [at budget limit, partial]";
    if (from_cache) std::cout << "  (cached)";
    if (g.stats) std::cout << "  [nodes=" << r.nodes << " elapsed=" << r.elapsed.count() << "ms]";
    std::cout << "\n";
  }
  return 0;
}

int run_scan(const GlobalOpts& g, const ScanArgs& a) {
  ScanOptions opts;
  opts.descending = a.direction != "asc";
  opts.search = g.search_options();
  opts.use_cache = !g.no_cache;
  std::optional<SearchCache> cache;
  if (!g.no_cache) cache.emplace(g.cache_path);
  ScanResult r = scan(a.k, a.m, a.q_max, cache ? &*cache : nullptr, opts);
  if (g.json_out()) {
    json j;
    j["k"] = a.k;
    j["m"] = a.m;
    j["q_max"] = a.q_max;
    j["q"] = r.q ? json(*r.q) : json(nullptr);
    j["at_limit"] = r.at_limit;
    json evs = json::array();
    for (const auto& ev : r.evaluated) {
      evs.push_back({{"q", ev.q},
                     {"exists", ev.exists},
                     {"from_cache", ev.from_cache},
                     {"unknown", ev.unknown}});
    }
    j["evaluated"] = evs;
    emit(j);
  } else {
    for (const auto& ev : r.evaluated) {
      std::cout << "q=" << ev.q << ": TT_" << a.m
                << (ev.unknown ? " undecided (budget)" : (ev.exists ? " exists" : " none"))
                << (ev.from_cache ? " (cached)" : "") << "\n";
    }
    if (r.q) {
      std::cout << "largest q <= " << a.q_max << " with no TT_" << a.m << " in G_" << a.k
                << "(q): " << *r.q << (r.at_limit ? "  [at scan limit]" : "") << "\n";
    } else {
      std::cout << "no q <= " << a.q_max << " with K_" << a.m << "(G_" << a.k << "(q)) = 0 found\n";
    }
  }
  return 0;
}

int run_verify(const GlobalOpts& g, const VerifyArgs& a) {
  std::optional<SearchCache> cache;
  if (!g.no_cache) cache.emplace(g.cache_path);
  auto persist = [&](const CheckReport& rep) {
    if (!cache || cache->path().empty()) return;
    std::ofstream out(cache->path(), std::ios::app);
    out << rep.to_json_line() << "\n";
  };

  bool all_pass = true;
  if (a.what == "structure") {
    MathonDigraph M(ResidueSystem::build(a.k, a.q));
    auto reports = check_structure(M);
    json arr = json::array();
    for (const auto& rep : reports) {
      all_pass = all_pass && rep.pass;
      persist(rep);
      if (g.json_out()) {
        arr.push_back(report_json(rep));
      } else {
        std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.name;
        if (!rep.pass) std::cout << ": " << rep.counterexample;
        if (g.stats) std::cout << "  (" << rep.elapsed_ms << "ms)";
        std::cout << "\n";
      }
    }
    if (g.json_out()) emit(json{{"k", a.k}, {"q", a.q}, {"pass", all_pass}, {"reports", arr}});
  } else {
    if (a.m == 0) throw CLI::ValidationError("--m is required for verify theorem");
    CheckReport rep = check_theorem(a.k, a.q, a.m, a.trials, a.seed, g.search_options());
    all_pass = rep.pass;
    persist(rep);
    if (g.json_out()) {
      emit(report_json(rep));
    } else {
      std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.name << " k=" << a.k << " q=" << a.q
                << " m=" << a.m << " trials=" << a.trials;
      if (rep.extra.count("vacuous")) std::cout << "  [vacuous: " << rep.extra.at("note") << "]";
      if (!rep.pass) std::cout << "\n  counterexample: " << rep.counterexample;
      if (g.stats) std::cout << "  (" << rep.elapsed_ms << "ms)";
      std::cout << "\n";
    }
  }
  return all_pass ? 0 : 1;
}

int run_bounds(const GlobalOpts& g, const BoundsArgs& a) {
  FactBase facts = load_facts(a);
  if (a.what == "tables") {
    if (g.json_out()) {
      emit(json{{"table1", emit_table1(facts)}, {"table3", emit_table3(facts, 6)}});
    } else {
      std::cout << emit_tables(facts);
    }
    return 0;
  }
  BoundTable table = derive_bounds(facts, a.t_max, a.m_max);
  if (g.json_out()) {
    json entries = json::array();
    for (std::uint32_t t = 1; t <= a.t_max; ++t) {
      for (std::uint32_t m = 3; m <= a.m_max; ++m) {
        auto e = table.at(t, m);
        if (!e) continue;
        json je{{"t", t},
                {"m", m},
                {"value", e->value},
                {"exact", e->exact},
                {"rule", e->step.rule},
                {"uses_at_limit", e->uses_at_limit}};
        if (a.provenance) je["provenance"] = table.provenance_string(t, m);
        entries.push_back(je);
      }
    }
    emit(json{{"t_max", a.t_max}, {"m_max", a.m_max}, {"entries", entries}});
  } else {
    for (std::uint32_t t = 1; t <= a.t_max; ++t) {
      for (std::uint32_t m = 3; m <= a.m_max; ++m) {
        auto e = table.at(t, m);
        if (!e) continue;
        std::cout << "R_" << t << "(" << m << ") " << (e->exact ? "= " : ">= ") << e->value
                  << "  [" << e->step.rule << (e->uses_at_limit ? ", at search limit" : "")
                  << "]\n";
        if (a.provenance) std::cout << "  " << table.provenance_string(t, m) << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-th power Paley digraphs, Mathon-type completions, transitive-subtournament "
               "search and directed Ramsey lower bounds"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", std::string(kVersion));

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", g.cache_path, "search cache file (JSON lines)");
  app.add_flag("--no-cache", g.no_cache, "disable cache reads and writes");
  app.add_option("--threads", g.threads, "worker threads for searches")->check(CLI::Range(1, 256));
  app.add_option("--budget", g.budget_seconds, "time budget per search in seconds");
  app.add_flag("--stats", g.stats, "include node counts and timings in output");

  FieldArgs fa;
  auto* field = app.add_subcommand("field", "finite field information");
  auto* finfo = field->add_subcommand("info", "print canonical GF(q) data");
  finfo->add_option("q", fa.q, "field order (prime power)")->required();

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "construct a graph and write its text form");
  auto* bpaley = build->add_subcommand("paley", "multicolor k-th power Paley tournament P_k(q)");
  auto* bmathon = build->add_subcommand("mathon", "Mathon-type digraph M_k(q) or completion");
  for (auto* sub : {bpaley, bmathon}) {
    sub->add_option("--k", ba.k, "even color parameter k")->required();
    sub->add_option("--q", ba.q, "prime power with q = k+1 (mod 2k)")->required();
    sub->add_option("--out", ba.out, "output file (stdout when omitted)");
  }
  bmathon->add_flag("--complete", ba.complete, "replace digons to get M_k*(q)");
  bmathon->add_option("--seed", ba.seed, "completion seed (default 0)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "transitive subtournament searches");
  for (const char* kind : {"exists", "count", "max"}) {
    auto* sub = search->add_subcommand(kind);
    sub->add_option("--k", sa.k)->required();
    sub->add_option("--q", sa.q)->required();
    sub->add_option("--m", sa.m, "target order");
    sub->add_option("--color", sa.color, "color restriction (0 = all colors)");
    sub->add_option("--graph", sa.graph, "paley | mathon | mathon-star");
    sub->add_option("--seed", sa.seed, "completion seed for mathon-star");
    if (std::string(kind) == "count") {
      sub->add_option("--method", sa.method, "brute | symmetric");
    }
  }

  ScanArgs sca;
  auto* scan_cmd = app.add_subcommand("scan", "largest admissible q with K_m(G_k(q)) = 0");
  scan_cmd->add_option("--k", sca.k)->required();
  scan_cmd->add_option("--m", sca.m)->required();
  scan_cmd->add_option("--q-max", sca.q_max)->required();
  scan_cmd->add_option("--direction", sca.direction, "desc (default) or asc")
      ->check(CLI::IsMember({"desc", "asc"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "structural and completion-bound checks");
  auto* vstruct = verify->add_subcommand("structure", "six structural checks on M_k(q)");
  vstruct->add_option("--k", va.k)->required();
  vstruct->add_option("--q", va.q)->required();
  auto* vthm = verify->add_subcommand("theorem", "completion bound evidence on M_k*(q)");
  vthm->add_option("--k", va.k)->required();
  vthm->add_option("--q", va.q)->required();
  vthm->add_option("--m", va.m)->required();
  vthm->add_option("--trials", va.trials, "random completions (default 100)");
  vthm->add_option("--seed", va.seed, "base seed (default 0)");

  BoundsArgs bo;
  auto* bounds = app.add_subcommand("bounds", "directed Ramsey lower bounds");
  auto* bderive = bounds->add_subcommand("derive", "derive R_t(m) lower bounds with provenance");
  bderive->add_option("--t-max", bo.t_max, "max color count (default 6)");
  bderive->add_option("--m-max", bo.m_max, "max order (default 10)");
  bderive->add_flag("--provenance", bo.provenance, "print full rule chains");
  auto* btables = bounds->add_subcommand("tables", "emit the bound tables");
  for (auto* sub : {bderive, btables}) {
    sub->add_option("--facts", bo.facts_path, "fact base JSON (default: built-in)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (finfo->parsed()) return run_field(g, fa);
    if (bpaley->parsed()) {
      ba.family = "paley";
      return run_build(g, ba);
    }
    if (bmathon->parsed()) {
      ba.family = "mathon";
      return run_build(g, ba);
    }
    for (const char* kind : {"exists", "count", "max"}) {
      if (search->got_subcommand(kind)) {
        sa.kind = kind;
        return run_search(g, sa);
      }
    }
    if (scan_cmd->parsed()) return run_scan(g, sca);
    if (vstruct->parsed()) {
      va.what = "structure";
      return run_verify(g, va);
    }
    if (vthm->parsed()) {
      va.what = "theorem";
      return run_verify(g, va);
    }
    if (bderive->parsed()) {
      bo.what = "derive";
      return run_bounds(g, bo);
    }
    if (btables->parsed()) {
      bo.what = "tables";
      return run_bounds(g, bo);
    }
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
