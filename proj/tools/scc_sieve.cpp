// Command-line front end. JSON reports go to stdout, logs to stderr.
// Exit codes: 0 ok, 1 refutation, 2 budget exceeded, 3 bad input.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scc/catalog.hpp"
#include "scc/decider.hpp"
#include "scc/heisenberg.hpp"
#include "scc/report.hpp"

namespace {

using namespace scc;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kBudget = 2;
constexpr int kBadInput = 3;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  unsigned genus = 2;
  bool surjective_only = true;
  std::uint64_t budget = SearchLimits{}.state_cap;
  std::uint64_t enumeration_budget = SearchLimits{}.enumeration_budget;
  int depth = -1;
  unsigned jobs = 1;
  std::string catalog_dir;
  std::string cache_dir;
  bool mutate = false;
  unsigned only_order = 0;
  unsigned upto = 31;
  bool include_g2 = false;
  std::string hom;
};

void log(std::string const& msg) { std::cerr << "[scc-sieve] " << msg << "\n"; }

SearchLimits limits_of(Options const& o) {
  SearchLimits l;
  l.state_cap = o.budget;
  l.enumeration_budget = o.enumeration_budget;
  if (o.depth >= 0) l.depth_cap = static_cast<unsigned>(o.depth);
  return l;
}

Json limits_json(Options const& o) {
  return Json{{"budget", o.budget},
              {"enumeration_budget", o.enumeration_budget},
              {"depth", o.depth >= 0 ? Json(o.depth) : Json(nullptr)}};
}

Catalog obtain_catalog(Options const& o, Index upto) {
  if (!o.catalog_dir.empty() && std::filesystem::exists(std::filesystem::path(o.catalog_dir) / "manifest.json")) {
    log("loading catalog from " + o.catalog_dir);
    Catalog all = load_catalog(o.catalog_dir);
    Catalog out;
    for (auto& e : all)
      if (e.order <= upto) out.push_back(std::move(e));
    Index max_loaded = 1;
    for (auto const& e : all) max_loaded = std::max(max_loaded, e.order);
    if (max_loaded >= upto) return out;
    log("saved catalog stops at order " + std::to_string(max_loaded) + ", rebuilding");
  }
  log("building catalog of orders 2.." + std::to_string(upto));
  auto c = build_catalog(upto, o.jobs);
  if (!o.catalog_dir.empty()) save_catalog(c, o.catalog_dir);
  return c;
}

/// Catalog id "n#k", construction name, or path to a table file.
FiniteGroup parse_group(Options const& o, std::string& canonical_name) {
  std::string const& s = o.group;
  if (s.empty()) throw BadInput("--group is required");
  canonical_name = s;
  if (auto hash = s.find('#'); hash != std::string::npos && s.find('/') == std::string::npos) {
    Index n = 0, k = 0;
    try {
      n = static_cast<Index>(std::stoul(s.substr(0, hash)));
      k = static_cast<Index>(std::stoul(s.substr(hash + 1)));
    } catch (std::exception const&) {
      throw BadInput("bad catalog id '" + s + "'");
    }
    if (n < 2 || n > 31) throw BadInput("catalog id order must be in 2..31");
    auto entries = entries_of_order(obtain_catalog(o, n), n);
    if (k < 1 || k > entries.size())
      throw BadInput("order " + std::to_string(n) + " has " + std::to_string(entries.size()) + " groups");
    return entries[k - 1].group;
  }
  if (std::filesystem::is_regular_file(s)) {
    std::ifstream in(s, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return from_text(ss.str());
    } catch (GroupError const& e) {
      throw BadInput(std::string("table file: ") + e.what());
    }
  }
  try {
    return named_group(s);
  } catch (std::invalid_argument const& e) {
    throw BadInput(e.what());
  } catch (std::length_error const& e) {
    throw BudgetError(e.what());
  }
}

/// "3,0,5,1", "x1=3 y1=0 ..." (element indices or labels), or "psi" for the
/// standard surjection onto a Heisenberg construction.
std::vector<Index> parse_hom(FiniteGroup const& g, std::string const& group_name, unsigned genus,
                             std::string text) {
  if (text == "psi") {
    if (group_name != "G2" && group_name.rfind("Gk:", 0) != 0)
      throw BadInput("--hom psi needs --group G2 or Gk:k=..,g=..");
    unsigned k = 2;
    while (HeisenbergSpec{k, genus}.order() < g.order()) ++k;
    if (HeisenbergSpec{k, genus}.order() != g.order())
      throw BadInput("--hom psi: group order does not match genus " + std::to_string(genus));
    HeisenbergArith h({k, genus});
    std::vector<Index> out;
    for (auto const& t : h.psi_images()) out.push_back(static_cast<Index>(h.index(t)));
    return out;
  }
  int depth = 0;
  for (auto& c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) c = ' ';
  }
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() != 2 * genus)
    throw BadInput("--hom needs " + std::to_string(2 * genus) + " images");
  std::vector<Index> out;
  for (unsigned i = 0; i < tokens.size(); ++i) {
    std::string t = tokens[i];
    if (auto eq = t.find('='); eq != std::string::npos) {
      if (t.substr(0, eq) != to_string(Letter{i, false}))
        throw BadInput("--hom images must be listed in the order x1 y1 x2 y2 ...");
      t = t.substr(eq + 1);
    }
    std::optional<Index> v;
    if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos) {
      v = static_cast<Index>(std::stoul(t));
    } else {
      for (Index e = 0; e < g.order(); ++e)
        if (g.label(e) == t) v = e;
    }
    if (!v || *v >= g.order()) throw BadInput("unknown element '" + t + "'");
    out.push_back(*v);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(Json const& j) { std::cout << j.dump(2) << std::endl; }

// ---------------------------------------------------------------------------

int cmd_verify_g2(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  RunManifest m{"verify-g2", Json{{"mutate", o.mutate}, {"limits", limits_json(o)}}, "none"};
  auto g2 = build_heisenberg(2, 2);
  auto psi = build_psi(2, 2);
  auto centre = center(g2);
  auto derived = derived_subgroup(g2);
  auto comm = commutator_identity_check(g2, {2, 2});
  auto inter = intersection_formula_check(2, 2);
  std::vector<Index> images = psi.images();
  if (o.mutate) {
    // y1 -> 1 alone breaks the relator ([x2,y2] is central and nontrivial), so
    // y2 -> 1 as well.
    images[y(1).gen] = g2.identity_index();
    images[y(2).gen] = g2.identity_index();
  }
  SurfaceHom h(g2, 2, images);
  auto rep = is_geometric(h, limits_of(o));
  bool certificate_ok = !rep.certificate || replay(*rep.certificate, h);
  bool ok = g2.order() == 32 && centre.order() == 2 && centre.members == derived.members &&
            comm.holds && inter.holds && rep.verdict == Verdict::Nongeometric && certificate_ok;
  Json verdict{{"group_order", g2.order()},
               {"center_order", centre.order()},
               {"center_equals_derived", centre.members == derived.members},
               {"commutator_identity", Json{{"holds", comm.holds}, {"pairs", comm.pairs}}},
               {"intersection_formula", Json{{"holds", inter.holds}, {"pairs", inter.pairs}}},
               {"hom", images_json(g2, images)},
               {"mutated", o.mutate},
               {"decision", to_json(rep)},
               {"certificate_replays", certificate_ok},
               {"expected", "nongeometric"},
               {"passed", ok},
               {"notes",
                Json::array({"product formula term b2+a2' read as a2+a2'",
                             "psi(y_i) = -e_{b_i}; equal to e_{b_i} at k = 2"})}};
  m.wall_seconds = seconds_since(t0);
  m.summary = Json{{"verdict", to_string(rep.verdict)}, {"passed", ok}};
  emit(make_report(m, verdict));
  if (!ok) log("verify-g2: expected a nongeometric kernel, got " + std::string(to_string(rep.verdict)));
  return ok ? kOk : kRefuted;
}

int cmd_minimality(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  if (o.upto < 2 || o.upto > 31) throw BadInput("--upto must be in 2..31");
  if (o.only_order && (o.only_order < 2 || o.only_order > o.upto))
    throw BadInput("--only-order must be in 2..--upto");
  Catalog full = obtain_catalog(o, o.upto);
  Catalog cat;
  for (auto const& e : full)
    if (!o.only_order || e.order == o.only_order) cat.push_back(e);
  Json params{{"genus", o.genus},
              {"upto", o.upto},
              {"only_order", o.only_order ? Json(o.only_order) : Json(nullptr)},
              {"include_g2", o.include_g2},
              {"limits", limits_json(o)}};
  RunManifest m{"minimality", params, catalog_fingerprint(full)};
  auto cache = ResultCache::from_config(o.cache_dir);
  auto key = ResultCache::key("minimality", params, m.catalog_fingerprint);
  log("scanning " + std::to_string(cat.size()) + " catalog entries at genus " +
      std::to_string(o.genus) + " with " + std::to_string(o.jobs) + " job(s)");
  auto scan = minimality_scan_cached(cat, o.genus, limits_of(o), o.jobs, cache, key);
  if (cache.enabled())
    log("cache: " + std::to_string(scan.reused) + " rows reused, " +
        std::to_string(scan.computed) + " computed");

  Json rows = Json::array();
  std::size_t refuted = 0, cea_rows = 0, cea_consistent = 0;
  Json exceptions = Json::array();
  for (auto const& r : scan.rows) {
    rows.push_back(to_json(r));
    if (r.exists_nongeometric) {
      ++refuted;
      log("REFUTATION: " + r.id + " has a nongeometric surjection");
    }
    if (r.cea) {
      ++cea_rows;
      if (!r.exists_nongeometric && r.every_orbit_kills_separating) ++cea_consistent;
    } else {
      exceptions.push_back(r.id);
    }
  }
  if (o.include_g2) {
    auto g2 = build_heisenberg(2, 2);
    CatalogEntry e{g2, 32, fingerprint(g2), "G2", 0};
    auto row = minimality_row(e, o.genus, limits_of(o));
    row.id = "G2";
    rows.push_back(to_json(row));
  }
  std::size_t true_rows = 0;
  for (auto const& r : rows) true_rows += r["exists_nongeometric"].get<bool>();
  Json verdict{{"genus", o.genus},
               {"entries", cat.size()},
               {"rows", rows},
               {"true_rows", true_rows},
               {"catalog_refutations", refuted},
               {"cea_rows", cea_rows},
               {"cea_rows_consistent", cea_consistent},
               {"non_cea_rows", exceptions},
               {"reduction", ScanReport::kReduction}};
  m.wall_seconds = seconds_since(t0);
  m.summary = Json{{"line", std::to_string(cat.size()) + "-entry catalog scan"},
                   {"catalog_refutations", refuted},
                   {"true_rows", true_rows}};
  emit(make_report(m, verdict));
  return refuted == 0 && cea_consistent == cea_rows ? kOk : kRefuted;
}

int cmd_decide(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::string name;
  auto g = parse_group(o, name);
  if (o.genus < 1) throw BadInput("--genus must be >= 1");
  Json params{{"group", name},
              {"genus", o.genus},
              {"surjective_only", o.surjective_only},
              {"limits", limits_json(o)}};
  RunManifest m{"decide", params, "none"};
  Json verdict{{"group_order", g.order()}, {"group_fingerprint", fingerprint(g).str()}};
  if (!o.hom.empty()) {
    params["hom"] = o.hom;
    m.parameters = params;
    auto images = parse_hom(g, name, o.genus, o.hom);
    std::optional<SurfaceHom> h;
    try {
      h.emplace(g, o.genus, images);
    } catch (std::invalid_argument const& e) {
      throw BadInput(e.what());
    }
    auto rep = is_geometric(*h, limits_of(o));
    verdict["hom"] = images_json(g, images);
    verdict["decision"] = to_json(rep);
    if (rep.certificate) verdict["certificate_replays"] = replay(*rep.certificate, *h);
    m.summary = Json{{"verdict", to_string(rep.verdict)}};
  } else {
    auto rep = scan_group(g, o.genus, limits_of(o), o.surjective_only);
    verdict["scan"] = to_json(rep, g);
    m.summary = Json{{"exists_nongeometric", rep.exists_nongeometric},
                     {"orbits", rep.orbits.size()},
                     {"inconclusive_orbits", rep.inconclusive_orbits}};
  }
  m.wall_seconds = seconds_since(t0);
  emit(make_report(m, verdict));
  return kOk;
}

int cmd_orders(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  unsigned g = o.genus;
  if (g < 1) throw BadInput("--genus must be >= 1");
  RunManifest m{"orders", Json{{"genus", g}}, "none"};
  auto c = casson_report(g);
  Json verdict{{"genus", g}, {"casson", to_json(c)}};
  if (g >= 2) {
    auto gk = gk_order(g);
    verdict["gk"] = to_json(gk, gk.exponent * std::log2(double(g)) <= 256);
    verdict["gk_smaller"] = gk_smaller_than_casson(g);
  } else {
    verdict["gk"] = Json{{"degenerate", true}, {"torus_group", "Klein4"}, {"order", "4"}};
  }
  m.wall_seconds = seconds_since(t0);
  m.summary = Json{{"casson_exponent", c.exponent.str()}};
  emit(make_report(m, verdict));
  return kOk;
}

int cmd_catalog(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  if (o.upto < 2 || o.upto > 31) throw BadInput("--upto must be in 2..31");
  auto cat = obtain_catalog(o, o.upto);
  RunManifest m{"catalog", Json{{"upto", o.upto}}, catalog_fingerprint(cat)};
  std::map<Index, std::size_t> counts;
  Json entries = Json::array();
  for (auto const& e : cat) {
    ++counts[e.order];
    entries.push_back(Json{{"id", entry_id(e)}, {"fingerprint", e.fingerprint.str()}, {"tags", e.tags}});
  }
  Json per_order = Json::object();
  for (auto [n, k] : counts) per_order[std::to_string(n)] = k;
  auto cls = classify_cyclic_extensions(cat);
  Json exc = Json::array();
  for (auto i : cls.exceptions) exc.push_back(entry_id(cat[i]));
  Json verdict{{"total", cat.size()},
               {"per_order", per_order},
               {"cea_count", cls.cea.size()},
               {"non_cea", exc},
               {"entries", entries}};
  m.wall_seconds = seconds_since(t0);
  m.summary = Json{{"total", cat.size()}, {"non_cea", exc}};
  emit(make_report(m, verdict));
  return kOk;
}

int cmd_nielsen(Options const& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, FiniteGroup>> groups;
  if (!o.group.empty()) {
    std::string name;
    groups.push_back({o.group, parse_group(o, name)});
  } else {
    for (Index n = 1; n <= o.upto; ++n) groups.push_back({"Z" + std::to_string(n), cyclic(n)});
  }
  RunManifest m{"nielsen-check",
                Json{{"group", o.group.empty() ? Json(nullptr) : Json(o.group)},
                     {"upto", o.upto},
                     {"genus", o.genus},
                     {"limits", limits_json(o)}},
                "none"};
  Json rows = Json::array();
  bool all = true;
  for (auto const& [name, g] : groups) {
    if (!is_cyclic(g)) throw BadInput(name + " is not cyclic");
    auto r = nielsen_normal_form_check(g, o.genus, limits_of(o));
    all = all && r.holds;
    Json row{{"group", name}, {"holds", r.holds}, {"orbits", r.orbits}};
    row["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  m.wall_seconds = seconds_since(t0);
  m.summary = Json{{"holds", all}};
  emit(make_report(m, Json{{"rows", rows}, {"holds", all}}));
  return all ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite quotients of surface groups with nongeometric kernel"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "state cap for one orbit search");
    c->add_option("--enumeration-budget", o.enumeration_budget, "cap on enumerated prefix tuples");
    c->add_option("--depth", o.depth, "depth cap for orbit search (default: none at genus <= 2, 20 above)");
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    c->add_option("--catalog-dir", o.catalog_dir, "load/save the catalog here");
    c->add_option("--cache-dir", o.cache_dir, "result cache directory (overrides SCC_SIEVE_CACHE)");
  };
  auto* verify = app.add_subcommand("verify-g2", "reproduce the order-32 example end to end");
  common(verify);
  verify->add_flag("--mutate", o.mutate, "send y1 and y2 to the identity");

  auto* minimality = app.add_subcommand("minimality", "scan every catalog group");
  common(minimality);
  minimality->add_option("--genus", o.genus, "surface genus")->check(CLI::Range(1u, 8u));
  minimality->add_option("--upto", o.upto, "largest order scanned");
  minimality->add_option("--only-order", o.only_order, "scan one order only");
  minimality->add_flag("--include-g2", o.include_g2, "append the order-32 example as an extra row");

  auto* decide = app.add_subcommand("decide", "scan one group, or decide one homomorphism");
  common(decide);
  decide->add_option("--group", o.group, "catalog id n#k, construction name, or table file")->required();
  decide->add_option("--genus", o.genus, "surface genus")->check(CLI::Range(1u, 8u));
  decide->add_option("--surjective-only", o.surjective_only, "scan surjections only (default true)");
  decide->add_option("--hom", o.hom, "images of x1 y1 ... as indices or labels, or psi");

  auto* orders = app.add_subcommand("orders", "order formulas for a genus");
  orders->add_option("--genus,-g", o.genus, "surface genus")->check(CLI::Range(1u, 64u));

  auto* catalog = app.add_subcommand("catalog", "build (and optionally save) the catalog");
  common(catalog);
  catalog->add_option("--upto", o.upto, "largest order");

  auto* nielsen = app.add_subcommand("nielsen-check", "normal form for surjections onto cyclic groups");
  common(nielsen);
  nielsen->add_option("--group", o.group, "a cyclic group (default: Z1..Z<upto>)");
  nielsen->add_option("--upto", o.upto, "largest cyclic order")->default_val(12);
  nielsen->add_option("--genus", o.genus, "surface genus")->check(CLI::Range(1u, 4u));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*verify) return cmd_verify_g2(o);
    if (*minimality) return cmd_minimality(o);
    if (*decide) return cmd_decide(o);
    if (*orders) return cmd_orders(o);
    if (*catalog) return cmd_catalog(o);
    if (*nielsen) return cmd_nielsen(o);
  } catch (BudgetError const& e) {
    log(std::string("budget exceeded: ") + e.what());
    return kBudget;
  } catch (BadInput const& e) {
    log(std::string("bad input: ") + e.what());
    return kBadInput;
  } catch (GroupError const& e) {
    log(std::string("bad group: ") + e.what());
    return kBadInput;
  } catch (std::invalid_argument const& e) {
    log(std::string("bad input: ") + e.what());
    return kBadInput;
  } catch (std::exception const& e) {
    log(std::string("error: ") + e.what());
    return kBadInput;
  }
  return kBadInput;
}
