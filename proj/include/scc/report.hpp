#pragma once

// JSON reports and the result cache.
//
// Every report has a "manifest" (command, parameters, tool version, catalog
// fingerprint, wall time) and a "verdict" section. The verdict section holds
// no timing, so identical runs give byte-identical verdict sections.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scc/catalog.hpp"
#include "scc/decider.hpp"
#include "scc/heisenberg.hpp"

namespace scc {

using Json = nlohmann::ordered_json;

inline constexpr char const* kToolVersion = "1.0.0";

inline Json to_json(std::span<Index const> t) { return Json(std::vector<Index>(t.begin(), t.end())); }

inline Json to_json(Certificate const& c) {
  return Json{{"twists", c.twists}, {"curve", c.curve}};
}

inline Json images_json(FiniteGroup const& g, std::span<Index const> t) {
  Json out = Json::object();
  for (unsigned i = 0; i < t.size(); ++i) out[to_string(Letter{i, false})] = g.label(t[i]);
  return out;
}

inline Json to_json(DecisionReport const& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"orbit_size", r.orbit_size},
         {"states_explored", r.states_explored},
         {"truncated", r.truncated},
         {"twist_set_complete", r.twist_set_complete}};
  j["depth_limit"] = r.depth_limit ? Json(*r.depth_limit) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  return j;
}

inline Json to_json(ScanReport const& r, FiniteGroup const& g) {
  Json orbits = Json::array();
  for (auto const& o : r.orbits) {
    Json row{{"representative", to_json(o.representative)},
             {"images", images_json(g, o.representative)},
             {"classes", o.classes},
             {"homs", o.homs},
             {"verdict", to_string(o.verdict)},
             {"truncated", o.truncated}};
    row["certificate"] = o.certificate ? to_json(*o.certificate) : Json(nullptr);
    row["separating_certificate"] =
        o.separating_certificate ? to_json(*o.separating_certificate) : Json(nullptr);
    orbits.push_back(std::move(row));
  }
  Json j{{"order", r.order},
         {"genus", r.genus},
         {"exists_nongeometric", r.exists_nongeometric},
         {"surjective_only", r.surjective_only},
         {"homs_scanned", r.homs_scanned},
         {"conjugation_classes", r.classes},
         {"orbits_geometric", r.geometric_orbits},
         {"orbits_nongeometric", r.nongeometric_orbits},
         {"orbits_inconclusive", r.inconclusive_orbits},
         {"twist_set_complete", r.twist_set_complete},
         {"reduction", ScanReport::kReduction}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["orbits"] = std::move(orbits);
  return j;
}

inline Json to_json(MinimalityRow const& r) {
  Json j{{"id", r.id},
         {"order", r.order},
         {"fingerprint", r.fingerprint},
         {"cea", r.cea},
         {"exists_nongeometric", r.exists_nongeometric},
         {"surjective_homs", r.surjective_homs},
         {"orbits", r.orbits},
         {"classes", r.classes},
         {"every_orbit_kills_separating", r.every_orbit_kills_separating}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

inline std::optional<MinimalityRow> minimality_row_from_json(Json const& j) {
  try {
    MinimalityRow r;
    r.id = j.at("id").get<std::string>();
    r.order = j.at("order").get<Index>();
    r.fingerprint = j.at("fingerprint").get<std::string>();
    r.cea = j.at("cea").get<bool>();
    r.exists_nongeometric = j.at("exists_nongeometric").get<bool>();
    r.surjective_homs = j.at("surjective_homs").get<std::uint64_t>();
    r.orbits = j.at("orbits").get<std::uint64_t>();
    r.classes = j.at("classes").get<std::uint64_t>();
    r.every_orbit_kills_separating = j.at("every_orbit_kills_separating").get<bool>();
    if (!j.at("witness").is_null()) r.witness = j.at("witness").get<std::vector<Index>>();
    return r;
  } catch (nlohmann::json::exception const&) {
    return std::nullopt;
  }
}

inline Json to_json(CassonReport const& c) {
  Json j{{"g", c.g},
         {"g_prime", c.g_prime.str()},
         {"base", c.base},
         {"exponent", c.exponent.str()},
         {"note", CassonReport::kNote}};
  j["order"] = c.order ? Json(c.order->str()) : Json(nullptr);
  return j;
}

inline Json to_json(GkOrder const& o, bool materialise) {
  Json j{{"base", o.base}, {"exponent", o.exponent}};
  j["order"] = materialise ? Json(o.value.str()) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::string catalog_fingerprint;
  double wall_seconds = 0;
  Json summary = Json::object();

  Json to_json() const {
    return Json{{"command", command},
                {"parameters", parameters},
                {"tool_version", kToolVersion},
                {"catalog_fingerprint", catalog_fingerprint},
                {"wall_seconds", wall_seconds},
                {"summary", summary}};
  }
};

inline Json make_report(RunManifest const& m, Json verdict) {
  return Json{{"manifest", m.to_json()}, {"verdict", std::move(verdict)}};
}

// ---------------------------------------------------------------------------

/// On-disk cache of verdict sections, keyed by (command, parameters, catalog
/// fingerprint, tool version). Disabled when no directory is configured.
class ResultCache {
 public:
  ResultCache() = default;
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Flag value wins over SCC_SIEVE_CACHE; neither set disables the cache.
  static ResultCache from_config(std::string const& flag) {
    if (!flag.empty()) return ResultCache(flag);
    if (char const* env = std::getenv("SCC_SIEVE_CACHE"); env && *env) return ResultCache(env);
    return {};
  }

  bool enabled() const noexcept { return !dir_.empty(); }
  std::filesystem::path const& dir() const noexcept { return dir_; }

  static std::string key(std::string const& command, Json const& params,
                         std::string const& catalog_fp) {
    std::string material = command + "\n" + params.dump() + "\n" + catalog_fp + "\n" + kToolVersion;
    return command + "-" + hex64(fnv1a(material));
  }

  std::optional<Json> load(std::string const& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
    if (!in) return std::nullopt;
    try {
      return Json::parse(in);
    } catch (nlohmann::json::exception const&) {
      return std::nullopt;
    }
  }

  void store(std::string const& key, Json const& value) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    auto tmp = dir_ / (key + ".json.tmp");
    std::ofstream(tmp, std::ios::binary) << value.dump(1) << "\n";
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
  }

 private:
  std::filesystem::path dir_;
};

/// Cached minimality rows are reused only when their id and fingerprint still
/// match the catalog entry; everything else is recomputed.
struct CachedScan {
  std::vector<MinimalityRow> rows;
  std::size_t reused = 0;
  std::size_t computed = 0;
};

inline CachedScan minimality_scan_cached(Catalog const& catalog, unsigned genus,
                                         SearchLimits limits, unsigned jobs,
                                         ResultCache const& cache, std::string const& key) {
  CachedScan out;
  out.rows.resize(catalog.size());
  std::vector<char> have(catalog.size(), 0);
  if (auto j = cache.load(key); j && j->contains("rows") && (*j)["rows"].is_array()) {
    std::map<std::string, MinimalityRow> by_id;
    for (auto const& rj : (*j)["rows"])
      if (auto r = minimality_row_from_json(rj)) by_id.emplace(r->id, *r);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      auto it = by_id.find(entry_id(catalog[i]));
      if (it != by_id.end() && it->second.fingerprint == catalog[i].fingerprint.str() &&
          it->second.order == catalog[i].order) {
        out.rows[i] = it->second;
        out.rows[i].tags = catalog[i].tags;
        have[i] = 1;
        ++out.reused;
      }
    }
  }
  Catalog todo;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (!have[i]) {
      todo.push_back(catalog[i]);
      where.push_back(i);
    }
  auto fresh = minimality_scan(todo, genus, limits, jobs);
  for (std::size_t i = 0; i < fresh.size(); ++i) out.rows[where[i]] = std::move(fresh[i]);
  out.computed = fresh.size();
  if (cache.enabled() && out.computed > 0) {
    Json rows = Json::array();
    for (auto const& r : out.rows) rows.push_back(to_json(r));
    cache.store(key, Json{{"rows", rows}});
  }
  return out;
}

}  // namespace scc
