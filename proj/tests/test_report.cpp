#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "scc/report.hpp"

using namespace scc;

namespace {

std::filesystem::path fresh_dir(std::string const& name) {
  auto d = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("verdict sections are deterministic", "[report]") {
  auto g = build_heisenberg(2, 2);
  auto a = to_json(scan_group(g, 2), g);
  auto b = to_json(scan_group(g, 2), g);
  CHECK(a.dump() == b.dump());
  CHECK(a["exists_nongeometric"] == true);
  CHECK(a["orbits"].size() == 16);
  CHECK(a["witness"].is_array());

  RunManifest m1{"decide", Json{{"group", "G2"}}, "fp", 1.5, {}};
  RunManifest m2{"decide", Json{{"group", "G2"}}, "fp", 9.0, {}};
  auto r1 = make_report(m1, a), r2 = make_report(m2, b);
  CHECK(r1["verdict"].dump() == r2["verdict"].dump());
  CHECK(r1["manifest"]["tool_version"] == kToolVersion);
  CHECK(r1["manifest"]["wall_seconds"] != r2["manifest"]["wall_seconds"]);
}

TEST_CASE("decision reports serialise their fields", "[report]") {
  auto psi = build_psi(2, 2);
  auto j = to_json(is_geometric(psi));
  CHECK(j["verdict"] == "nongeometric");
  CHECK(j["orbit_size"] == 720);
  CHECK(j["certificate"].is_null());
  CHECK(j["depth_limit"].is_null());

  auto z2 = cyclic(2);
  auto g = to_json(is_geometric(SurfaceHom(z2, 2, {1, 0, 0, 0})));
  CHECK(g["verdict"] == "geometric");
  CHECK(g["certificate"]["curve"].is_string());

  auto c = to_json(casson_report(2));
  CHECK(c["exponent"] == "38");
  CHECK(c["g_prime"] == "17");
  CHECK(to_json(casson_report(5))["order"].is_null());
  CHECK(to_json(gk_order(3), true)["order"] == "2187");
  CHECK(to_json(gk_order(3), false)["order"].is_null());

  auto imgs = images_json(psi.target(), psi.images());
  CHECK(imgs["x1"] == "(1,0,0,0;0)");
}

TEST_CASE("minimality rows round-trip through JSON", "[report]") {
  MinimalityRow r;
  r.id = "8#3";
  r.order = 8;
  r.fingerprint = "n=8;orders=1^1,2^5,4^2;Z=2;D=2";
  r.cea = true;
  r.surjective_homs = 1234;
  r.orbits = 3;
  r.classes = 77;
  r.every_orbit_kills_separating = true;
  r.witness = std::vector<Index>{1, 2, 3, 4};
  auto back = minimality_row_from_json(to_json(r));
  REQUIRE(back);
  CHECK(back->id == r.id);
  CHECK(back->fingerprint == r.fingerprint);
  CHECK(back->witness == r.witness);
  CHECK(back->surjective_homs == 1234);
  Json broken = to_json(r);
  broken.erase("classes");
  CHECK_FALSE(minimality_row_from_json(broken));
  broken = to_json(r);
  broken["order"] = "eight";
  CHECK_FALSE(minimality_row_from_json(broken));
}

TEST_CASE("cache keys depend on every input", "[report][cache]") {
  Json p{{"genus", 2}, {"upto", 12}};
  auto k = ResultCache::key("minimality", p, "abc");
  CHECK(k.rfind("minimality-", 0) == 0);
  CHECK(k == ResultCache::key("minimality", p, "abc"));
  CHECK(k != ResultCache::key("minimality", p, "abd"));
  CHECK(k != ResultCache::key("minimality", Json{{"genus", 2}, {"upto", 11}}, "abc"));
  CHECK(k != ResultCache::key("decide", p, "abc"));
}

TEST_CASE("cache configuration: flag wins over environment", "[report][cache]") {
  ::unsetenv("SCC_SIEVE_CACHE");
  CHECK_FALSE(ResultCache::from_config("").enabled());
  ::setenv("SCC_SIEVE_CACHE", "/tmp/from-env", 1);
  CHECK(ResultCache::from_config("").dir() == "/tmp/from-env");
  CHECK(ResultCache::from_config("/tmp/from-flag").dir() == "/tmp/from-flag");
  ::unsetenv("SCC_SIEVE_CACHE");

  ResultCache off;
  off.store("k", Json{{"a", 1}});
  CHECK_FALSE(off.load("k"));
}

TEST_CASE("cache store and load", "[report][cache]") {
  auto dir = fresh_dir("scc-cache-store");
  ResultCache cache(dir);
  CHECK_FALSE(cache.load("missing"));
  cache.store("k", Json{{"a", 1}});
  auto j = cache.load("k");
  REQUIRE(j);
  CHECK((*j)["a"] == 1);
  CHECK_FALSE(std::filesystem::exists(dir / "k.json.tmp"));
  std::ofstream(dir / "bad.json") << "{not json";
  CHECK_FALSE(cache.load("bad"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cached minimality scans revalidate rows", "[report][cache]") {
  auto dir = fresh_dir("scc-cache-scan");
  ResultCache cache(dir);
  auto catalog = build_catalog(8);
  auto key = ResultCache::key("minimality", Json{{"upto", 8}}, catalog_fingerprint(catalog));

  auto first = minimality_scan_cached(catalog, 2, {}, 1, cache, key);
  CHECK(first.reused == 0);
  CHECK(first.computed == catalog.size());
  auto second = minimality_scan_cached(catalog, 2, {}, 1, cache, key);
  CHECK(second.reused == catalog.size());
  CHECK(second.computed == 0);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    CHECK(to_json(first.rows[i]).dump() == to_json(second.rows[i]).dump());
    CHECK(second.rows[i].tags == catalog[i].tags);
  }

  // stale and malformed rows are recomputed, the rest reused
  auto j = *cache.load(key);
  j["rows"][2]["fingerprint"] = "stale";
  j["rows"][3].erase("orbits");
  cache.store(key, j);
  auto third = minimality_scan_cached(catalog, 2, {}, 1, cache, key);
  CHECK(third.reused == catalog.size() - 2);
  CHECK(third.computed == 2);
  for (std::size_t i = 0; i < catalog.size(); ++i)
    CHECK(to_json(first.rows[i]).dump() == to_json(third.rows[i]).dump());

  // disabled cache always computes
  auto none = minimality_scan_cached(catalog, 2, {}, 1, ResultCache{}, key);
  CHECK(none.computed == catalog.size());
  std::filesystem::remove_all(dir);
}
