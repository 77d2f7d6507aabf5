#pragma once

// Catalog of all groups of small order up to isomorphism.
//
// Every group of order < 60 is solvable, so it has a normal subgroup N of
// prime index p and is generated by N and one element t with
//   t x t^-1 = alpha(x),   t^p = z,
// where alpha is an automorphism of N, alpha(z) = z and alpha^p is conjugation
// by z. Conversely every such (N, alpha, z) defines a group of order p|N|.
// The catalog realises each admissible triple as a table and keeps one
// representative per isomorphism class.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <mutex>
#include <semaphore>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "scc/group.hpp"
#include "scc/morphism.hpp"
#include "scc/subgroup.hpp"

namespace scc {

inline constexpr Index kCatalogCeiling = 32;

struct CatalogEntry {
  FiniteGroup group;
  Index order = 0;
  Fingerprint fingerprint;
  std::string tags;
  Index position = 0;  // 1-based rank within its order
};

using Catalog = std::vector<CatalogEntry>;

inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << v;
  return o.str();
}

namespace detail {

inline std::vector<Index> primes_dividing(Index n) {
  std::vector<Index> out;
  for (Index p = 2; p * p <= n; ++p) {
    if (n % p == 0) out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<Index> compose(std::vector<Index> const& f,
                                  std::vector<Index> const& g) {
  std::vector<Index> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
  return out;
}

/// Table of <N, t | t x t^-1 = alpha(x), t^p = z>; element x t^i has index
/// i |N| + x.
inline FiniteGroup cyclic_extension(FiniteGroup const& n,
                                    std::vector<Index> const& alpha, Index z,
                                    Index p) {
  Index const m = n.order();
  Index const size = m * p;
  // alpha^i for i < p
  std::vector<std::vector<Index>> powers{std::vector<Index>(m)};
  std::iota(powers[0].begin(), powers[0].end(), Index{0});
  for (Index i = 1; i < p; ++i) powers.push_back(compose(alpha, powers.back()));

  std::vector<Index> t(std::size_t(size) * size);
  std::vector<std::string> labels(size);
  for (Index a = 0; a < size; ++a) {
    Index ia = a / m, xa = a % m;
    labels[a] = n.label(xa) + (ia ? "t^" + std::to_string(ia) : std::string());
    for (Index b = 0; b < size; ++b) {
      Index ib = b / m, xb = b % m;
      Index x = n.product(xa, powers[ia][xb]);
      Index e = ia + ib;
      if (e >= p) {
        x = n.product(x, z);
        e -= p;
      }
      t[std::size_t(a) * size + b] = e * m + x;
    }
  }
  return FiniteGroup::from_flat(size, std::move(t), std::move(labels));
}

struct Candidate {
  FiniteGroup group;
  Fingerprint fp;
  std::string tags;
};

inline std::vector<CatalogEntry> groups_of_order(
    Index n, std::map<Index, std::vector<CatalogEntry>> const& smaller) {
  std::vector<Candidate> kept;
  std::map<Fingerprint, std::vector<std::size_t>> buckets;
  auto offer = [&](FiniteGroup g, std::string tags) {
    auto fp = fingerprint(g);
    auto& bucket = buckets[fp];
    for (std::size_t i : bucket)
      if (isomorphic(kept[i].group, g)) return;
    bucket.push_back(kept.size());
    kept.push_back({std::move(g), std::move(fp), std::move(tags)});
  };

  for (Index p : primes_dividing(n)) {
    auto it = smaller.find(n / p);
    if (it == smaller.end()) continue;
    for (auto const& base : it->second) {
      FiniteGroup const& ng = base.group;
      auto auts = automorphisms(ng);
      std::vector<std::vector<Index>> inner(ng.order());
      for (Index z = 0; z < ng.order(); ++z) {
        inner[z].resize(ng.order());
        for (Index x = 0; x < ng.order(); ++x) inner[z][x] = ng.conjugate(z, x);
      }
      for (std::size_t ai = 0; ai < auts.size(); ++ai) {
        auto const& alpha = auts[ai];
        auto pw = alpha;
        for (Index i = 1; i < p; ++i) pw = compose(alpha, pw);
        for (Index z = 0; z < ng.order(); ++z) {
          if (alpha[z] != z || pw != inner[z]) continue;
          FiniteGroup g;
          try {
            g = cyclic_extension(ng, alpha, z, p);
          } catch (GroupError const& e) {
            throw std::logic_error(
                "catalog: admissible extension failed validation (order " +
                std::to_string(n) + "): " + e.what());
          }
          offer(std::move(g), "ext(p=" + std::to_string(p) + ",N=" +
                                  std::to_string(ng.order()) + "#" +
                                  std::to_string(base.position) + ",aut=" +
                                  std::to_string(ai) + ",z=" +
                                  std::to_string(z) + ")");
        }
      }
    }
  }

  std::vector<std::pair<std::pair<Fingerprint, std::string>, std::size_t>> keys;
  for (std::size_t i = 0; i < kept.size(); ++i)
    keys.push_back({{kept[i].fp, to_text(kept[i].group)}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<CatalogEntry> out;
  for (auto const& [key, i] : keys) {
    out.push_back({kept[i].group, n, kept[i].fp, kept[i].tags,
                   static_cast<Index>(out.size() + 1)});
  }
  return out;
}

}  // namespace detail

/// All groups of order 2..max_order, one per isomorphism class, sorted by
/// (order, fingerprint, table). Orders are generated concurrently once the
/// orders they extend are done.
inline Catalog build_catalog(Index max_order = 31, unsigned jobs = 1) {
  if (max_order > kCatalogCeiling)
    throw std::invalid_argument("build_catalog: max_order above ceiling " +
                                std::to_string(kCatalogCeiling));
  std::map<Index, std::vector<CatalogEntry>> by_order;
  by_order[1] = {{FiniteGroup{}, 1, fingerprint(FiniteGroup{}), "trivial", 1}};
  std::mutex mu;
  std::counting_semaphore<64> slots(std::clamp<unsigned>(jobs, 1, 64));
  std::map<Index, std::shared_future<void>> done;
  for (Index n = 2; n <= max_order; ++n) {
    std::vector<std::shared_future<void>> deps;
    for (Index p : detail::primes_dividing(n))
      if (n / p > 1) deps.push_back(done.at(n / p));
    done[n] = std::async(std::launch::async, [n, deps, &by_order, &mu, &slots] {
                for (auto const& d : deps) d.get();
                slots.acquire();
                std::map<Index, std::vector<CatalogEntry>> snapshot;
                {
                  std::lock_guard lock(mu);
                  for (Index p : detail::primes_dividing(n))
                    snapshot[n / p] = by_order.at(n / p);
                }
                try {
                  auto groups = detail::groups_of_order(n, snapshot);
                  std::lock_guard lock(mu);
                  by_order[n] = std::move(groups);
                } catch (...) {
                  slots.release();
                  throw;
                }
                slots.release();
              }).share();
  }
  for (auto& [n, f] : done) f.get();
  Catalog out;
  for (auto& [n, groups] : by_order)
    if (n >= 2)
      for (auto& e : groups) out.push_back(std::move(e));
  return out;
}

inline std::vector<CatalogEntry> entries_of_order(Catalog const& c, Index n) {
  std::vector<CatalogEntry> out;
  for (auto const& e : c)
    if (e.order == n) out.push_back(e);
  return out;
}

inline std::string entry_id(CatalogEntry const& e) {
  return std::to_string(e.order) + "#" + std::to_string(e.position);
}

/// Hash over every entry's serialized table; changes whenever the catalog does.
inline std::string catalog_fingerprint(Catalog const& c) {
  std::uint64_t h = fnv1a("scc-catalog");
  for (auto const& e : c) h = fnv1a(to_text(e.group), h);
  return hex64(h);
}

struct CyclicExtensionClassification {
  struct Row {
    std::size_t entry;
    Subgroup witness;
  };
  std::vector<Row> cea;
  std::vector<std::size_t> exceptions;
};

inline CyclicExtensionClassification classify_cyclic_extensions(
    Catalog const& c) {
  CyclicExtensionClassification out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto r = is_cyclic_extension_of_abelian(c[i].group);
    if (r.holds)
      out.cea.push_back({i, *r.witness});
    else
      out.exceptions.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence: one group file per entry plus manifest.json.

inline void save_catalog(Catalog const& c, std::filesystem::path const& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["catalog_fingerprint"] = catalog_fingerprint(c);
  manifest["entries"] = nlohmann::json::array();
  for (auto const& e : c) {
    std::string file = "order" + std::to_string(e.order) + "_" +
                       std::to_string(e.position) + ".grp";
    std::ofstream(dir / file, std::ios::binary) << to_text(e.group);
    manifest["entries"].push_back({{"file", file},
                                   {"order", e.order},
                                   {"position", e.position},
                                   {"fingerprint", e.fingerprint.str()},
                                   {"tags", e.tags}});
  }
  std::ofstream(dir / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
}

/// Loads a saved catalog, revalidating every table and fingerprint.
inline Catalog load_catalog(std::filesystem::path const& dir) {
  std::ifstream mf(dir / "manifest.json", std::ios::binary);
  if (!mf) throw std::runtime_error("no manifest.json in " + dir.string());
  auto manifest = nlohmann::json::parse(mf);
  Catalog out;
  for (auto const& m : manifest.at("entries")) {
    std::ifstream gf(dir / m.at("file").get<std::string>(), std::ios::binary);
    if (!gf) throw std::runtime_error("missing group file " + m.at("file").get<std::string>());
    std::stringstream ss;
    ss << gf.rdbuf();
    auto g = from_text(ss.str());
    auto fp = fingerprint(g);
    if (fp.str() != m.at("fingerprint").get<std::string>())
      throw std::runtime_error("fingerprint mismatch for " + m.at("file").get<std::string>());
    out.push_back({g, g.order(), fp, m.at("tags").get<std::string>(),
                   m.at("position").get<Index>()});
  }
  if (catalog_fingerprint(out) != manifest.at("catalog_fingerprint").get<std::string>())
    throw std::runtime_error("catalog fingerprint mismatch in " + dir.string());
  return out;
}

}  // namespace scc
