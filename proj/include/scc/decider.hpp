#pragma once

// Geometric-kernel decision by orbit search.
//
// A homomorphism phi has geometric kernel iff some simple closed curve lies in
// its kernel. Every nonseparating simple closed curve is the image of x1 under
// a mapping class, and every separating one is the image of some
// c_m = [x1,y1]...[xm,ym]. So phi is geometric iff the orbit of phi under
// precomposition with mapping classes contains a homomorphism killing x1 or
// some c_m. Kernels are invariant under inner automorphisms of the target, so
// the search runs on lexicographically least conjugation representatives.
//
// The orbit is explored breadth-first under the twist generators and their
// inverses. A closed orbit without a hit is reported nongeometric only when
// the twist set is known to generate the mapping class group (genus <= 2).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "scc/catalog.hpp"
#include "scc/group.hpp"
#include "scc/hom.hpp"
#include "scc/subgroup.hpp"
#include "scc/twist.hpp"
#include "scc/word.hpp"

namespace scc {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { Geometric, Nongeometric, Inconclusive };

inline char const* to_string(Verdict v) {
  switch (v) {
    case Verdict::Geometric: return "geometric";
    case Verdict::Nongeometric: return "nongeometric";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct NamedCurve {
  std::string name;
  SurfaceWord word;
  bool separating = false;
};

/// x1, and c_m for m = 1..floor(g/2) (or 1..g-1 with `all_separating`).
/// c_m and c_{g-m} bound homeomorphic subsurfaces, so half the range covers
/// every separating type.
struct StandardCurveSet {
  unsigned genus = 1;
  std::vector<NamedCurve> curves;

  static StandardCurveSet standard(unsigned genus, bool all_separating = false) {
    StandardCurveSet s;
    s.genus = genus;
    s.curves.push_back({"x1", word(genus, {x(1)}), false});
    unsigned top = all_separating ? genus - 1 : genus / 2;
    for (unsigned m = 1; m <= top; ++m)
      s.curves.push_back({"c" + std::to_string(m), commutator_prefix(genus, m), true});
    return s;
  }
};

struct Certificate {
  std::vector<std::string> twists;  // applied to the input, in order
  std::string curve;                // standard curve killed afterwards
};

struct DecisionReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;
  std::uint64_t orbit_size = 0;
  std::uint64_t states_explored = 0;
  bool truncated = false;
  std::optional<unsigned> depth_limit;
  bool twist_set_complete = true;
};

struct SearchLimits {
  std::uint64_t state_cap = 5'000'000;
  /// Unset: unlimited at genus <= 2, 20 at genus >= 3.
  std::optional<unsigned> depth_cap;
  /// Upper bound on the number of prefix tuples scanned by enumeration.
  std::uint64_t enumeration_budget = 200'000'000;
  bool all_separating = false;

  std::optional<unsigned> depth_for(unsigned genus) const {
    if (depth_cap) return depth_cap;
    if (genus >= 3) return 20u;
    return std::nullopt;
  }
};

/// Replays a certificate: applies the named twists to h in order and
/// evaluates the named standard curve.
inline bool replay(Certificate const& c, SurfaceHom const& h) {
  auto twists = twist_generators(h.genus());
  SurfaceHom cur = h;
  for (auto const& name : c.twists) {
    auto it = std::find_if(twists.twists.begin(), twists.twists.end(),
                           [&](TwistAutomorphism const& t) { return t.name() == name; });
    if (it == twists.twists.end()) return false;
    cur = apply(*it, cur);
  }
  auto curves = StandardCurveSet::standard(h.genus(), true);
  for (auto const& nc : curves.curves)
    if (nc.name == c.curve) return evaluate(nc.word, cur) == cur.target().identity();
  return false;
}

/// Breadth-first exploration of twist orbits of conjugation classes for one
/// target group and genus.
class OrbitSearch {
 public:
  using Key = unsigned __int128;

  struct KeyHash {
    std::size_t operator()(Key k) const noexcept {
      auto lo = static_cast<std::uint64_t>(k);
      auto hi = static_cast<std::uint64_t>(k >> 64);
      std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6));
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  struct Result {
    std::uint64_t size = 0;
    bool closed = false;        // every reachable class was visited
    bool truncated = false;     // state or depth cap hit
    std::optional<std::uint32_t> first_hit;        // node index
    std::optional<std::uint32_t> first_separating;
    std::optional<std::uint32_t> first_nonseparating;
    std::optional<std::uint32_t> first_match;      // custom predicate
    std::string first_hit_curve;
    std::string first_separating_curve;
  };

  OrbitSearch(FiniteGroup target, unsigned genus, SearchLimits limits = {})
      : g_(std::move(target)),
        genus_(genus),
        limits_(limits),
        canon_(g_),
        twists_(twist_generators(genus)),
        curves_(StandardCurveSet::standard(genus, limits.all_separating)) {
    long double space = 1;
    for (unsigned i = 0; i < 2 * genus_; ++i) space *= g_.order();
    if (space >= 3.0e38L)
      throw BudgetError("state space |G|^(2g) too large to index");
    for (auto const& t : twists_.twists) {
      std::vector<std::vector<Letter>> imgs;
      for (auto const& w : t.images()) imgs.push_back(w.letters());
      compiled_.push_back(std::move(imgs));
    }
  }

  FiniteGroup const& target() const noexcept { return g_; }
  unsigned genus() const noexcept { return genus_; }
  TwistSet const& twists() const noexcept { return twists_; }
  StandardCurveSet const& curves() const noexcept { return curves_; }
  Canonicalizer const& canonicalizer() const noexcept { return canon_; }
  SearchLimits const& limits() const noexcept { return limits_; }

  Key key(std::span<Index const> t) const {
    Key k = 0;
    for (auto it = t.rbegin(); it != t.rend(); ++it) k = k * g_.order() + *it;
    return k;
  }

  void canonicalize(std::span<Index> t) const { canon_.canonicalize(t); }

  /// Explores the orbit of the canonical tuple `start`. Stops at the first
  /// standard-curve hit when `stop_at_hit`. `match`, when given, records the
  /// first class satisfying it.
  Result explore(std::vector<Index> const& start, bool stop_at_hit,
                 std::function<bool(std::span<Index const>)> const& match = {}) {
    unsigned const w = 2 * genus_;
    auto depth_cap = limits_.depth_for(genus_);
    nodes_.clear();
    parent_.clear();
    via_.clear();
    depth_.clear();
    index_.clear();
    auto add = [&](std::span<Index const> t, std::uint32_t parent, std::uint16_t via,
                   std::uint16_t depth) {
      index_.emplace(key(t), static_cast<std::uint32_t>(parent_.size()));
      nodes_.insert(nodes_.end(), t.begin(), t.end());
      parent_.push_back(parent);
      via_.push_back(via);
      depth_.push_back(depth);
    };
    add(start, std::numeric_limits<std::uint32_t>::max(), 0, 0);

    Result r;
    std::vector<Index> child(w);
    bool capped = false;
    for (std::uint32_t i = 0; i < parent_.size(); ++i) {
      std::span<Index const> t(nodes_.data() + std::size_t(i) * w, w);
      for (auto const& c : curves_.curves) {
        if (evaluate_images(g_, t, c.word.letters()) != g_.identity_index()) continue;
        if (!r.first_hit) {
          r.first_hit = i;
          r.first_hit_curve = c.name;
        }
        if (c.separating && !r.first_separating) {
          r.first_separating = i;
          r.first_separating_curve = c.name;
        }
        if (!c.separating && !r.first_nonseparating) r.first_nonseparating = i;
      }
      if (match && !r.first_match && match(t)) r.first_match = i;
      if (stop_at_hit && r.first_hit) {
        r.size = parent_.size();
        return r;
      }
      if (capped) continue;
      bool at_depth_cap = depth_cap && depth_[i] >= *depth_cap;
      for (std::uint16_t s = 0; s < compiled_.size(); ++s) {
        for (unsigned gi = 0; gi < w; ++gi)
          child[gi] = evaluate_images(g_, t, compiled_[s][gi]);
        canon_.canonicalize(child);
        if (index_.contains(key(child))) continue;
        if (at_depth_cap) {
          r.truncated = true;
          break;
        }
        if (parent_.size() >= limits_.state_cap) {
          r.truncated = true;
          capped = true;
          break;
        }
        add(child, i, s, static_cast<std::uint16_t>(depth_[i] + 1));
        // `t` may dangle after growth
        t = std::span<Index const>(nodes_.data() + std::size_t(i) * w, w);
      }
    }
    r.size = parent_.size();
    r.closed = !r.truncated;
    return r;
  }

  std::span<Index const> node(std::uint32_t i) const {
    return {nodes_.data() + std::size_t(i) * 2 * genus_, 2 * genus_};
  }
  std::size_t node_count() const noexcept { return parent_.size(); }

  template <class F>
  void for_each_key(F&& f) const {
    for (auto const& [k, v] : index_) f(k);
  }

  /// Twist names from the start of the last exploration to node i.
  std::vector<std::string> path_to(std::uint32_t i) const {
    std::vector<std::string> names;
    while (parent_[i] != std::numeric_limits<std::uint32_t>::max()) {
      names.push_back(twists_.twists[via_[i]].name());
      i = parent_[i];
    }
    std::reverse(names.begin(), names.end());
    return names;
  }

  DecisionReport decide(SurfaceHom const& h) {
    if (!(h.target() == g_) || h.genus() != genus_)
      throw std::invalid_argument("homomorphism does not match this search");
    std::vector<Index> start = h.images();
    canon_.canonicalize(start);
    auto r = explore(start, true);
    DecisionReport rep;
    rep.orbit_size = r.size;
    rep.states_explored = r.size;
    rep.truncated = r.truncated;
    rep.depth_limit = limits_.depth_for(genus_);
    rep.twist_set_complete = !twists_.assumed_complete;
    if (r.first_hit) {
      rep.verdict = Verdict::Geometric;
      rep.certificate = Certificate{path_to(*r.first_hit), r.first_hit_curve};
    } else if (r.closed && rep.twist_set_complete) {
      rep.verdict = Verdict::Nongeometric;
    } else {
      rep.verdict = Verdict::Inconclusive;
    }
    return rep;
  }

 private:
  FiniteGroup g_;
  unsigned genus_;
  SearchLimits limits_;
  Canonicalizer canon_;
  TwistSet twists_;
  StandardCurveSet curves_;
  std::vector<std::vector<std::vector<Letter>>> compiled_;

  std::vector<Index> nodes_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint16_t> via_;
  std::vector<std::uint16_t> depth_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
};

inline DecisionReport is_geometric(SurfaceHom const& h, SearchLimits limits = {}) {
  OrbitSearch search(h.target(), h.genus(), limits);
  return search.decide(h);
}

// ---------------------------------------------------------------------------
// Enumeration

/// True when the images generate the whole group.
inline bool generates(FiniteGroup const& g, std::span<Index const> images) {
  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  thread_local std::vector<Index> members;
  if (stamp.size() < g.order()) stamp.assign(g.order(), 0);
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }
  members.clear();
  members.push_back(g.identity_index());
  stamp[g.identity_index()] = epoch;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Index s : images) {
      Index p = g.product(members[i], s);
      if (stamp[p] != epoch) {
        stamp[p] = epoch;
        members.push_back(p);
      }
    }
  return members.size() == g.order();
}

/// Streams every 2g-tuple satisfying the surface relator. The last pair is
/// looked up from an index of pairs by commutator value, so the scan costs
/// |G|^(2g-2) prefixes. Returns the number of tuples streamed.
inline std::uint64_t enumerate_homs(FiniteGroup const& g, unsigned genus, bool surjective_only,
                                    std::function<void(std::span<Index const>)> const& visit,
                                    std::uint64_t budget = SearchLimits{}.enumeration_budget) {
  if (genus == 0) throw std::invalid_argument("genus must be >= 1");
  Index const n = g.order();
  long double prefixes = 1;
  for (unsigned i = 0; i + 2 < 2 * genus; ++i) prefixes *= n;
  if (prefixes > static_cast<long double>(budget))
    throw BudgetError("enumeration needs " + std::to_string(static_cast<double>(prefixes)) +
                      " prefix tuples, budget is " + std::to_string(budget));

  std::vector<std::vector<std::pair<Index, Index>>> by_comm(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) by_comm[g.commutator(a, b)].push_back({a, b});

  std::uint64_t count = 0;
  std::vector<Index> t(2 * genus);
  std::function<void(unsigned, Index)> rec = [&](unsigned pair, Index acc) {
    if (pair + 1 == genus) {
      for (auto [c, d] : by_comm[g.inverse(acc)]) {
        t[2 * pair] = c;
        t[2 * pair + 1] = d;
        if (surjective_only && !generates(g, t)) continue;
        ++count;
        visit(t);
      }
      return;
    }
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        t[2 * pair] = a;
        t[2 * pair + 1] = b;
        rec(pair + 1, g.product(acc, g.commutator(a, b)));
      }
  };
  rec(0, g.identity_index());
  return count;
}

inline std::vector<SurfaceHom> all_homs(FiniteGroup const& g, unsigned genus, bool surjective_only,
                                        std::uint64_t budget = SearchLimits{}.enumeration_budget) {
  std::vector<SurfaceHom> out;
  enumerate_homs(
      g, genus, surjective_only,
      [&](std::span<Index const> t) {
        out.emplace_back(g, genus, std::vector<Index>(t.begin(), t.end()));
      },
      budget);
  return out;
}

// ---------------------------------------------------------------------------
// Scanning a group

struct OrbitRow {
  std::vector<Index> representative;  // canonical class the search started from
  std::uint64_t classes = 0;          // conjugation classes in the orbit
  std::uint64_t homs = 0;             // scanned homomorphisms in the orbit
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;
  std::optional<Certificate> separating_certificate;
  bool truncated = false;
};

struct ScanReport {
  Index order = 0;
  unsigned genus = 1;
  bool exists_nongeometric = false;
  std::optional<std::vector<Index>> witness;
  bool surjective_only = true;
  std::uint64_t homs_scanned = 0;
  std::uint64_t classes = 0;
  std::uint64_t geometric_orbits = 0;
  std::uint64_t nongeometric_orbits = 0;
  std::uint64_t inconclusive_orbits = 0;
  bool twist_set_complete = true;
  std::vector<OrbitRow> orbits;

  static constexpr char const* kReduction =
      "only surjective homomorphisms are decided: a non-surjective one factors "
      "through a proper subgroup and is decided when that subgroup's order is "
      "scanned";

  bool every_orbit_kills_separating() const {
    return std::all_of(orbits.begin(), orbits.end(),
                       [](OrbitRow const& o) { return o.separating_certificate.has_value(); });
  }
};

/// Decides every surjective homomorphism pi_1(F_g) -> G (every homomorphism
/// when `surjective_only` is false), one search per twist orbit.
inline ScanReport scan_group(FiniteGroup const& g, unsigned genus, SearchLimits limits = {},
                             bool surjective_only = true) {
  OrbitSearch search(g, genus, limits);
  ScanReport rep;
  rep.order = g.order();
  rep.genus = genus;
  rep.twist_set_complete = !search.twists().assumed_complete;
  std::unordered_map<OrbitSearch::Key, std::uint32_t, OrbitSearch::KeyHash> orbit_of;
  std::vector<Index> t;
  rep.surjective_only = surjective_only;
  enumerate_homs(
      g, genus, surjective_only,
      [&](std::span<Index const> raw) {
        ++rep.homs_scanned;
        t.assign(raw.begin(), raw.end());
        search.canonicalize(t);
        auto k = search.key(t);
        if (auto it = orbit_of.find(k); it != orbit_of.end()) {
          ++rep.orbits[it->second].homs;
          return;
        }
        auto r = search.explore(t, false);
        OrbitRow row;
        row.representative = t;
        row.classes = r.size;
        row.homs = 1;
        row.truncated = r.truncated;
        if (r.first_hit) {
          row.verdict = Verdict::Geometric;
          row.certificate = Certificate{search.path_to(*r.first_hit), r.first_hit_curve};
        } else if (r.closed && rep.twist_set_complete) {
          row.verdict = Verdict::Nongeometric;
        }
        if (r.first_separating)
          row.separating_certificate =
              Certificate{search.path_to(*r.first_separating), r.first_separating_curve};
        auto id = static_cast<std::uint32_t>(rep.orbits.size());
        search.for_each_key([&](OrbitSearch::Key key) { orbit_of.emplace(key, id); });
        rep.orbits.push_back(std::move(row));
      },
      limits.enumeration_budget);
  rep.classes = orbit_of.size();
  for (auto const& o : rep.orbits) {
    switch (o.verdict) {
      case Verdict::Geometric: ++rep.geometric_orbits; break;
      case Verdict::Nongeometric:
        ++rep.nongeometric_orbits;
        if (!rep.exists_nongeometric) {
          rep.exists_nongeometric = true;
          rep.witness = o.representative;
        }
        break;
      case Verdict::Inconclusive: ++rep.inconclusive_orbits; break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct NielsenCheck {
  bool holds = true;
  std::uint64_t orbits = 0;
  std::optional<std::vector<Index>> counterexample;
};

/// For cyclic G: every surjection's orbit contains (generator, 1, ..., 1).
inline NielsenCheck nielsen_normal_form_check(FiniteGroup const& g, unsigned genus = 2,
                                              SearchLimits limits = {}) {
  if (!is_cyclic(g)) throw std::invalid_argument("nielsen check needs a cyclic group");
  OrbitSearch search(g, genus, limits);
  NielsenCheck out;
  Index const e = g.identity_index();
  auto normal_form = [&](std::span<Index const> t) {
    if (g.element_order(t[0]) != g.order()) return false;
    return std::all_of(t.begin() + 1, t.end(), [&](Index v) { return v == e; });
  };
  std::unordered_map<OrbitSearch::Key, bool, OrbitSearch::KeyHash> seen;
  std::vector<Index> t;
  enumerate_homs(
      g, genus, true,
      [&](std::span<Index const> raw) {
        t.assign(raw.begin(), raw.end());
        search.canonicalize(t);
        if (seen.contains(search.key(t))) return;
        auto r = search.explore(t, false, normal_form);
        ++out.orbits;
        bool ok = r.first_match.has_value() && r.closed;
        search.for_each_key([&](OrbitSearch::Key key) { seen.emplace(key, ok); });
        if (!ok && out.holds) {
          out.holds = false;
          out.counterexample = t;
        }
      },
      limits.enumeration_budget);
  return out;
}

// ---------------------------------------------------------------------------

struct MinimalityRow {
  std::string id;  // "order#position"
  Index order = 0;
  std::string fingerprint;
  std::string tags;
  bool cea = false;
  bool exists_nongeometric = false;
  std::uint64_t surjective_homs = 0;
  std::uint64_t orbits = 0;
  std::uint64_t classes = 0;
  bool every_orbit_kills_separating = false;
  std::optional<std::vector<Index>> witness;
};

inline MinimalityRow minimality_row(CatalogEntry const& e, unsigned genus, SearchLimits limits) {
  MinimalityRow row;
  row.id = entry_id(e);
  row.order = e.order;
  row.fingerprint = e.fingerprint.str();
  row.tags = e.tags;
  row.cea = is_cyclic_extension_of_abelian(e.group).holds;
  auto rep = scan_group(e.group, genus, limits);
  row.exists_nongeometric = rep.exists_nongeometric;
  row.surjective_homs = rep.homs_scanned;
  row.orbits = rep.orbits.size();
  row.classes = rep.classes;
  row.every_orbit_kills_separating = rep.every_orbit_kills_separating();
  row.witness = rep.witness;
  return row;
}

/// scan_group over every catalog entry, `jobs` entries at a time.
inline std::vector<MinimalityRow> minimality_scan(Catalog const& catalog, unsigned genus = 2,
                                                  SearchLimits limits = {}, unsigned jobs = 1) {
  std::vector<MinimalityRow> rows(catalog.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < catalog.size();) {
      try {
        rows[i] = minimality_row(catalog[i], genus, limits);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace scc
