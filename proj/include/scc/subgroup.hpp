#pragma once

// Subgroups, normality, quotients and the cyclic-extension-of-abelian test.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scc/group.hpp"

namespace scc {

struct Subgroup {
  FiniteGroup parent;
  std::vector<Index> members;  // sorted
  bool is_normal = false;

  Index order() const noexcept { return static_cast<Index>(members.size()); }
  bool contains(Index x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  bool is_abelian() const {
    for (Index a : members)
      for (Index b : members)
        if (parent.product(a, b) != parent.product(b, a)) return false;
    return true;
  }
};

namespace detail {

inline bool normal_members(FiniteGroup const& g,
                           std::vector<Index> const& sorted) {
  std::vector<char> in(g.order(), 0);
  for (Index m : sorted) in[m] = 1;
  for (Index c = 0; c < g.order(); ++c)
    for (Index m : sorted)
      if (!in[g.conjugate(c, m)]) return false;
  return true;
}

// Closure of `start` (assumed to contain the identity or be empty) under
// right multiplication by the seeds.
inline std::vector<Index> closure(FiniteGroup const& g,
                                  std::vector<Index> const& start,
                                  std::span<Index const> seeds) {
  std::vector<char> in(g.order(), 0);
  std::vector<Index> out;
  auto push = [&](Index x) {
    if (!in[x]) {
      in[x] = 1;
      out.push_back(x);
    }
  };
  push(g.identity_index());
  for (Index x : start) push(x);
  std::vector<Index> gens(start.begin(), start.end());
  gens.insert(gens.end(), seeds.begin(), seeds.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Index s : gens) push(g.product(out[i], s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Subgroup make_subgroup(FiniteGroup const& g, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  bool normal = detail::normal_members(g, members);
  return {g, std::move(members), normal};
}

inline Subgroup generated_subgroup(FiniteGroup const& g,
                                   std::span<Index const> seeds) {
  return make_subgroup(g, detail::closure(g, {}, seeds));
}

inline Subgroup generated_subgroup(FiniteGroup const& g,
                                   std::initializer_list<Index> seeds) {
  std::vector<Index> v(seeds);
  return generated_subgroup(g, std::span<Index const>(v));
}

inline Subgroup whole_group(FiniteGroup const& g) {
  std::vector<Index> all(g.order());
  std::iota(all.begin(), all.end(), Index{0});
  return {g, std::move(all), true};
}

inline Subgroup center(FiniteGroup const& g) {
  std::vector<Index> z;
  for (Index a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Index b = 0; b < g.order() && central; ++b)
      central = g.product(a, b) == g.product(b, a);
    if (central) z.push_back(a);
  }
  return {g, std::move(z), true};
}

inline Subgroup derived_subgroup(FiniteGroup const& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Index> comms;
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) {
      Index c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return {g, detail::closure(g, {}, comms), true};
}

inline Subgroup centralizer(FiniteGroup const& g, Index x) {
  std::vector<Index> c;
  for (Index a = 0; a < g.order(); ++a)
    if (g.product(a, x) == g.product(x, a)) c.push_back(a);
  return {g, std::move(c), false};
}

/// Every subgroup, by closure-BFS from the cyclic subgroups, joining one
/// cyclic subgroup at a time. Sorted by (order, members).
inline std::vector<Subgroup> all_subgroups(FiniteGroup const& g) {
  std::set<std::vector<Index>> found;
  std::vector<std::vector<Index>> queue;
  std::vector<Index> cyclic_gens;
  for (Index a = 0; a < g.order(); ++a) {
    auto s = detail::closure(g, {}, std::span<Index const>(&a, 1));
    if (found.insert(s).second) {
      queue.push_back(s);
      cyclic_gens.push_back(a);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Index c : cyclic_gens) {
      if (std::binary_search(queue[i].begin(), queue[i].end(), c)) continue;
      auto s = detail::closure(g, queue[i], std::span<Index const>(&c, 1));
      if (found.insert(s).second) queue.push_back(std::move(s));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto const& m : found) out.push_back(make_subgroup(g, m));
  std::sort(out.begin(), out.end(), [](Subgroup const& a, Subgroup const& b) {
    return std::pair(a.order(), a.members) < std::pair(b.order(), b.members);
  });
  return out;
}

inline std::vector<Subgroup> normal_subgroups(FiniteGroup const& g) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g))
    if (s.is_normal) out.push_back(std::move(s));
  return out;
}

/// G/N on cosets ordered by their least member.
inline FiniteGroup quotient(FiniteGroup const& g, Subgroup const& n) {
  if (!(n.parent == g))
    detail::fail(GroupError::Kind::CrossGroup,
                 "subgroup does not belong to this group");
  if (!detail::normal_members(g, n.members))
    detail::fail(GroupError::Kind::NotNormal,
                 "quotient by a non-normal subgroup of order " +
                     std::to_string(n.order()));
  Index const size = g.order() / n.order();
  std::vector<Index> coset(g.order(), size);
  std::vector<Index> rep;
  for (Index a = 0; a < g.order(); ++a) {
    if (coset[a] != size) continue;
    Index id = static_cast<Index>(rep.size());
    rep.push_back(a);
    for (Index m : n.members) coset[g.product(a, m)] = id;
  }
  std::vector<Index> table(std::size_t(size) * size);
  for (Index i = 0; i < size; ++i)
    for (Index j = 0; j < size; ++j)
      table[std::size_t(i) * size + j] = coset[g.product(rep[i], rep[j])];
  std::vector<std::string> labels;
  if (g.has_labels())
    for (Index r : rep) labels.push_back(g.label(r) + "N");
  return FiniteGroup::from_flat(size, std::move(table), std::move(labels));
}

inline bool is_cyclic(FiniteGroup const& g) {
  for (Index a = 0; a < g.order(); ++a)
    if (g.element_order(a) == g.order()) return true;
  return false;
}

/// Order of xN in G/N.
inline Index order_modulo(FiniteGroup const& g, Subgroup const& n, Index x) {
  Index k = 1;
  for (Index p = x; !n.contains(p); p = g.product(p, x)) ++k;
  return k;
}

struct CyclicExtensionResult {
  bool holds = false;
  std::optional<Subgroup> witness;
};

/// Looks for an abelian normal N with G/N cyclic, preferring the largest N.
inline CyclicExtensionResult is_cyclic_extension_of_abelian(
    FiniteGroup const& g) {
  if (g.is_abelian()) return {true, whole_group(g)};
  auto normals = normal_subgroups(g);
  for (auto it = normals.rbegin(); it != normals.rend(); ++it) {
    if (!it->is_abelian()) continue;
    Index const index = g.order() / it->order();
    for (Index x = 0; x < g.order(); ++x) {
      if (order_modulo(g, *it, x) == index) return {true, *it};
    }
  }
  return {false, std::nullopt};
}

}  // namespace scc
