#pragma once

// Homomorphism extension, isomorphism testing and automorphism enumeration.
//
// Isomorphism search backtracks over the images of a small generating set,
// restricting each image to elements with the same order and centralizer
// size, and verifies every complete assignment by extending it along a
// spanning tree of the Cayley graph.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scc/group.hpp"
#include "scc/subgroup.hpp"

namespace scc {

/// Greedy small generating set: repeatedly adds the element whose join with
/// the current subgroup is largest.
inline std::vector<Index> generating_set(FiniteGroup const& g) {
  std::vector<Index> gens;
  std::vector<Index> current{g.identity_index()};
  while (current.size() < g.order()) {
    Index best = g.identity_index();
    std::size_t best_size = 0;
    for (Index x = 0; x < g.order(); ++x) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      auto s = detail::closure(g, current, std::span<Index const>(&x, 1));
      if (s.size() > best_size) {
        best_size = s.size();
        best = x;
      }
    }
    gens.push_back(best);
    current = detail::closure(g, current, std::span<Index const>(&best, 1));
  }
  return gens;
}

/// Extends gens[i] -> images[i] to a homomorphism G -> H, or nullopt when
/// the assignment does not define one.
inline std::optional<std::vector<Index>> extend_homomorphism(
    FiniteGroup const& g, FiniteGroup const& h, std::span<Index const> gens,
    std::span<Index const> images) {
  Index const unset = g.order();
  std::vector<Index> map(g.order(), unset);
  std::vector<Index> order{g.identity_index()};
  map[g.identity_index()] = h.identity_index();
  for (std::size_t i = 0; i < order.size(); ++i) {
    Index x = order[i];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Index y = g.product(x, gens[s]);
      Index img = h.product(map[x], images[s]);
      if (map[y] == unset) {
        map[y] = img;
        order.push_back(y);
      } else if (map[y] != img) {
        return std::nullopt;
      }
    }
  }
  if (order.size() != g.order()) return std::nullopt;
  return map;
}

namespace detail {

struct ElementProfile {
  Index order;
  Index centralizer;
  friend bool operator==(ElementProfile const&, ElementProfile const&) = default;
  friend auto operator<=>(ElementProfile const&, ElementProfile const&) = default;
};

inline std::vector<ElementProfile> element_profiles(FiniteGroup const& g) {
  std::vector<ElementProfile> out(g.order());
  for (Index a = 0; a < g.order(); ++a) {
    Index c = 0;
    for (Index b = 0; b < g.order(); ++b)
      c += g.product(a, b) == g.product(b, a);
    out[a] = {g.element_order(a), c};
  }
  return out;
}

// Calls `visit` with every bijective homomorphism G -> H; stops when visit
// returns false.
inline void for_each_isomorphism(
    FiniteGroup const& g, FiniteGroup const& h,
    std::function<bool(std::vector<Index> const&)> const& visit) {
  if (g.order() != h.order()) return;
  auto pg = element_profiles(g);
  auto ph = element_profiles(h);
  {
    auto a = pg, b = ph;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return;
  }
  auto gens = generating_set(g);
  std::vector<std::vector<Index>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Index y = 0; y < h.order(); ++y)
      if (ph[y] == pg[gens[i]]) candidates[i].push_back(y);

  std::vector<Index> images(gens.size());
  std::vector<char> hit(h.order());
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == gens.size()) {
      auto m = extend_homomorphism(g, h, gens, images);
      if (!m) return;
      std::fill(hit.begin(), hit.end(), 0);
      for (Index v : *m) {
        if (hit[v]) return;
        hit[v] = 1;
      }
      if (!visit(*m)) stop = true;
      return;
    }
    for (Index y : candidates[depth]) {
      images[depth] = y;
      rec(depth + 1);
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace detail

inline std::optional<std::vector<Index>> find_isomorphism(
    FiniteGroup const& g, FiniteGroup const& h) {
  std::optional<std::vector<Index>> out;
  detail::for_each_isomorphism(g, h, [&](std::vector<Index> const& m) {
    out = m;
    return false;
  });
  return out;
}

inline bool isomorphic(FiniteGroup const& g, FiniteGroup const& h) {
  return find_isomorphism(g, h).has_value();
}

/// All automorphisms, each as an index permutation.
inline std::vector<std::vector<Index>> automorphisms(FiniteGroup const& g) {
  std::vector<std::vector<Index>> out;
  detail::for_each_isomorphism(g, g, [&](std::vector<Index> const& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Isomorphism invariant: element-order histogram plus center and derived
/// subgroup orders.
struct Fingerprint {
  Index order = 0;
  std::vector<std::pair<Index, Index>> element_orders;  // (order, count)
  Index center_order = 0;
  Index derived_order = 0;

  friend bool operator==(Fingerprint const&, Fingerprint const&) = default;
  friend auto operator<=>(Fingerprint const&, Fingerprint const&) = default;

  std::string str() const {
    std::string s = "n=" + std::to_string(order) + ";orders=";
    bool first = true;
    for (auto [o, c] : element_orders) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(o) + "^" + std::to_string(c);
    }
    s += ";Z=" + std::to_string(center_order) +
         ";D=" + std::to_string(derived_order);
    return s;
  }
};

inline Fingerprint fingerprint(FiniteGroup const& g) {
  Fingerprint f;
  f.order = g.order();
  std::map<Index, Index> hist;
  for (Index a = 0; a < g.order(); ++a) ++hist[g.element_order(a)];
  f.element_orders.assign(hist.begin(), hist.end());
  f.center_order = center(g).order();
  f.derived_order = derived_subgroup(g).order();
  return f;
}

}  // namespace scc
