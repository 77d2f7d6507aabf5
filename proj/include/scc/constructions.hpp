#pragma once

// Structured group constructors. Labels are kept for reporting only.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "scc/group.hpp"
#include "scc/morphism.hpp"

namespace scc {

inline FiniteGroup cyclic(Index n) {
  if (n == 0) detail::fail(GroupError::Kind::NotClosed, "cyclic(0)");
  std::vector<Index> t(std::size_t(n) * n);
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (Index b = 0; b < n; ++b) t[std::size_t(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup::from_flat(n, std::move(t), std::move(labels));
}

inline FiniteGroup direct_product(FiniteGroup const& g, FiniteGroup const& h) {
  Index const m = h.order();
  Index const n = g.order() * m;
  std::vector<Index> t(std::size_t(n) * n);
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = "(" + g.label(a / m) + "," + h.label(a % m) + ")";
    for (Index b = 0; b < n; ++b)
      t[std::size_t(a) * n + b] =
          g.product(a / m, b / m) * m + h.product(a % m, b % m);
  }
  return FiniteGroup::from_flat(n, std::move(t), std::move(labels));
}

/// Permutation of N's indices given by generator images; throws BadAction
/// unless it is an automorphism.
inline std::vector<Index> automorphism_from_images(
    FiniteGroup const& n, std::vector<Index> const& gens,
    std::vector<Index> const& images) {
  auto m = extend_homomorphism(n, n, gens, images);
  if (!m) detail::fail(GroupError::Kind::BadAction, "images do not extend to a homomorphism");
  std::vector<Index> sorted = *m;
  std::sort(sorted.begin(), sorted.end());
  for (Index i = 0; i < n.order(); ++i)
    if (sorted[i] != i)
      detail::fail(GroupError::Kind::BadAction, "endomorphism is not bijective");
  return *m;
}

/// N x| H with (n1,h1)(n2,h2) = (n1 * action[h1](n2), h1 h2). Element
/// (n, h) has index n * |H| + h.
inline FiniteGroup semidirect_product(
    FiniteGroup const& n, FiniteGroup const& h,
    std::vector<std::vector<Index>> const& action) {
  using K = GroupError::Kind;
  if (action.size() != h.order())
    detail::fail(K::BadAction, "action must give one map per element of H");
  for (Index x = 0; x < h.order(); ++x) {
    auto const& phi = action[x];
    if (phi.size() != n.order())
      detail::fail(K::BadAction, "action map has wrong size");
    std::vector<char> hit(n.order(), 0);
    for (Index v : phi) {
      if (v >= n.order() || hit[v])
        detail::fail(K::BadAction, "image of " + h.label(x) + " is not a bijection");
      hit[v] = 1;
    }
    for (Index a = 0; a < n.order(); ++a)
      for (Index b = 0; b < n.order(); ++b)
        if (phi[n.product(a, b)] != n.product(phi[a], phi[b]))
          detail::fail(K::BadAction, "image of " + h.label(x) + " is not a homomorphism");
  }
  for (Index x = 0; x < h.order(); ++x)
    for (Index y = 0; y < h.order(); ++y) {
      auto const& xy = action[h.product(x, y)];
      for (Index a = 0; a < n.order(); ++a)
        if (xy[a] != action[x][action[y][a]])
          detail::fail(K::BadAction, "action is not a homomorphism at (" +
                                         h.label(x) + "," + h.label(y) + ")");
    }

  Index const m = h.order();
  Index const size = n.order() * m;
  std::vector<Index> t(std::size_t(size) * size);
  std::vector<std::string> labels(size);
  for (Index a = 0; a < size; ++a) {
    Index na = a / m, ha = a % m;
    labels[a] = "(" + n.label(na) + "," + h.label(ha) + ")";
    for (Index b = 0; b < size; ++b) {
      Index nb = b / m, hb = b % m;
      t[std::size_t(a) * size + b] =
          n.product(na, action[ha][nb]) * m + h.product(ha, hb);
    }
  }
  return FiniteGroup::from_flat(size, std::move(t), std::move(labels));
}

/// Q8 with indices 1,-1,i,-i,j,-j,k,-k in that order.
inline FiniteGroup quaternion8() {
  // unit u in {1,i,j,k} = {0,1,2,3}, sign s; index = 2u + s.
  // u*v for units: (unit, negate)
  static constexpr int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<Index> t(64);
  for (Index a = 0; a < 8; ++a)
    for (Index b = 0; b < 8; ++b) {
      auto const& r = unit_mul[a / 2][b / 2];
      Index s = (a % 2 + b % 2 + r[1]) % 2;
      t[a * 8 + b] = Index(2 * r[0]) + s;
    }
  return FiniteGroup::from_flat(8, std::move(t),
                                {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

namespace detail {

inline std::string cycle_notation(std::vector<Index> const& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (Index i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    for (Index j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      if (out.back() != '(') out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace detail

/// Group of permutations given explicitly; composition (p q)(i) = p(q(i)).
inline FiniteGroup permutation_group(std::vector<std::vector<Index>> perms) {
  std::sort(perms.begin(), perms.end());
  Index const n = static_cast<Index>(perms.size());
  std::vector<Index> t(std::size_t(n) * n);
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = detail::cycle_notation(perms[a]);
    for (Index b = 0; b < n; ++b) {
      std::vector<Index> c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      if (it == perms.end() || *it != c)
        detail::fail(GroupError::Kind::NotClosed, "permutation set not closed");
      t[std::size_t(a) * n + b] = static_cast<Index>(it - perms.begin());
    }
  }
  return FiniteGroup::from_flat(n, std::move(t), std::move(labels));
}

/// S_n on points 1..n, elements in lexicographic order of one-line notation.
inline FiniteGroup symmetric(Index points) {
  std::vector<Index> p(points);
  std::iota(p.begin(), p.end(), Index{0});
  std::vector<std::vector<Index>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return permutation_group(std::move(perms));
}

/// Dihedral group of order 2n: rotations r^i are indices 0..n-1, reflections
/// r^i s are n..2n-1.
inline FiniteGroup dihedral(Index n) {
  Index const size = 2 * n;
  std::vector<Index> t(std::size_t(size) * size);
  std::vector<std::string> labels(size);
  for (Index a = 0; a < size; ++a) {
    labels[a] = a < n ? "r" + std::to_string(a) : "r" + std::to_string(a - n) + "s";
    for (Index b = 0; b < size; ++b) {
      Index ia = a % n, ib = b % n;
      bool ra = a >= n, rb = b >= n;
      // r^ia s^ra r^ib s^rb = r^(ia +- ib) s^(ra xor rb)
      Index rot = ra ? (ia + n - ib) % n : (ia + ib) % n;
      t[std::size_t(a) * size + b] = rot + ((ra != rb) ? n : 0);
    }
  }
  return FiniteGroup::from_flat(size, std::move(t), std::move(labels));
}

inline FiniteGroup klein4() { return direct_product(cyclic(2), cyclic(2)); }

}  // namespace scc
