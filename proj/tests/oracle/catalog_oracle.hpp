#pragma once

// Independent counts of groups of small order, sharing no code with the
// library:
//   * extension_counts: every group of order < 32 as a cyclic extension of a
//     smaller one, deduplicated by a complete canonical form;
//   * cayley_counts: direct search for Cayley tables (small orders only).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

struct Table {
  int n = 1;
  std::vector<int> t{0};  // identity is 0
  int operator()(int a, int b) const { return t[a * n + b]; }
};

inline int order_of(Table const& g, int x) {
  int k = 1;
  for (int p = x; p != 0; p = g(p, x)) ++k;
  return x == 0 ? 1 : k - 1;
}

inline bool is_abelian(Table const& g) {
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < a; ++b)
      if (g(a, b) != g(b, a)) return false;
  return true;
}

/// Elements reached from the identity by right multiplication by `gens`, in
/// breadth-first order.
inline std::vector<int> bfs_order(Table const& g, std::vector<int> const& gens) {
  std::vector<int> order{0};
  std::vector<char> seen(g.n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int s : gens) {
      int p = g(order[i], s);
      if (!seen[p]) {
        seen[p] = 1;
        order.push_back(p);
      }
    }
  return order;
}

inline int rank(Table const& g) {
  if (g.n == 1) return 0;
  for (int d = 1;; ++d) {
    std::vector<int> idx(d, 0);
    while (true) {
      if (static_cast<int>(bfs_order(g, idx).size()) == g.n) return d;
      int i = 0;
      while (i < d && ++idx[i] == g.n) idx[i++] = 0;
      if (i == d) break;
    }
  }
}

/// Complete isomorphism invariant. Abelian groups: counts of element orders.
/// Otherwise: the least table over all generating tuples of minimal length,
/// relabelled in breadth-first order.
inline std::vector<int> canonical_form(Table const& g) {
  if (is_abelian(g)) {
    std::vector<int> counts(g.n + 1, 0);
    for (int x = 0; x < g.n; ++x) ++counts[order_of(g, x)];
    counts.insert(counts.begin(), -1);
    return counts;
  }
  int d = rank(g);
  std::vector<int> best;
  std::vector<int> idx(d, 0), pos(g.n), cand(std::size_t(g.n) * g.n);
  while (true) {
    auto order = bfs_order(g, idx);
    if (static_cast<int>(order.size()) == g.n) {
      for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
      bool better = best.empty(), decided = best.empty();
      for (int i = 0; i < g.n && !(decided && !better); ++i)
        for (int j = 0; j < g.n; ++j) {
          int v = pos[g(order[i], order[j])];
          cand[i * g.n + j] = v;
          if (!decided) {
            int b = best[i * g.n + j];
            if (v != b) {
              decided = true;
              better = v < b;
              if (!better) break;
            }
          }
        }
      if (better) best = cand;
    }
    int i = 0;
    while (i < d && ++idx[i] == g.n) idx[i++] = 0;
    if (i == d) break;
  }
  return best;
}

inline bool is_automorphism(Table const& g, std::vector<int> const& f) {
  std::vector<char> hit(g.n, 0);
  for (int v : f) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (f[g(a, b)] != g(f[a], f[b])) return false;
  return true;
}

/// All automorphisms, by trying every image tuple of a generating set.
inline std::vector<std::vector<int>> automorphisms(Table const& g) {
  std::vector<int> gens;
  while (static_cast<int>(bfs_order(g, gens).size()) < g.n) {
    auto have = bfs_order(g, gens);
    std::vector<char> in(g.n, 0);
    for (int x : have) in[x] = 1;
    int pick = 0;
    for (int x = 1; x < g.n; ++x)
      if (!in[x] && (pick == 0 || order_of(g, x) > order_of(g, pick))) pick = x;
    gens.push_back(pick);
  }
  auto order = bfs_order(g, gens);
  // express each element as (parent, generator) along the BFS
  std::vector<int> parent(g.n, -1), via(g.n, -1);
  {
    std::vector<char> seen(g.n, 0);
    seen[0] = 1;
    for (int x : order)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        int p = g(x, gens[s]);
        if (!seen[p]) {
          seen[p] = 1;
          parent[p] = x;
          via[p] = static_cast<int>(s);
        }
      }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> img(gens.size(), 0);
  while (true) {
    bool orders_ok = true;
    for (std::size_t s = 0; s < gens.size(); ++s)
      if (order_of(g, img[s]) != order_of(g, gens[s])) orders_ok = false;
    if (orders_ok) {
      std::vector<int> f(g.n, 0);
      for (int x : order)
        if (x != 0) f[x] = g(f[parent[x]], img[via[x]]);
      if (is_automorphism(g, f)) out.push_back(f);
    }
    std::size_t i = 0;
    while (i < img.size() && ++img[i] == g.n) img[i++] = 0;
    if (i == img.size()) break;
  }
  return out;
}

/// <N, t | t x t^-1 = alpha(x), t^p = z>, element x t^i at index i|N| + x.
inline Table extension(Table const& nt, std::vector<int> const& alpha, int z, int p) {
  int m = nt.n, n = m * p;
  std::vector<std::vector<int>> pw{std::vector<int>(m)};
  std::iota(pw[0].begin(), pw[0].end(), 0);
  for (int i = 1; i < p; ++i) {
    std::vector<int> next(m);
    for (int x = 0; x < m; ++x) next[x] = alpha[pw.back()[x]];
    pw.push_back(next);
  }
  Table g{n, std::vector<int>(std::size_t(n) * n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ia = a / m, xa = a % m, ib = b / m, xb = b % m;
      int x = nt(xa, pw[ia][xb]);
      int e = ia + ib;
      if (e >= p) {
        x = nt(x, z);
        e -= p;
      }
      g.t[a * n + b] = e * m + x;
    }
  return g;
}

inline bool associative(Table const& g) {
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      for (int c = 0; c < g.n; ++c)
        if (g(g(a, b), c) != g(a, g(b, c))) return false;
  return true;
}

/// Number of isomorphism classes of each order 1..max_order.
inline std::map<int, std::vector<Table>> extension_groups(int max_order) {
  std::map<int, std::vector<Table>> groups;
  groups[1] = {Table{}};
  for (int n = 2; n <= max_order; ++n) {
    std::set<std::vector<int>> forms;
    std::vector<Table> reps;
    for (int p = 2; p <= n; ++p) {
      bool prime = true;
      for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) prime = false;
      if (!prime || n % p) continue;
      for (auto const& nt : groups[n / p]) {
        auto auts = automorphisms(nt);
        for (auto const& alpha : auts) {
          std::vector<int> ap(nt.n);
          std::iota(ap.begin(), ap.end(), 0);
          for (int i = 0; i < p; ++i)
            for (auto& v : ap) v = alpha[v];
          for (int z = 0; z < nt.n; ++z) {
            if (alpha[z] != z) continue;
            // alpha^p must be conjugation by z
            bool inner = true;
            int zi = 0;
            while (nt(z, zi) != 0) ++zi;
            for (int x = 0; x < nt.n && inner; ++x)
              if (ap[x] != nt(nt(z, x), zi)) inner = false;
            if (!inner) continue;
            auto g = extension(nt, alpha, z, p);
            if (forms.insert(canonical_form(g)).second) reps.push_back(std::move(g));
          }
        }
      }
    }
    groups[n] = std::move(reps);
  }
  return groups;
}

inline std::map<int, int> extension_counts(int max_order) {
  std::map<int, int> out;
  for (auto const& [n, gs] : extension_groups(max_order)) out[n] = static_cast<int>(gs.size());
  return out;
}

// ---------------------------------------------------------------------------
// Cayley-table search.
//
// For each m dividing n, label an element a of order m and its powers as
// 0..m-1, and the left cosets r<a> as r a^i = c m + i. Then right
// multiplication by a is fixed (x a is the successor of x in its coset), so a
// row is determined by its entries in the coset-representative columns. The
// search assigns those, checks Latin squares, associativity and that no element
// has order above m, and keeps one table per canonical form. Every group is
// found when m is its largest element order.

class CayleySearch {
 public:
  explicit CayleySearch(int n) : n_(n) {}

  std::vector<Table> run() {
    if (n_ == 1) return {Table{}};
    for (int m = 2; m <= n_; ++m)
      if (n_ % m == 0) search(m);
    return found_;
  }

 private:
  int succ(int x) const { return (x / m_) * m_ + (x % m_ + 1) % m_; }

  void search(int m) {
    m_ = m;
    t_.assign(std::size_t(n_) * n_, -1);
    row_used_.assign(std::size_t(n_) * n_, 0);
    col_used_.assign(std::size_t(n_) * n_, 0);
    for (int x = 0; x < n_; ++x) {
      place(0, x, x);
      if (x) place(x, 0, x);
    }
    complete_.assign(n_, 0);
    complete_[0] = 1;
    // column block of <a>: x a^i is the i-th successor of x
    for (int x = 1; x < n_; ++x)
      for (int i = 1, c = x; i < m_; ++i) {
        c = succ(c);
        if (!place(x, i, c)) return;
      }
    vars_.clear();
    for (int x = 1; x < n_; ++x)
      for (int r = m_; r < n_; r += m_) vars_.push_back({x, r});
    if (vars_.empty()) {
      for (int x = 1; x < n_; ++x) complete_[x] = 1;
      if (!consistent()) return;
    }
    rec(0);
  }

  int& at(int a, int b) { return t_[std::size_t(a) * n_ + b]; }

  bool place(int a, int b, int v) {
    if (at(a, b) == v) return true;
    if (at(a, b) != -1) return false;
    if (m_ == 2 && a == b && v != 0) return false;  // every element is an involution
    if (row_used_[std::size_t(a) * n_ + v] || col_used_[std::size_t(b) * n_ + v]) return false;
    at(a, b) = v;
    row_used_[std::size_t(a) * n_ + v] = 1;
    col_used_[std::size_t(b) * n_ + v] = 1;
    trail_.push_back({a, b});
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [a, b] = trail_.back();
      trail_.pop_back();
      int v = at(a, b);
      row_used_[std::size_t(a) * n_ + v] = 0;
      col_used_[std::size_t(b) * n_ + v] = 0;
      at(a, b) = -1;
    }
  }

  bool row_done(int x) {
    for (int y = 0; y < n_; ++y)
      if (at(x, y) == -1) return false;
    return true;
  }

  /// Associativity on every triple whose products are all known.
  bool consistent() {
    for (int a = 0; a < n_; ++a) {
      if (!complete_[a]) continue;
      for (int b = 0; b < n_; ++b) {
        int ab = at(a, b);
        if (!complete_[ab] || !complete_[b]) continue;
        for (int c = 0; c < n_; ++c)
          if (at(ab, c) != at(a, at(b, c))) return false;
      }
    }
    return true;
  }

  /// a has maximal order m: no element may have a known power chain longer
  /// than m.
  bool orders_bounded() {
    for (int x = 1; x < n_; ++x) {
      // x^j for j = 1..m while the rows needed are known
      int p = x;
      bool bounded = false;
      for (int j = 1; j <= m_; ++j) {
        if (p == 0) {
          bounded = true;
          break;
        }
        if (!complete_[p]) {
          bounded = true;  // unknown yet
          break;
        }
        p = at(p, x);
      }
      if (!bounded) return false;
    }
    return true;
  }

  void rec(std::size_t k) {
    if (k == vars_.size()) {
      Table g{n_, t_};
      if (associative(g) && forms_.insert(canonical_form(g)).second) found_.push_back(g);
      return;
    }
    auto [x, r] = vars_[k];
    for (int v = 0; v < n_; ++v) {
      std::size_t mark = trail_.size();
      bool ok = place(x, r, v);
      for (int i = 1, c = v; ok && i < m_; ++i) {
        c = succ(c);
        ok = place(x, r + i, c);
      }
      bool finished_row = ok && (k + 1 == vars_.size() || vars_[k + 1].first != x);
      if (finished_row) {
        ok = row_done(x);
        if (ok) {
          complete_[x] = 1;
          ok = consistent() && orders_bounded();
        }
      }
      if (ok) rec(k + 1);
      if (finished_row) complete_[x] = 0;
      undo(mark);
    }
  }

  int n_;
  int m_ = 1;
  std::vector<int> t_;
  std::vector<char> row_used_, col_used_, complete_;
  std::vector<std::pair<int, int>> vars_;
  std::vector<std::pair<int, int>> trail_;
  std::set<std::vector<int>> forms_;
  std::vector<Table> found_;
};

inline int cayley_count(int n) { return static_cast<int>(CayleySearch(n).run().size()); }

}  // namespace oracle
