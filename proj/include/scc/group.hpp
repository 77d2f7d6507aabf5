#pragma once

// Finite groups as validated multiplication tables.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scc {

using Index = std::uint32_t;

class GroupError : public std::runtime_error {
 public:
  enum class Kind {
    NotClosed,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotNormal,
    BadAction,
    CrossGroup,
    Parse,
  };

  GroupError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline char const* to_string(GroupError::Kind k) {
  switch (k) {
    case GroupError::Kind::NotClosed: return "NotClosed";
    case GroupError::Kind::NotAssociative: return "NotAssociative";
    case GroupError::Kind::NoIdentity: return "NoIdentity";
    case GroupError::Kind::NoInverse: return "NoInverse";
    case GroupError::Kind::NotNormal: return "NotNormal";
    case GroupError::Kind::BadAction: return "BadAction";
    case GroupError::Kind::CrossGroup: return "CrossGroup";
    case GroupError::Kind::Parse: return "Parse";
  }
  return "Unknown";
}

/// An element of a specific group. The tag identifies the owning group so
/// that arithmetic across groups is caught rather than silently computed.
struct Element {
  Index index = 0;
  std::uint64_t tag = 0;

  friend bool operator==(Element const&, Element const&) = default;
  friend auto operator<=>(Element const&, Element const&) = default;
};

namespace detail {

inline std::uint64_t next_group_tag() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

[[noreturn]] inline void fail(GroupError::Kind k, std::string const& msg) {
  throw GroupError(k, std::string(to_string(k)) + ": " + msg);
}

// Light's associativity test: if (x s) y = x (s y) holds for all x, y and
// every s in a set generating the magma, the operation is associative.
inline std::vector<Index> magma_generators(std::vector<Index> const& t,
                                           Index n) {
  std::vector<char> in(n, 0);
  std::vector<Index> gens;
  std::vector<Index> members;
  auto close = [&]() {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (Index p : {t[std::size_t(members[i]) * n + members[j]],
                        t[std::size_t(members[j]) * n + members[i]]}) {
          if (!in[p]) {
            in[p] = 1;
            members.push_back(p);
          }
        }
      }
    }
  };
  for (Index x = 0; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    in[x] = 1;
    members.push_back(x);
    close();
  }
  return gens;
}

}  // namespace detail

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial_data()) {}

  /// Validates a square table and builds the group. Throws GroupError naming
  /// the offending indices.
  static FiniteGroup from_table(std::vector<std::vector<Index>> const& rows,
                                std::vector<std::string> labels = {}) {
    Index const n = static_cast<Index>(rows.size());
    if (n == 0) detail::fail(GroupError::Kind::NotClosed, "empty table");
    std::vector<Index> flat;
    flat.reserve(std::size_t(n) * n);
    for (Index i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        detail::fail(GroupError::Kind::NotClosed,
                     "row " + std::to_string(i) + " has length " +
                         std::to_string(rows[i].size()) + ", expected " +
                         std::to_string(n));
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return from_flat(n, std::move(flat), std::move(labels));
  }

  static FiniteGroup from_flat(Index n, std::vector<Index> table,
                               std::vector<std::string> labels = {}) {
    auto d = std::make_shared<Data>();
    d->n = n;
    d->table = std::move(table);
    d->labels = std::move(labels);
    validate(*d);
    d->tag = detail::next_group_tag();
    return FiniteGroup(std::move(d));
  }

  Index order() const noexcept { return d_->n; }
  std::uint64_t tag() const noexcept { return d_->tag; }

  Index identity_index() const noexcept { return d_->identity; }
  Element identity() const noexcept { return {d_->identity, d_->tag}; }

  Element element(Index i) const {
    if (i >= d_->n) {
      detail::fail(GroupError::Kind::NotClosed,
                   "index " + std::to_string(i) + " out of range for order " +
                       std::to_string(d_->n));
    }
    return {i, d_->tag};
  }

  // Raw index arithmetic for inner loops.
  Index product(Index a, Index b) const noexcept {
    return d_->table[std::size_t(a) * d_->n + b];
  }
  Index inverse(Index a) const noexcept { return d_->inverse[a]; }
  Index commutator(Index a, Index b) const noexcept {
    return product(product(a, b), product(inverse(a), inverse(b)));
  }
  Index conjugate(Index by, Index x) const noexcept {
    return product(product(by, x), inverse(by));
  }
  Index power(Index a, long long e) const noexcept {
    Index base = e < 0 ? inverse(a) : a;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    k %= d_->orders[a];
    Index r = d_->identity;
    while (k--) r = product(r, base);
    return r;
  }
  Index element_order(Index a) const noexcept { return d_->orders[a]; }

  std::span<Index const> row(Index a) const noexcept {
    return {d_->table.data() + std::size_t(a) * d_->n, d_->n};
  }
  std::vector<Index> const& flat_table() const noexcept { return d_->table; }

  // Checked element arithmetic.
  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    return {product(a.index, b.index), d_->tag};
  }
  Element inv(Element a) const {
    check(a);
    return {inverse(a.index), d_->tag};
  }
  Element commutator(Element a, Element b) const {
    check(a);
    check(b);
    return {commutator(a.index, b.index), d_->tag};
  }

  bool is_abelian() const noexcept {
    for (Index a = 0; a < d_->n; ++a)
      for (Index b = a + 1; b < d_->n; ++b)
        if (product(a, b) != product(b, a)) return false;
    return true;
  }

  bool has_labels() const noexcept { return !d_->labels.empty(); }
  std::vector<std::string> const& labels() const noexcept {
    return d_->labels;
  }
  std::string label(Index i) const {
    return has_labels() ? d_->labels[i] : std::to_string(i);
  }

  /// Same underlying group object (not isomorphism).
  friend bool operator==(FiniteGroup const& a, FiniteGroup const& b) {
    return a.d_ == b.d_;
  }

 private:
  struct Data {
    Index n = 0;
    std::vector<Index> table;
    Index identity = 0;
    std::vector<Index> inverse;
    std::vector<Index> orders;
    std::vector<std::string> labels;
    std::uint64_t tag = 0;
  };

  explicit FiniteGroup(std::shared_ptr<Data const> d) : d_(std::move(d)) {}

  static std::shared_ptr<Data const> trivial_data() {
    static std::shared_ptr<Data const> const t = [] {
      auto d = std::make_shared<Data>();
      d->n = 1;
      d->table = {0};
      validate(*d);
      d->tag = detail::next_group_tag();
      return std::shared_ptr<Data const>(std::move(d));
    }();
    return t;
  }

  void check(Element e) const {
    if (e.tag != d_->tag) {
      detail::fail(GroupError::Kind::CrossGroup,
                   "element " + std::to_string(e.index) +
                       " belongs to a different group");
    }
    if (e.index >= d_->n) {
      detail::fail(GroupError::Kind::NotClosed,
                   "element index " + std::to_string(e.index) +
                       " out of range");
    }
  }

  static void validate(Data& d) {
    using K = GroupError::Kind;
    Index const n = d.n;
    auto at = [&](Index a, Index b) { return d.table[std::size_t(a) * n + b]; };
    if (d.table.size() != std::size_t(n) * n)
      detail::fail(K::NotClosed, "table is not square");
    if (!d.labels.empty() && d.labels.size() != n)
      detail::fail(K::NotClosed, "label count does not match order");
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (at(a, b) >= n)
          detail::fail(K::NotClosed, "entry (" + std::to_string(a) + "," +
                                         std::to_string(b) + ") = " +
                                         std::to_string(at(a, b)) +
                                         " out of range");

    std::optional<Index> e;
    for (Index c = 0; c < n && !e; ++c) {
      bool ok = true;
      for (Index x = 0; x < n && ok; ++x)
        ok = at(c, x) == x && at(x, c) == x;
      if (ok) e = c;
    }
    if (!e) detail::fail(K::NoIdentity, "no two-sided identity element");
    d.identity = *e;

    std::vector<Index> seen(n, 0);
    Index stamp = 0;
    for (Index a = 0; a < n; ++a) {
      ++stamp;
      for (Index b = 0; b < n; ++b) {
        Index v = at(a, b);
        if (seen[v] == stamp)
          detail::fail(K::NotClosed, "row " + std::to_string(a) +
                                         " repeats " + std::to_string(v) +
                                         " (not a Latin square)");
        seen[v] = stamp;
      }
    }
    for (Index b = 0; b < n; ++b) {
      ++stamp;
      for (Index a = 0; a < n; ++a) {
        Index v = at(a, b);
        if (seen[v] == stamp)
          detail::fail(K::NotClosed, "column " + std::to_string(b) +
                                         " repeats " + std::to_string(v) +
                                         " (not a Latin square)");
        seen[v] = stamp;
      }
    }

    d.inverse.assign(n, 0);
    for (Index a = 0; a < n; ++a) {
      Index r = n;
      for (Index b = 0; b < n; ++b)
        if (at(a, b) == d.identity) r = b;
      if (r == n || at(r, a) != d.identity)
        detail::fail(K::NoInverse,
                     "element " + std::to_string(a) + " has no two-sided inverse");
      d.inverse[a] = r;
    }

    for (Index s : detail::magma_generators(d.table, n)) {
      for (Index x = 0; x < n; ++x) {
        Index xs = at(x, s);
        for (Index y = 0; y < n; ++y) {
          if (at(xs, y) != at(x, at(s, y)))
            detail::fail(K::NotAssociative,
                         "(" + std::to_string(x) + "*" + std::to_string(s) +
                             ")*" + std::to_string(y) + " != " +
                             std::to_string(x) + "*(" + std::to_string(s) +
                             "*" + std::to_string(y) + ")");
        }
      }
    }

    d.orders.assign(n, 0);
    for (Index a = 0; a < n; ++a) {
      Index k = 1;
      for (Index p = a; p != d.identity; p = at(p, a)) ++k;
      d.orders[a] = k;
    }
  }

  std::shared_ptr<Data const> d_;
};

// ---------------------------------------------------------------------------
// Canonical text format:
//   order n
//   n lines of n space-separated indices
//   optional "label i <string>" lines

inline std::string to_text(FiniteGroup const& g) {
  std::string out = "order " + std::to_string(g.order()) + "\n";
  for (Index a = 0; a < g.order(); ++a) {
    auto r = g.row(a);
    for (Index b = 0; b < g.order(); ++b) {
      if (b) out += ' ';
      out += std::to_string(r[b]);
    }
    out += '\n';
  }
  if (g.has_labels())
    for (Index i = 0; i < g.order(); ++i)
      out += "label " + std::to_string(i) + " " + g.labels()[i] + "\n";
  return out;
}

inline FiniteGroup from_text(std::string const& text) {
  using K = GroupError::Kind;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("order ", 0) != 0)
    detail::fail(K::Parse, "expected 'order n' header");
  long long n = 0;
  try {
    n = std::stoll(line.substr(6));
  } catch (std::exception const&) {
    detail::fail(K::Parse, "bad order line '" + line + "'");
  }
  if (n <= 0) detail::fail(K::Parse, "order must be positive");
  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
  for (auto& r : rows) {
    if (!std::getline(in, line)) detail::fail(K::Parse, "truncated table");
    std::istringstream ls(line);
    long long v;
    while (ls >> v) {
      if (v < 0) detail::fail(K::Parse, "negative entry");
      r.push_back(static_cast<Index>(v));
    }
    if (!ls.eof()) detail::fail(K::Parse, "non-numeric entry in '" + line + "'");
  }
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("label ", 0) != 0)
      detail::fail(K::Parse, "unexpected line '" + line + "'");
    auto sp = line.find(' ', 6);
    if (sp == std::string::npos) detail::fail(K::Parse, "bad label line");
    long long i = std::stoll(line.substr(6, sp - 6));
    if (i != static_cast<long long>(labels.size()))
      detail::fail(K::Parse, "labels must be listed in index order");
    labels.push_back(line.substr(sp + 1));
  }
  if (!labels.empty() && labels.size() != rows.size())
    detail::fail(K::Parse, "label count does not match order");
  return FiniteGroup::from_table(rows, std::move(labels));
}

}  // namespace scc
