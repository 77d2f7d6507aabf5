#pragma once

// Mod-k Heisenberg groups G(k, g) on tuples (a1, b1, ..., ag, bg; eps) with
//   (a, b; eps)(a', b'; eps') = (a + a', b + b'; eps + eps' + sum b_i a_i'),
// the surjection from the genus-g surface group onto them, the two order-24
// groups that are not cyclic extensions of abelian groups, and the order
// formulas for the iterated homology cover and for G(g, g).

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "scc/constructions.hpp"
#include "scc/group.hpp"
#include "scc/hom.hpp"
#include "scc/morphism.hpp"
#include "scc/subgroup.hpp"
#include "scc/word.hpp"

namespace scc {

/// Largest G(k, g) materialised as a table.
inline constexpr std::uint64_t kHeisenbergTableLimit = 4096;

struct HeisenbergSpec {
  unsigned k = 2;
  unsigned g = 2;

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < 2 * g + 1; ++i) {
      if (n > std::numeric_limits<std::uint64_t>::max() / k)
        throw std::overflow_error("Heisenberg order overflows 64 bits");
      n *= k;
    }
    return n;
  }
  unsigned width() const { return 2 * g + 1; }
};

/// Tuple arithmetic without a table. Coordinates are (a1, b1, ..., ag, bg,
/// eps), each in [0, k).
class HeisenbergArith {
 public:
  using Tuple = std::vector<unsigned>;

  explicit HeisenbergArith(HeisenbergSpec spec) : s_(spec) {
    if (s_.k < 2) throw std::invalid_argument("Heisenberg modulus must be >= 2");
    if (s_.g < 1) throw std::invalid_argument("Heisenberg genus must be >= 1");
  }

  HeisenbergSpec const& spec() const noexcept { return s_; }
  Tuple identity() const { return Tuple(s_.width(), 0); }

  Tuple mul(Tuple const& u, Tuple const& v) const {
    unsigned const k = s_.k;
    Tuple r(s_.width());
    std::uint64_t eps = u.back() + v.back();
    for (unsigned i = 0; i < s_.g; ++i) {
      r[2 * i] = (u[2 * i] + v[2 * i]) % k;
      r[2 * i + 1] = (u[2 * i + 1] + v[2 * i + 1]) % k;
      eps += std::uint64_t(u[2 * i + 1]) * v[2 * i];
    }
    r.back() = static_cast<unsigned>(eps % k);
    return r;
  }

  /// (-a, -b; -eps + sum b_i a_i)
  Tuple inv(Tuple const& u) const {
    unsigned const k = s_.k;
    Tuple r(s_.width());
    std::uint64_t eps = (k - u.back()) % k;
    for (unsigned i = 0; i < s_.g; ++i) {
      r[2 * i] = (k - u[2 * i]) % k;
      r[2 * i + 1] = (k - u[2 * i + 1]) % k;
      eps += std::uint64_t(u[2 * i + 1]) * u[2 * i];
    }
    r.back() = static_cast<unsigned>(eps % k);
    return r;
  }

  Tuple commutator(Tuple const& u, Tuple const& v) const {
    return mul(mul(u, v), mul(inv(u), inv(v)));
  }

  /// sum_i (b_i a_i' - b_i' a_i) mod k
  unsigned pairing(Tuple const& u, Tuple const& v) const {
    unsigned const k = s_.k;
    std::uint64_t s = 0;
    for (unsigned i = 0; i < s_.g; ++i) {
      s += std::uint64_t(u[2 * i + 1]) * v[2 * i];
      s += std::uint64_t(k - v[2 * i + 1] % k) % k * u[2 * i];
    }
    return static_cast<unsigned>(s % k);
  }

  Tuple central(unsigned eps) const {
    Tuple r = identity();
    r.back() = eps % s_.k;
    return r;
  }

  /// Mixed-radix index, first coordinate least significant.
  std::uint64_t index(Tuple const& u) const {
    std::uint64_t i = 0;
    for (auto it = u.rbegin(); it != u.rend(); ++it) i = i * s_.k + *it;
    return i;
  }
  Tuple tuple(std::uint64_t i) const {
    Tuple r(s_.width());
    for (auto& c : r) {
      c = static_cast<unsigned>(i % s_.k);
      i /= s_.k;
    }
    return r;
  }

  /// psi images: x_i -> e_{a_i}, y_i -> -e_{b_i}.
  std::vector<Tuple> psi_images() const {
    std::vector<Tuple> out;
    for (unsigned i = 0; i < s_.g; ++i) {
      Tuple xa = identity(), yb = identity();
      xa[2 * i] = 1;
      yb[2 * i + 1] = s_.k - 1;
      out.push_back(std::move(xa));
      out.push_back(std::move(yb));
    }
    return out;
  }

  Tuple evaluate(SurfaceWord const& w, std::vector<Tuple> const& images) const {
    Tuple r = identity();
    for (Letter l : w.letters()) r = mul(r, l.inverse ? inv(images[l.gen]) : images[l.gen]);
    return r;
  }

 private:
  HeisenbergSpec s_;
};

inline std::string tuple_label(std::vector<unsigned> const& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += (i + 1 == t.size()) ? ";" : ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

/// Table of G(k, g); element index is HeisenbergArith::index of its tuple.
inline FiniteGroup build_heisenberg(unsigned k, unsigned g) {
  if (k < 2) throw std::invalid_argument("build_heisenberg: k must be >= 2");
  if (g < 2) throw std::invalid_argument("build_heisenberg: g must be >= 2");
  HeisenbergSpec spec{k, g};
  auto n64 = spec.order();
  if (n64 > kHeisenbergTableLimit)
    throw std::length_error("build_heisenberg: order " + std::to_string(n64) +
                            " exceeds table limit " + std::to_string(kHeisenbergTableLimit) +
                            "; use HeisenbergArith");
  Index const n = static_cast<Index>(n64);
  HeisenbergArith h(spec);
  std::vector<HeisenbergArith::Tuple> tuples(n);
  std::vector<std::string> labels(n);
  for (Index i = 0; i < n; ++i) {
    tuples[i] = h.tuple(i);
    labels[i] = tuple_label(tuples[i]);
  }
  std::vector<Index> t(std::size_t(n) * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      t[std::size_t(a) * n + b] = static_cast<Index>(h.index(h.mul(tuples[a], tuples[b])));
  return FiniteGroup::from_flat(n, std::move(t), std::move(labels));
}

struct IdentityCheck {
  bool holds = true;
  std::uint64_t pairs = 0;
  bool exhaustive = false;
  std::optional<std::pair<std::vector<unsigned>, std::vector<unsigned>>> counterexample;
};

/// [u, v] is central with eps equal to the tuple pairing, for every pair of a
/// group built by build_heisenberg (from its table).
inline IdentityCheck commutator_identity_check(FiniteGroup const& g, HeisenbergSpec spec) {
  HeisenbergArith h(spec);
  if (g.order() != spec.order())
    throw std::invalid_argument("commutator_identity_check: order does not match spec");
  IdentityCheck out;
  out.exhaustive = true;
  std::vector<HeisenbergArith::Tuple> tuples(g.order());
  for (Index i = 0; i < g.order(); ++i) tuples[i] = h.tuple(i);
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) {
      ++out.pairs;
      auto expect = h.index(h.central(h.pairing(tuples[a], tuples[b])));
      if (g.commutator(a, b) != expect) {
        out.holds = false;
        out.counterexample = {tuples[a], tuples[b]};
        return out;
      }
    }
  return out;
}

/// Same identity in tuple arithmetic: exhaustive up to kHeisenbergTableLimit
/// elements, otherwise `samples` random pairs.
inline IdentityCheck commutator_identity_check(HeisenbergSpec spec,
                                               std::uint64_t samples = 1'000'000,
                                               std::uint64_t seed = 1) {
  HeisenbergArith h(spec);
  IdentityCheck out;
  auto test = [&](HeisenbergArith::Tuple const& u, HeisenbergArith::Tuple const& v) {
    ++out.pairs;
    if (h.commutator(u, v) != h.central(h.pairing(u, v))) {
      out.holds = false;
      out.counterexample = {u, v};
      return false;
    }
    return true;
  };
  std::uint64_t const n = spec.order();
  if (n <= kHeisenbergTableLimit) {
    out.exhaustive = true;
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        if (!test(h.tuple(a), h.tuple(b))) return out;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> coord(0, spec.k - 1);
  HeisenbergArith::Tuple u(spec.width()), v(spec.width());
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& c : u) c = coord(rng);
    for (auto& c : v) c = coord(rng);
    if (!test(u, v)) return out;
  }
  return out;
}

/// psi: pi_1(F_g) -> G(k, g). The relator maps to eps = g mod k, so this is a
/// homomorphism exactly when k divides g.
inline SurfaceHom build_psi(unsigned k, unsigned g) {
  if (g % k != 0)
    throw std::invalid_argument("build_psi: relator maps to eps = " + std::to_string(g % k) +
                                ", not a homomorphism unless k divides g");
  auto group = build_heisenberg(k, g);
  HeisenbergArith h({k, g});
  std::vector<Index> images;
  for (auto const& t : h.psi_images()) images.push_back(static_cast<Index>(h.index(t)));
  return {group, g, std::move(images)};
}

struct FormulaCheck {
  bool holds = true;
  std::uint64_t pairs = 0;
  std::optional<std::pair<std::string, std::string>> counterexample;
};

/// [psi(w1), psi(w2)] = (0; |w1| . |w2|) for every generator pair and
/// `random_pairs` random word pairs of length <= max_length. psi is applied to
/// free-group words, so k need not divide g.
inline FormulaCheck intersection_formula_check(unsigned k, unsigned g,
                                               std::uint64_t random_pairs = 1000,
                                               unsigned max_length = 12,
                                               std::uint64_t seed = 7) {
  HeisenbergArith h({k, g});
  auto images = h.psi_images();
  FormulaCheck out;
  auto test = [&](SurfaceWord const& u, SurfaceWord const& v) {
    ++out.pairs;
    auto lhs = h.commutator(h.evaluate(u, images), h.evaluate(v, images));
    auto rhs = h.central(intersection(homology_class(u, k), homology_class(v, k)));
    if (lhs != rhs) {
      out.holds = false;
      out.counterexample = {to_string(u), to_string(v)};
      return false;
    }
    return true;
  };
  for (unsigned a = 0; a < 2 * g; ++a)
    for (unsigned b = 0; b < 2 * g; ++b)
      for (bool ia : {false, true})
        for (bool ib : {false, true})
          if (!test(SurfaceWord(g, {Letter{a, ia}}), SurfaceWord(g, {Letter{b, ib}}))) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> len(0, max_length), gen(0, 2 * g - 1), bit(0, 1);
  auto random_word = [&] {
    std::vector<Letter> l(len(rng));
    for (auto& x : l) x = Letter{gen(rng), bit(rng) == 1};
    return SurfaceWord(g, l);
  };
  for (std::uint64_t i = 0; i < random_pairs; ++i)
    if (!test(random_word(), random_word())) return out;
  return out;
}

/// eps-coordinate of psi(c_m), checked to be central.
inline std::optional<unsigned> separating_image_eps(unsigned k, unsigned g, unsigned m) {
  HeisenbergArith h({k, g});
  auto t = h.evaluate(commutator_prefix(g, m), h.psi_images());
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i] != 0) return std::nullopt;
  return t.back();
}

// ---------------------------------------------------------------------------

/// Q8 x| Z3 with t: i -> j -> k -> i.
inline FiniteGroup build_sl2z3() {
  auto q = quaternion8();
  auto z3 = cyclic(3);
  // indices 1,-1,i,-i,j,-j,k,-k
  std::vector<Index> t{0, 1, 4, 5, 6, 7, 2, 3};
  std::vector<std::vector<Index>> action(3, std::vector<Index>(8));
  for (Index x = 0; x < 8; ++x) {
    action[0][x] = x;
    action[1][x] = t[x];
    action[2][x] = t[t[x]];
  }
  return semidirect_product(q, z3, action);
}

/// V4 x| S3 with S3 permuting the three involutions of V4.
inline FiniteGroup build_s4() {
  auto v = klein4();
  auto s3 = symmetric(3);
  std::vector<std::vector<Index>> perms;
  std::vector<Index> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<Index>> action;
  for (auto const& q : perms) {
    std::vector<Index> a{0, 0, 0, 0};
    for (Index x = 1; x < 4; ++x) a[x] = q[x - 1] + 1;
    action.push_back(a);
  }
  return semidirect_product(v, s3, action);
}

// ---------------------------------------------------------------------------

using BigInt = boost::multiprecision::cpp_int;

/// Iterated mod-2 homology cover: genus g' of the intermediate cover and the
/// exponent of the order 2^exponent of the deck group.
struct CassonReport {
  unsigned g = 1;
  BigInt g_prime;
  BigInt exponent;
  unsigned base = 2;
  std::optional<BigInt> order;  // materialised only for small exponents
  static constexpr char const* kNote =
      "total degree printed as 2^{2g'} 2g is read as 2^{2g'} * 2^{2g}, the "
      "reading forced by the stated final exponent";
};

inline CassonReport casson_report(unsigned g) {
  if (g < 1) throw std::invalid_argument("casson_report: g must be >= 1");
  CassonReport r;
  r.g = g;
  BigInt t = BigInt(g - 1) << (2 * g + 1);
  r.g_prime = (t + 2) / 2;
  r.exponent = t + 2 + 2 * g;
  if (r.exponent <= 256) r.order = BigInt(1) << static_cast<unsigned>(r.exponent);
  return r;
}

/// |G(g, g)| = g^(2g+1).
struct GkOrder {
  unsigned base = 2;
  unsigned exponent = 5;
  BigInt value;
  /// log2 of the order, for comparison with a power of two.
  double log2() const { return exponent * std::log2(double(base)); }
};

inline GkOrder gk_order(unsigned g) {
  if (g < 2) throw std::invalid_argument("gk_order: g must be >= 2 (genus 1 uses Z2 x Z2)");
  GkOrder o{g, 2 * g + 1, 1};
  for (unsigned i = 0; i < o.exponent; ++i) o.value *= g;
  return o;
}

/// True when g^(2g+1) < 2^exponent, compared exactly.
inline bool gk_smaller_than_casson(unsigned g) {
  auto gk = gk_order(g);
  auto c = casson_report(g);
  auto bits = msb(gk.value) + 1;  // gk.value < 2^bits
  if (c.exponent >= bits) return true;
  return gk.value < (BigInt(1) << static_cast<unsigned>(c.exponent));
}

// ---------------------------------------------------------------------------

/// Named constructions: "G2", "Gk:k=K,g=G", "SL2Z3", "S4", "Klein4", "Zn",
/// "Dn" (order 2n), "Sn", "Q8", "trivial".
inline FiniteGroup named_group(std::string const& name) {
  auto number = [&](std::string const& s) -> unsigned {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad number in group name '" + name + "'");
    return static_cast<unsigned>(std::stoul(s));
  };
  if (name == "G2") return build_heisenberg(2, 2);
  if (name == "SL2Z3") return build_sl2z3();
  if (name == "S4") return build_s4();
  if (name == "Klein4" || name == "V4") return klein4();
  if (name == "Q8") return quaternion8();
  if (name == "trivial" || name == "Z1") return FiniteGroup{};
  if (name.rfind("Gk:", 0) == 0) {
    unsigned k = 0, g = 0;
    std::string rest = name.substr(3);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      auto part = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (part.rfind("k=", 0) == 0)
        k = number(part.substr(2));
      else if (part.rfind("g=", 0) == 0)
        g = number(part.substr(2));
      else
        throw std::invalid_argument("bad parameter '" + part + "' in '" + name + "'");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return build_heisenberg(k, g);
  }
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'D' || name[0] == 'S')) {
    unsigned n = number(name.substr(1));
    if (n == 0) throw std::invalid_argument("bad group name '" + name + "'");
    if (name[0] == 'Z') return cyclic(n);
    if (name[0] == 'D') return dihedral(n);
    if (n > 6) throw std::invalid_argument("symmetric group too large: '" + name + "'");
    return symmetric(n);
  }
  throw std::invalid_argument("unknown group name '" + name + "'");
}

}  // namespace scc
