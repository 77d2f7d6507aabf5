#pragma once

// Dehn twist automorphisms of the surface group, as generator-image words.
//
// Twist curves, all simple loops on the standard one-vertex polygon with
// boundary word x1 y1 X1 Y1 x2 y2 X2 Y2 ...:
//   Tx_i : y_i -> y_i x_i
//   Ty_i : x_i -> x_i Y_i
//   Tc_i : y_i -> C y_i,  x_{i+1} -> C x_{i+1} c,  y_{i+1} -> y_{i+1} c,
//          c = y_i X_i Y_i x_{i+1}  (a chord of the polygon joining handles)
// All twists turn the same way, so adjacent chain twists satisfy the braid
// relation on integral homology.
// Generators not listed are fixed. The chain x1, y1, c1, y2, x2 gives the
// five Humphries twists at genus 2; at genus >= 3 the Lickorish family of
// 3g-1 twists is used and its completeness is assumed, not checked.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "scc/word.hpp"

namespace scc {

/// Square matrix over Z_k acting on homology column vectors.
struct HomologyMatrix {
  unsigned modulus = 2;
  unsigned dim = 0;
  std::vector<unsigned> entries;  // row-major

  unsigned at(unsigned r, unsigned c) const { return entries[r * dim + c]; }
  friend bool operator==(HomologyMatrix const&, HomologyMatrix const&) = default;

  friend HomologyMatrix operator*(HomologyMatrix const& a, HomologyMatrix const& b) {
    HomologyMatrix r{a.modulus, a.dim, std::vector<unsigned>(a.dim * a.dim, 0)};
    for (unsigned i = 0; i < a.dim; ++i)
      for (unsigned j = 0; j < a.dim; ++j) {
        unsigned long long s = 0;
        for (unsigned l = 0; l < a.dim; ++l)
          s += static_cast<unsigned long long>(a.at(i, l)) * b.at(l, j);
        r.entries[i * a.dim + j] = static_cast<unsigned>(s % a.modulus);
      }
    return r;
  }
};

/// Matrix of the intersection form, u . v = u^T J v.
inline HomologyMatrix intersection_form(unsigned genus, unsigned k) {
  HomologyMatrix j{k, 2 * genus, std::vector<unsigned>(4 * genus * genus, 0)};
  for (unsigned i = 0; i < genus; ++i) {
    j.entries[(2 * i) * j.dim + 2 * i + 1] = 1;
    j.entries[(2 * i + 1) * j.dim + 2 * i] = k - 1;
  }
  return j;
}

inline HomologyMatrix transpose(HomologyMatrix const& m) {
  HomologyMatrix t = m;
  for (unsigned i = 0; i < m.dim; ++i)
    for (unsigned c = 0; c < m.dim; ++c) t.entries[c * m.dim + i] = m.at(i, c);
  return t;
}

inline bool is_symplectic(HomologyMatrix const& m) {
  auto j = intersection_form(m.dim / 2, m.modulus);
  return transpose(m) * j * m == j;
}

class TwistAutomorphism {
 public:
  /// Validates that the images send the relator to a conjugate of itself and
  /// that the induced mod-2 homology action is symplectic.
  TwistAutomorphism(unsigned genus, std::vector<SurfaceWord> images,
                    std::string name, std::string inverse_name)
      : genus_(genus),
        images_(std::move(images)),
        name_(std::move(name)),
        inverse_name_(std::move(inverse_name)) {
    if (images_.size() != 2 * genus_)
      throw std::invalid_argument(name_ + ": need one image per generator");
    if (!freely_conjugate(apply(relator(genus_)), relator(genus_)))
      throw std::invalid_argument(name_ + ": relator image is not conjugate to the relator");
    if (!is_symplectic(homology_matrix(2)))
      throw std::invalid_argument(name_ + ": homology action is not symplectic");
  }

  unsigned genus() const noexcept { return genus_; }
  std::vector<SurfaceWord> const& images() const noexcept { return images_; }
  std::string const& name() const noexcept { return name_; }
  std::string const& inverse_name() const noexcept { return inverse_name_; }

  /// Substitutes generator images into w.
  SurfaceWord apply(SurfaceWord const& w) const {
    std::vector<Letter> out;
    for (Letter l : w.letters()) {
      auto const& img = l.inverse ? images_[l.gen].inverse() : images_[l.gen];
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
    return {genus_, out};
  }

  /// Column j is the class of the image of generator j.
  HomologyMatrix homology_matrix(unsigned k) const {
    unsigned const d = 2 * genus_;
    HomologyMatrix m{k, d, std::vector<unsigned>(d * d, 0)};
    for (unsigned j = 0; j < d; ++j) {
      auto h = homology_class(images_[j], k);
      for (unsigned i = 0; i < d; ++i) m.entries[i * d + j] = h.coords[i];
    }
    return m;
  }

 private:
  unsigned genus_;
  std::vector<SurfaceWord> images_;
  std::string name_;
  std::string inverse_name_;
};

namespace detail {

inline std::vector<SurfaceWord> identity_images(unsigned genus) {
  std::vector<SurfaceWord> imgs;
  for (unsigned g = 0; g < 2 * genus; ++g) imgs.push_back(SurfaceWord(genus, {Letter{g, false}}));
  return imgs;
}

inline SurfaceWord chord(unsigned genus, unsigned i) {
  return word(genus, {y(i), x(i, true), y(i, true), x(i + 1)});
}

inline std::vector<SurfaceWord> handle_x_twist(unsigned genus, unsigned i, bool inv) {
  auto imgs = identity_images(genus);
  imgs[y(i).gen] = word(genus, {y(i), x(i, inv)});
  return imgs;
}

inline std::vector<SurfaceWord> handle_y_twist(unsigned genus, unsigned i, bool inv) {
  auto imgs = identity_images(genus);
  imgs[x(i).gen] = word(genus, {x(i), y(i, !inv)});
  return imgs;
}

inline std::vector<SurfaceWord> chord_twist(unsigned genus, unsigned i, bool inv) {
  auto imgs = identity_images(genus);
  SurfaceWord c = chord(genus, i);
  SurfaceWord ci = c.inverse();
  SurfaceWord const& pre = inv ? c : ci;
  SurfaceWord const& post = inv ? ci : c;
  imgs[y(i).gen] = pre * word(genus, {y(i)});
  imgs[x(i + 1).gen] = pre * word(genus, {x(i + 1)}) * post;
  imgs[y(i + 1).gen] = word(genus, {y(i + 1)}) * post;
  return imgs;
}

}  // namespace detail

struct TwistSet {
  unsigned genus = 1;
  /// Positive twists first (in chain order), then their inverses in the
  /// same order. Search code relies on this fixed order.
  std::vector<TwistAutomorphism> twists;
  bool assumed_complete = false;  // completeness cited, not established
};

/// genus 1: Tx1, Ty1. genus 2: Tx1, Ty1, Tc1, Ty2, Tx2. genus g >= 3: the
/// Lickorish family along the chain x1, y1, c1, y2, c2, ..., yg, xg plus the
/// remaining Tx_i.
inline TwistSet twist_generators(unsigned genus) {
  if (genus == 0) throw std::invalid_argument("genus must be >= 1");
  struct Spec {
    std::string name;
    int kind;  // 0 = x, 1 = y, 2 = chord
    unsigned i;
  };
  std::vector<Spec> chain;
  chain.push_back({"Tx1", 0, 1});
  chain.push_back({"Ty1", 1, 1});
  for (unsigned i = 1; i < genus; ++i) {
    chain.push_back({"Tc" + std::to_string(i), 2, i});
    chain.push_back({"Ty" + std::to_string(i + 1), 1, i + 1});
  }
  if (genus >= 2) chain.push_back({"Tx" + std::to_string(genus), 0, genus});
  for (unsigned i = 2; i < genus; ++i) chain.push_back({"Tx" + std::to_string(i), 0, i});

  auto images = [&](Spec const& s, bool inv) {
    switch (s.kind) {
      case 0: return detail::handle_x_twist(genus, s.i, inv);
      case 1: return detail::handle_y_twist(genus, s.i, inv);
      default: return detail::chord_twist(genus, s.i, inv);
    }
  };

  TwistSet set;
  set.genus = genus;
  set.assumed_complete = genus >= 3;
  for (auto const& s : chain)
    set.twists.emplace_back(genus, images(s, false), s.name, s.name + "^-1");
  for (auto const& s : chain)
    set.twists.emplace_back(genus, images(s, true), s.name + "^-1", s.name);
  return set;
}

/// Order of the matrix group generated by `gens` (mod 2, dim <= 8), by
/// closure. Matrices are packed row-major into 64 bits.
inline std::uint64_t generated_group_order_mod2(std::vector<HomologyMatrix> const& gens) {
  if (gens.empty()) return 1;
  unsigned const d = gens.front().dim;
  if (d > 8) throw std::invalid_argument("matrix dimension too large for closure");
  auto pack = [d](HomologyMatrix const& m) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < d * d; ++i)
      if (m.entries[i] & 1u) v |= std::uint64_t{1} << i;
    return v;
  };
  auto mul = [d](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) {
        unsigned s = 0;
        for (unsigned l = 0; l < d; ++l)
          s ^= static_cast<unsigned>((a >> (i * d + l)) & (b >> (l * d + j)) & 1u);
        if (s) r |= std::uint64_t{1} << (i * d + j);
      }
    return r;
  };
  std::vector<std::uint64_t> g;
  for (auto const& m : gens) g.push_back(pack(m));
  std::uint64_t id = 0;
  for (unsigned i = 0; i < d; ++i) id |= std::uint64_t{1} << (i * d + i);
  std::unordered_set<std::uint64_t> seen{id};
  std::vector<std::uint64_t> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto m : frontier)
      for (auto s : g) {
        auto p = mul(m, s);
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier.swap(next);
  }
  return seen.size();
}

}  // namespace scc
