#pragma once

// Homomorphisms from a surface group to a finite group, given by the images
// of x1, y1, ..., xg, yg.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scc/group.hpp"
#include "scc/twist.hpp"
#include "scc/word.hpp"

namespace scc {

/// Image of a word under generator images, as a raw index.
inline Index evaluate_images(FiniteGroup const& g, std::span<Index const> images,
                             std::vector<Letter> const& letters) {
  Index r = g.identity_index();
  for (Letter l : letters) {
    Index v = images[l.gen];
    r = g.product(r, l.inverse ? g.inverse(v) : v);
  }
  return r;
}

class SurfaceHom {
 public:
  /// Throws std::invalid_argument unless the relator maps to the identity.
  SurfaceHom(FiniteGroup target, unsigned genus, std::vector<Index> images)
      : target_(std::move(target)), genus_(genus), images_(std::move(images)) {
    if (genus_ == 0) throw std::invalid_argument("genus must be >= 1");
    if (images_.size() != 2 * genus_)
      throw std::invalid_argument("expected " + std::to_string(2 * genus_) + " images");
    for (Index v : images_)
      if (v >= target_.order()) throw std::invalid_argument("image index out of range");
    if (evaluate_images(target_, images_, relator(genus_).letters()) !=
        target_.identity_index())
      throw std::invalid_argument("images do not satisfy the surface relator");
  }

  FiniteGroup const& target() const noexcept { return target_; }
  unsigned genus() const noexcept { return genus_; }
  std::vector<Index> const& images() const noexcept { return images_; }
  Element image(unsigned gen) const { return target_.element(images_.at(gen)); }

  friend bool operator==(SurfaceHom const& a, SurfaceHom const& b) {
    return a.target_ == b.target_ && a.genus_ == b.genus_ && a.images_ == b.images_;
  }

 private:
  FiniteGroup target_;
  unsigned genus_;
  std::vector<Index> images_;
};

inline Element evaluate(SurfaceWord const& w, SurfaceHom const& h) {
  if (w.genus() > h.genus())
    throw std::invalid_argument("word genus exceeds homomorphism genus");
  return h.target().element(evaluate_images(h.target(), h.images(), w.letters()));
}

/// phi -> phi o t
inline SurfaceHom apply(TwistAutomorphism const& t, SurfaceHom const& h) {
  if (t.genus() != h.genus()) throw std::invalid_argument("twist genus mismatch");
  std::vector<Index> out(h.images().size());
  for (unsigned g = 0; g < out.size(); ++g)
    out[g] = evaluate_images(h.target(), h.images(), t.images()[g].letters());
  return {h.target(), h.genus(), std::move(out)};
}

/// Simultaneous conjugation of every image by c.
inline SurfaceHom conjugate(SurfaceHom const& h, Index c) {
  std::vector<Index> out = h.images();
  for (auto& v : out) v = h.target().conjugate(c, v);
  return {h.target(), h.genus(), std::move(out)};
}

/// Lexicographically least image tuple under simultaneous conjugation.
/// Precomputes, for every element, the conjugators taking it to the least
/// member of its conjugacy class, so that only a centralizer coset is
/// scanned per tuple.
class Canonicalizer {
 public:
  explicit Canonicalizer(FiniteGroup g) : g_(std::move(g)) {
    Index const n = g_.order();
    class_min_.assign(n, n);
    to_min_.resize(n);
    for (Index x = 0; x < n; ++x) {
      Index best = n;
      for (Index c = 0; c < n; ++c) best = std::min(best, g_.conjugate(c, x));
      class_min_[x] = best;
      for (Index c = 0; c < n; ++c)
        if (g_.conjugate(c, x) == best) to_min_[x].push_back(c);
    }
  }

  FiniteGroup const& group() const noexcept { return g_; }

  void canonicalize(std::span<Index> t) const {
    if (t.empty()) return;
    thread_local std::vector<Index> cand;
    cand.assign(to_min_[t[0]].begin(), to_min_[t[0]].end());
    t[0] = class_min_[t[0]];
    for (std::size_t i = 1; i < t.size() && cand.size() > 1; ++i) {
      Index best = g_.order();
      for (Index c : cand) best = std::min(best, g_.conjugate(c, t[i]));
      std::size_t keep = 0;
      for (Index c : cand)
        if (g_.conjugate(c, t[i]) == best) cand[keep++] = c;
      cand.resize(keep);
    }
    Index c = cand.front();
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = g_.conjugate(c, t[i]);
  }

 private:
  FiniteGroup g_;
  std::vector<Index> class_min_;
  std::vector<std::vector<Index>> to_min_;
};

inline SurfaceHom canonical_class(SurfaceHom const& h) {
  Canonicalizer canon(h.target());
  std::vector<Index> t = h.images();
  canon.canonicalize(t);
  return {h.target(), h.genus(), std::move(t)};
}

/// "x1=3 y1=0 ..." with element indices.
inline std::string to_string(SurfaceHom const& h) {
  std::string out;
  for (unsigned g = 0; g < h.images().size(); ++g) {
    if (g) out += ' ';
    out += to_string(Letter{g, false}) + "=" + std::to_string(h.images()[g]);
  }
  return out;
}

}  // namespace scc
