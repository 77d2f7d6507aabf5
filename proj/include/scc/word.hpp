#pragma once

// Words in the standard generators x1, y1, ..., xg, yg of a closed surface
// group, and their mod-k homology classes.

#include <algorithm>
#include <cctype>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace scc {

/// Generator 2(i-1) is x_i, 2(i-1)+1 is y_i.
struct Letter {
  unsigned gen = 0;
  bool inverse = false;

  Letter inv() const { return {gen, !inverse}; }
  friend bool operator==(Letter const&, Letter const&) = default;
  friend auto operator<=>(Letter const&, Letter const&) = default;
};

inline Letter x(unsigned i, bool inv = false) { return {2 * (i - 1), inv}; }
inline Letter y(unsigned i, bool inv = false) { return {2 * (i - 1) + 1, inv}; }

class SurfaceWord {
 public:
  SurfaceWord() = default;

  /// Freely reduces `letters`; throws if a letter exceeds the genus.
  SurfaceWord(unsigned genus, std::vector<Letter> const& letters) : genus_(genus) {
    if (genus == 0) throw std::invalid_argument("surface genus must be >= 1");
    for (Letter l : letters) {
      if (l.gen >= 2 * genus)
        throw std::invalid_argument("letter beyond genus " + std::to_string(genus));
      if (!letters_.empty() && letters_.back() == l.inv())
        letters_.pop_back();
      else
        letters_.push_back(l);
    }
  }

  unsigned genus() const noexcept { return genus_; }
  std::vector<Letter> const& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  SurfaceWord inverse() const {
    std::vector<Letter> r;
    r.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      r.push_back(it->inv());
    return {genus_, r};
  }

  friend SurfaceWord operator*(SurfaceWord const& a, SurfaceWord const& b) {
    std::vector<Letter> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return {std::max(a.genus_, b.genus_), l};
  }

  friend bool operator==(SurfaceWord const&, SurfaceWord const&) = default;

 private:
  unsigned genus_ = 1;
  std::vector<Letter> letters_;
};

inline SurfaceWord reduce(SurfaceWord const& w) { return {w.genus(), w.letters()}; }

inline SurfaceWord word(unsigned genus, std::vector<Letter> const& letters) {
  return {genus, letters};
}

/// [u, v] = u v u^-1 v^-1
inline SurfaceWord commutator(SurfaceWord const& u, SurfaceWord const& v) {
  return u * v * u.inverse() * v.inverse();
}

/// Product of [x_i, y_i] for i = 1..m, in genus `genus`.
inline SurfaceWord commutator_prefix(unsigned genus, unsigned m) {
  std::vector<Letter> l;
  for (unsigned i = 1; i <= m; ++i) {
    l.push_back(x(i));
    l.push_back(y(i));
    l.push_back(x(i, true));
    l.push_back(y(i, true));
  }
  return {genus, l};
}

inline SurfaceWord relator(unsigned genus) { return commutator_prefix(genus, genus); }

/// Removes matching inverse pairs from the two ends.
inline std::vector<Letter> cyclically_reduce(SurfaceWord const& w) {
  auto l = w.letters();
  std::size_t b = 0, e = l.size();
  while (e - b >= 2 && l[b] == l[e - 1].inv()) {
    ++b;
    --e;
  }
  return {l.begin() + static_cast<std::ptrdiff_t>(b),
          l.begin() + static_cast<std::ptrdiff_t>(e)};
}

/// True when u and v are conjugate in the free group on the generators.
inline bool freely_conjugate(SurfaceWord const& u, SurfaceWord const& v) {
  auto a = cyclically_reduce(u);
  auto b = cyclically_reduce(v);
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (std::equal(a.begin() + static_cast<std::ptrdiff_t>(s), a.end(), b.begin()) &&
        std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s),
                   b.end() - static_cast<std::ptrdiff_t>(s)))
      return true;
  return false;
}

// ASCII form: "x1 y1 X1 Y1", capitals for inverses, "1" for the empty word.

inline std::string to_string(Letter l) {
  char c = (l.gen % 2 == 0) ? 'x' : 'y';
  if (l.inverse) c = static_cast<char>(std::toupper(c));
  return c + std::to_string(l.gen / 2 + 1);
}

inline std::string to_string(SurfaceWord const& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += to_string(l);
  }
  return out;
}

inline SurfaceWord parse_word(std::string const& text, unsigned genus) {
  std::vector<Letter> l;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (c == '1' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    char lc = static_cast<char>(std::tolower(c));
    if (lc != 'x' && lc != 'y')
      throw std::invalid_argument("bad letter '" + std::string(1, c) + "' in word '" + text + "'");
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw std::invalid_argument("missing subscript in word '" + text + "'");
    unsigned idx = static_cast<unsigned>(std::stoul(text.substr(i + 1, j - i - 1)));
    if (idx == 0 || idx > genus)
      throw std::invalid_argument("subscript out of range in word '" + text + "'");
    l.push_back(lc == 'x' ? x(idx, inv) : y(idx, inv));
    i = j;
  }
  return {genus, l};
}

// ---------------------------------------------------------------------------

/// Class in H_1(F; Z_k), coordinates (a1, b1, ..., ag, bg).
struct HomologyClass {
  unsigned modulus = 2;
  std::vector<unsigned> coords;

  unsigned genus() const { return static_cast<unsigned>(coords.size() / 2); }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](unsigned c) { return c == 0; });
  }
  friend bool operator==(HomologyClass const&, HomologyClass const&) = default;

  friend HomologyClass operator+(HomologyClass const& u, HomologyClass const& v) {
    if (u.modulus != v.modulus || u.coords.size() != v.coords.size())
      throw std::invalid_argument("homology classes over different moduli or genera");
    HomologyClass r = u;
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      r.coords[i] = (u.coords[i] + v.coords[i]) % u.modulus;
    return r;
  }
};

/// Exponent sums of each generator, mod k.
inline HomologyClass homology_class(SurfaceWord const& w, unsigned k) {
  if (k < 2) throw std::invalid_argument("homology modulus must be >= 2");
  HomologyClass h{k, std::vector<unsigned>(2 * w.genus(), 0)};
  for (Letter l : w.letters())
    h.coords[l.gen] = (h.coords[l.gen] + (l.inverse ? k - 1 : 1)) % k;
  return h;
}

/// Algebraic intersection number mod k, oriented so that |x_i| . |y_i| = 1:
///   u . v = sum_i (a_i b_i' - a_i' b_i).
inline unsigned intersection(HomologyClass const& u, HomologyClass const& v) {
  if (u.modulus != v.modulus)
    throw std::invalid_argument("intersection: modulus mismatch");
  if (u.coords.size() != v.coords.size())
    throw std::invalid_argument("intersection: genus mismatch");
  unsigned const k = u.modulus;
  unsigned long long s = 0;
  for (std::size_t i = 0; i + 1 < u.coords.size(); i += 2) {
    s += static_cast<unsigned long long>(u.coords[i]) * v.coords[i + 1];
    s += static_cast<unsigned long long>(k - v.coords[i]) % k * u.coords[i + 1];
  }
  return static_cast<unsigned>(s % k);
}

}  // namespace scc
