#pragma once

// The free algebra generated by two families of orthogonal idempotents
// e_0..e_d (nonstarred) and E_0..E_d (starred). Words alternate between the
// families; they form a linear basis, and the product of two words is either
// zero or a word.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"

namespace tdpair {

enum class Family : std::uint8_t { Starred = 0, Nonstarred = 1 };

inline Family other(Family f) { return f == Family::Starred ? Family::Nonstarred : Family::Starred; }

inline constexpr std::size_t kMaxDiameter = 254;

struct Generator {
  Family family = Family::Starred;
  std::uint32_t index = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;

  /// "E3" for starred, "e3" for nonstarred.
  std::string to_string() const {
    return (family == Family::Starred ? "E" : "e") + std::to_string(index);
  }
};

inline Generator starred(std::uint32_t i) { return {Family::Starred, i}; }
inline Generator nonstarred(std::uint32_t i) { return {Family::Nonstarred, i}; }

class Word {
 public:
  /// The trivial word 1.
  Word() = default;

  Word(Family begin, std::vector<std::uint8_t> indices) : begin_(begin), indices_(std::move(indices)) {
    if (indices_.empty()) begin_ = Family::Starred;
  }

  static Word generator(Generator g) {
    if (g.index > kMaxDiameter) throw Error(Errc::InvalidArgument, "generator index too large");
    return Word(g.family, {static_cast<std::uint8_t>(g.index)});
  }

  /// Builds from a generator list; consecutive generators must alternate.
  static Word from_generators(const std::vector<Generator>& gens) {
    if (gens.empty()) return Word();
    std::vector<std::uint8_t> idx;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i > 0 && gens[i].family == gens[i - 1].family) {
        throw Error(Errc::InvalidArgument, "generators of a word must alternate");
      }
      if (gens[i].index > kMaxDiameter) throw Error(Errc::InvalidArgument, "generator index too large");
      idx.push_back(static_cast<std::uint8_t>(gens[i].index));
    }
    return Word(gens.front().family, std::move(idx));
  }

  /// Parses "E0 e2 E0" (whitespace optional) or "1" for the trivial word.
  static Word parse(std::string_view text) {
    std::vector<Generator> gens;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i < text.size() && text[i] == '1') {
      ++i;
      skip_ws();
      if (i != text.size()) throw Error(Errc::ParseError, "trailing text after trivial word");
      return Word();
    }
    while (i < text.size()) {
      char c = text[i];
      if (c != 'e' && c != 'E') throw Error(Errc::ParseError, "expected generator in '" + std::string(text) + "'");
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw Error(Errc::ParseError, "generator without index in '" + std::string(text) + "'");
      unsigned long idx = std::stoul(std::string(text.substr(start, i - start)));
      gens.push_back({c == 'E' ? Family::Starred : Family::Nonstarred, static_cast<std::uint32_t>(idx)});
      skip_ws();
    }
    if (gens.empty()) throw Error(Errc::ParseError, "empty word");
    return from_generators(gens);
  }

  std::size_t length() const noexcept { return indices_.size(); }
  bool trivial() const noexcept { return indices_.empty(); }
  Family begin_family() const noexcept { return begin_; }
  const std::vector<std::uint8_t>& indices() const noexcept { return indices_; }

  Family family_at(std::size_t pos) const { return pos % 2 == 0 ? begin_ : other(begin_); }
  Generator at(std::size_t pos) const { return {family_at(pos), indices_.at(pos)}; }
  Generator begin() const { return at(0); }
  Generator end() const { return at(length() - 1); }

  std::size_t max_index() const {
    return indices_.empty() ? 0 : *std::max_element(indices_.begin(), indices_.end());
  }

  std::size_t star_length() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < length(); ++i) n += family_at(i) == Family::Starred;
    return n;
  }

  bool is_constant() const {
    return std::adjacent_find(indices_.begin(), indices_.end(), std::not_equal_to<>()) == indices_.end();
  }

  std::string to_string() const {
    if (trivial()) return "1";
    std::string s;
    for (std::size_t i = 0; i < length(); ++i) {
      if (i > 0) s += ' ';
      s += at(i).to_string();
    }
    return s;
  }

  /// Length first, then begin family (starred first), then indices.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    if (auto c = a.begin_ <=> b.begin_; c != 0) return c;
    return a.indices_ <=> b.indices_;
  }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  Family begin_ = Family::Starred;
  std::vector<std::uint8_t> indices_;
};

/// Product of two words; std::nullopt encodes zero.
inline std::optional<Word> word_mul(const Word& u, const Word& v) {
  if (u.trivial()) return v;
  if (v.trivial()) return u;
  Generator last = u.end();
  Generator first = v.begin();
  std::vector<std::uint8_t> idx = u.indices();
  if (last.family != first.family) {
    idx.insert(idx.end(), v.indices().begin(), v.indices().end());
  } else if (last.index == first.index) {
    idx.insert(idx.end(), v.indices().begin() + 1, v.indices().end());
  } else {
    return std::nullopt;
  }
  return Word(u.begin_family(), std::move(idx));
}

/// Equivalence class of words sharing length, first and last generator.
struct WordType {
  std::size_t length = 0;
  Generator begin{};
  Generator end{};

  static WordType trivial_type() { return {}; }

  static WordType make(std::size_t length, Generator begin, Generator end) {
    WordType t{length, begin, end};
    if (length == 0) return trivial_type();
    return t;
  }

  bool trivial() const noexcept { return length == 0; }

  /// End family must follow from begin family and length parity; length-1
  /// types begin and end with the same generator.
  bool consistent() const {
    if (trivial()) return true;
    Family expected = length % 2 == 1 ? begin.family : other(begin.family);
    if (end.family != expected) return false;
    if (length == 1 && !(begin == end)) return false;
    return true;
  }

  bool fits_diameter(std::size_t d) const {
    return trivial() || (begin.index <= d && end.index <= d);
  }

  /// Nonstar length n when this is the bracket type [n], otherwise nullopt.
  std::optional<std::size_t> bracket_n() const {
    if (trivial() || length % 2 == 0) return std::nullopt;
    if (begin != starred(0) || end != starred(0)) return std::nullopt;
    return (length - 1) / 2;
  }

  std::string to_string() const {
    if (trivial()) return "trivial";
    if (auto n = bracket_n()) return "[" + std::to_string(*n) + "]";
    return "(" + std::to_string(length) + "," + begin.to_string() + "," + end.to_string() + ")";
  }

  friend auto operator<=>(const WordType&, const WordType&) = default;
};

inline WordType type_of(const Word& w) {
  if (w.trivial()) return WordType::trivial_type();
  return WordType{w.length(), w.begin(), w.end()};
}

/// The type of words beginning and ending with E0 with nonstar-length n.
inline WordType bracket_type(std::size_t n) {
  return WordType{2 * n + 1, starred(0), starred(0)};
}

inline void require_consistent(const WordType& t, std::size_t d) {
  if (!t.consistent()) throw Error(Errc::InconsistentType, "inconsistent type " + t.to_string());
  if (!t.fits_diameter(d)) throw Error(Errc::InconsistentType, "type index exceeds diameter");
  if (d > kMaxDiameter) throw Error(Errc::InvalidArgument, "diameter too large");
}

/// Number of words of type t.
inline std::size_t type_dimension(const WordType& t, std::size_t d) {
  require_consistent(t, d);
  if (t.length <= 1) return 1;
  std::size_t n = 1;
  for (std::size_t i = 0; i + 2 < t.length; ++i) n *= d + 1;
  return n;
}

/// Row of word w inside the sorted enumeration of its type (mixed radix over
/// the interior indices).
inline std::size_t word_position(const Word& w, std::size_t d) {
  std::size_t pos = 0;
  for (std::size_t i = 1; i + 1 < w.length(); ++i) pos = pos * (d + 1) + w.indices()[i];
  return pos;
}

/// All words of type t in lexicographic order of their index tuples.
inline std::vector<Word> enumerate_words(const WordType& t, std::size_t d) {
  require_consistent(t, d);
  if (t.trivial()) return {Word()};
  if (t.length == 1) return {Word::generator(t.begin)};
  std::vector<Word> out;
  out.reserve(type_dimension(t, d));
  std::vector<std::uint8_t> idx(t.length, 0);
  idx.front() = static_cast<std::uint8_t>(t.begin.index);
  idx.back() = static_cast<std::uint8_t>(t.end.index);
  for (;;) {
    out.emplace_back(t.begin.family, idx);
    std::size_t pos = t.length - 2;
    while (pos >= 1 && idx[pos] == d) idx[pos--] = 0;
    if (pos == 0) break;
    ++idx[pos];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zigzag words

/// m is between i and j when i >= m > j or i <= m < j.
inline bool between(long i, long m, long j) { return (i >= m && m > j) || (i <= m && m < j); }

/// Direct evaluation of the two "not between" conditions.
inline bool is_zigzag(const Word& w) {
  const auto& g = w.indices();
  const long n = static_cast<long>(g.size());
  auto at = [&](long pos) { return static_cast<long>(g[pos - 1]); };  // 1-based
  for (long i = 2; i <= n - 1; ++i) {
    if (between(at(i - 1), at(i), at(i + 1))) return false;
  }
  for (long i = 3; i <= n - 1; ++i) {
    if (between(at(i - 2), at(i - 1), at(i + 1)) && between(at(i - 2), at(i), at(i + 1))) return false;
  }
  return true;
}

/// Characterization through consecutive index differences: neighbouring
/// differences have opposite sign, and any increase of |difference| must be
/// part of a strictly increasing, nonzero prefix.
inline bool is_zigzag_via_signs(const Word& w) {
  const auto& g = w.indices();
  const long n = static_cast<long>(g.size());
  std::vector<long> diff;  // diff[k-1] = g_k - g_{k+1}, 1-based k
  for (long k = 1; k < n; ++k) diff.push_back(static_cast<long>(g[k - 1]) - static_cast<long>(g[k]));
  auto absd = [&](long k) { return std::labs(diff[k - 1]); };
  for (long i = 2; i <= n - 1; ++i) {
    if (diff[i - 2] * diff[i - 1] > 0) return false;
    if (absd(i - 1) < absd(i)) {
      if (absd(1) == 0) return false;
      for (long k = 1; k < i; ++k) {
        if (!(absd(k) < absd(k + 1))) return false;
      }
    }
  }
  return true;
}

/// The unique split point kappa (2 <= kappa <= n) of a nonconstant zigzag word:
/// |differences| strictly increase from a nonzero start up to position kappa-1,
/// then never increase.
inline std::size_t kappa_of(const Word& w) {
  if (w.is_constant() || !is_zigzag(w)) {
    throw Error(Errc::NotApplicable, "kappa needs a nonconstant zigzag word");
  }
  const auto& g = w.indices();
  const std::size_t n = g.size();
  auto absd = [&](std::size_t k) {  // |g_k - g_{k+1}|, 1-based
    return std::labs(static_cast<long>(g[k - 1]) - static_cast<long>(g[k]));
  };
  std::optional<std::size_t> found;
  for (std::size_t kappa = 2; kappa <= n; ++kappa) {
    bool ok = absd(1) > 0;
    for (std::size_t k = 1; ok && k + 1 <= kappa - 1; ++k) ok = absd(k) < absd(k + 1);
    for (std::size_t k = kappa - 1; ok && k + 1 <= n - 1; ++k) ok = absd(k) >= absd(k + 1);
    if (ok) {
      if (found) throw Error(Errc::NotApplicable, "kappa is not unique for " + w.to_string());
      found = kappa;
    }
  }
  if (!found) throw Error(Errc::NotApplicable, "no kappa for " + w.to_string());
  return *found;
}

/// Zigzag test specialised to type [n]: odd positions carry index 0 and the
/// even positions are nonincreasing.
inline bool is_bracket_zigzag(const Word& w) {
  auto n = type_of(w).bracket_n();
  if (!n) throw Error(Errc::NotZigzagBracketType, w.to_string() + " is not of bracket type");
  const auto& g = w.indices();
  for (std::size_t pos = 1; pos <= g.size(); pos += 2) {
    if (g[pos - 1] != 0) return false;
  }
  for (std::size_t pos = 2; pos + 2 <= g.size(); pos += 2) {
    if (g[pos - 1] < g[pos + 1]) return false;
  }
  return true;
}

inline std::vector<Word> enumerate_zigzag(const WordType& t, std::size_t d) {
  auto all = enumerate_words(t, d);
  std::erase_if(all, [](const Word& w) { return !is_zigzag(w); });
  return all;
}

// ---------------------------------------------------------------------------
// Elements

/// Finite linear combination of words, zero coefficients never stored.
class TElement {
 public:
  explicit TElement(FieldCtx ctx) : ctx_(ctx) {}

  static TElement word(const Word& w, const FieldCtx& ctx) {
    TElement x(ctx);
    x.terms_.emplace(w, FieldElement::one(ctx));
    return x;
  }

  static TElement one(const FieldCtx& ctx) { return word(Word(), ctx); }

  static TElement generator(Generator g, const FieldCtx& ctx) { return word(Word::generator(g), ctx); }

  /// Sum over i of the family's generators, i.e. the identity of D or D*.
  static TElement family_sum(Family f, std::size_t d, const FieldCtx& ctx) {
    TElement x(ctx);
    for (std::size_t i = 0; i <= d; ++i) x.add_term(Word::generator({f, static_cast<std::uint32_t>(i)}), FieldElement::one(ctx));
    return x;
  }

  const FieldCtx& ctx() const noexcept { return ctx_; }
  const std::map<Word, FieldElement>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  FieldElement coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? FieldElement::zero(ctx_) : it->second;
  }

  void add_term(const Word& w, const FieldElement& c) {
    require_same_ctx(ctx_, c.ctx());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TElement& operator+=(const TElement& o) {
    require_same_ctx(ctx_, o.ctx_);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  TElement& operator-=(const TElement& o) {
    require_same_ctx(ctx_, o.ctx_);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend TElement operator+(TElement a, const TElement& b) { return a += b; }
  friend TElement operator-(TElement a, const TElement& b) { return a -= b; }

  friend TElement operator*(const FieldElement& s, const TElement& x) {
    require_same_ctx(s.ctx(), x.ctx_);
    TElement out(x.ctx_);
    if (s.is_zero()) return out;
    for (const auto& [w, c] : x.terms_) out.terms_.emplace(w, s * c);
    return out;
  }

  friend TElement operator*(const TElement& x, const TElement& y) {
    require_same_ctx(x.ctx_, y.ctx_);
    TElement out(x.ctx_);
    for (const auto& [u, a] : x.terms_) {
      for (const auto& [v, b] : y.terms_) {
        if (auto w = word_mul(u, v)) out.add_term(*w, a * b);
      }
    }
    return out;
  }

  /// The component of type t.
  TElement project(const WordType& t) const {
    TElement out(ctx_);
    for (const auto& [w, c] : terms_) {
      if (type_of(w) == t) out.terms_.emplace(w, c);
    }
    return out;
  }

  /// Types with a nonzero component, in ascending order.
  std::vector<WordType> support_types() const {
    std::vector<WordType> types;
    for (const auto& [w, c] : terms_) types.push_back(type_of(w));
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    return types;
  }

  friend bool operator==(const TElement& a, const TElement& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")" + w.to_string();
    }
    return s;
  }

 private:
  FieldCtx ctx_;
  std::map<Word, FieldElement> terms_;
};

inline TElement element_mul(const TElement& x, const TElement& y) { return x * y; }

inline TElement project_component(const TElement& x, const WordType& t) { return x.project(t); }

}  // namespace tdpair
