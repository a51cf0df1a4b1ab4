#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_oracles.hpp"
#include "tdpair/words.hpp"

using namespace tdpair;

namespace {

const FieldCtx Q = FieldCtx::rational();

Word W(const char* s) { return Word::parse(s); }

/// Every word of length `len` over indices 0..d, both families.
std::vector<Word> all_words(std::size_t len, std::size_t d) {
  std::vector<Word> out;
  if (len == 0) return {Word()};
  std::vector<std::uint8_t> idx(len, 0);
  for (;;) {
    out.emplace_back(Family::Starred, idx);
    out.emplace_back(Family::Nonstarred, idx);
    std::size_t pos = len;
    while (pos > 0 && idx[pos - 1] == d) idx[--pos] = 0;
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  return out;
}

/// Literal transcription of the definition: g_i never lies between its
/// neighbours, and g_{i-1}, g_i are never both between g_{i-2} and g_{i+1}.
bool zigzag_oracle(const std::vector<std::uint8_t>& g) {
  auto btw = [](int a, int m, int b) { return (a >= m && m > b) || (a <= m && m < b); };
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (btw(g[i - 1], g[i], g[i + 1])) return false;
  }
  for (std::size_t i = 2; i + 1 < g.size(); ++i) {
    if (btw(g[i - 2], g[i - 1], g[i + 1]) && btw(g[i - 2], g[i], g[i + 1])) return false;
  }
  return true;
}

TElement random_element(std::size_t d, std::size_t max_len, std::mt19937_64& rng) {
  TElement x(Q);
  for (int t = 0; t < 4; ++t) {
    std::size_t len = rng() % (max_len + 1);
    std::vector<std::uint8_t> idx(len);
    for (auto& i : idx) i = static_cast<std::uint8_t>(rng() % (d + 1));
    Family f = rng() % 2 ? Family::Starred : Family::Nonstarred;
    x.add_term(Word(f, idx), FieldElement::from_integer(static_cast<long long>(rng() % 7) - 3, Q));
  }
  return x;
}

}  // namespace

TEST(Word, ParseAndPrint) {
  EXPECT_EQ(W("E0 e2 E0").to_string(), "E0 e2 E0");
  EXPECT_EQ(W("E0e2E0"), W("E0 e2 E0"));
  EXPECT_TRUE(W("1").trivial());
  EXPECT_EQ(W("1").to_string(), "1");
  EXPECT_THROW(W("E0 E1"), Error);
  EXPECT_THROW(W("x1"), Error);
  EXPECT_THROW(W("E"), Error);
  EXPECT_THROW(W(""), Error);
  EXPECT_THROW(W("E300"), Error);
  auto w = W("E1 e0 E2");
  EXPECT_EQ(w.length(), 3u);
  EXPECT_EQ(w.begin(), starred(1));
  EXPECT_EQ(w.end(), starred(2));
  EXPECT_EQ(w.star_length(), 2u);
  EXPECT_EQ(w.max_index(), 2u);
}

TEST(WordMul, Examples) {
  EXPECT_EQ(*word_mul(W("E0 e1"), W("e1 E2")), W("E0 e1 E2"));
  EXPECT_FALSE(word_mul(W("E0 e1"), W("e2 E0")));
  EXPECT_EQ(*word_mul(W("E0"), W("e1")), W("E0 e1"));
  EXPECT_EQ(*word_mul(W("1"), W("e1 E0")), W("e1 E0"));
  EXPECT_EQ(*word_mul(W("e1 E0"), W("1")), W("e1 E0"));
  EXPECT_EQ(*word_mul(W("E0 e1 E0"), W("E0 e2 E0")), W("E0 e1 E0 e2 E0"));
}

TEST(WordMul, LengthRules) {
  std::mt19937_64 rng(1);
  auto words = all_words(3, 2);
  auto shorter = all_words(2, 2);
  words.insert(words.end(), shorter.begin(), shorter.end());
  for (const auto& u : words) {
    for (const auto& v : words) {
      auto w = word_mul(u, v);
      if (u.end().family != v.begin().family) {
        ASSERT_TRUE(w);
        EXPECT_EQ(w->length(), u.length() + v.length());
      } else if (u.end() == v.begin()) {
        ASSERT_TRUE(w);
        EXPECT_EQ(w->length(), u.length() + v.length() - 1);
      } else {
        EXPECT_FALSE(w);
      }
      if (w) {
        EXPECT_EQ(w->begin(), u.begin());
        EXPECT_EQ(w->end(), v.end());
      }
    }
  }
}

TEST(WordType, Examples) {
  EXPECT_TRUE(type_of(W("1")).trivial());
  auto t = type_of(W("E1 e0 E2"));
  EXPECT_EQ(t.length, 3u);
  EXPECT_EQ(t.begin, starred(1));
  EXPECT_EQ(t.end, starred(2));
  auto s = type_of(W("e1"));
  EXPECT_EQ(s.length, 1u);
  EXPECT_EQ(s.begin, nonstarred(1));
  EXPECT_EQ(s.end, nonstarred(1));
  EXPECT_EQ(bracket_type(0).length, 1u);
  EXPECT_EQ(bracket_type(0).begin, starred(0));
  EXPECT_EQ(bracket_type(2).length, 5u);
  EXPECT_EQ(bracket_type(2).to_string(), "[2]");
  EXPECT_EQ(*type_of(W("E0 e1 E0")).bracket_n(), 1u);
  EXPECT_FALSE(WordType::make(2, starred(0), starred(0)).consistent());
  EXPECT_FALSE(WordType::make(1, starred(0), starred(1)).consistent());
  EXPECT_THROW(enumerate_words(WordType::make(3, starred(0), nonstarred(0)), 2), Error);
  EXPECT_THROW(enumerate_words(WordType::make(3, starred(0), starred(3)), 2), Error);
}

TEST(Enumerate, Examples) {
  auto w1 = enumerate_words(bracket_type(1), 1);
  ASSERT_EQ(w1.size(), 2u);
  EXPECT_EQ(w1[0], W("E0 e0 E0"));
  EXPECT_EQ(w1[1], W("E0 e1 E0"));
  EXPECT_EQ(enumerate_words(WordType::trivial_type(), 3), std::vector<Word>{Word()});
  EXPECT_EQ(enumerate_words(bracket_type(2), 2).size(), 27u);
  auto z = enumerate_zigzag(bracket_type(2), 1);
  ASSERT_EQ(z.size(), 3u);
  std::set<Word> zs(z.begin(), z.end());
  EXPECT_TRUE(zs.count(W("E0 e0 E0 e0 E0")));
  EXPECT_TRUE(zs.count(W("E0 e1 E0 e0 E0")));
  EXPECT_TRUE(zs.count(W("E0 e1 E0 e1 E0")));
  EXPECT_EQ(enumerate_zigzag(bracket_type(0), 4), std::vector<Word>{W("E0")});
  EXPECT_EQ(enumerate_zigzag(bracket_type(3), 2).size(), 10u);
}

// Enumeration is sorted, duplicate free, typed, and matches the count formula
// and word_position.
TEST(Enumerate, StructureAndCounts) {
  for (std::size_t d = 0; d <= 3; ++d) {
    for (std::size_t len = 1; len <= 6; ++len) {
      for (Family bf : {Family::Starred, Family::Nonstarred}) {
        Family ef = len % 2 ? bf : other(bf);
        WordType t = WordType::make(len, {bf, 0}, {ef, static_cast<std::uint32_t>(d)});
        if (!t.consistent()) continue;
        auto ws = enumerate_words(t, d);
        EXPECT_EQ(ws.size(), len == 1 ? 1 : oracle::ipow(d + 1, len - 2));
        EXPECT_EQ(ws.size(), type_dimension(t, d));
        for (std::size_t i = 0; i < ws.size(); ++i) {
          EXPECT_EQ(type_of(ws[i]), t);
          EXPECT_EQ(word_position(ws[i], d), i);
          if (i > 0) {
            EXPECT_LT(ws[i - 1], ws[i]);
          }
        }
      }
    }
  }
}

TEST(Zigzag, Examples) {
  EXPECT_TRUE(is_zigzag(W("E2 e2 E2 e2")));
  EXPECT_TRUE(is_zigzag(W("E0 e2 E0 e1 E0")));
  EXPECT_FALSE(is_zigzag(W("E0 e1 E0 e2 E0")));
  EXPECT_TRUE(is_zigzag(W("E0 e2 E1")));
  EXPECT_TRUE(is_zigzag_via_signs(W("E0 e2 E1")));
  // Not every length-3 word is zigzag: 1 lies between 0 and 2.
  EXPECT_FALSE(is_zigzag(W("E0 e1 E2")));
  EXPECT_FALSE(is_zigzag_via_signs(W("E0 e1 E2")));
  EXPECT_TRUE(is_zigzag(W("1")));
  EXPECT_TRUE(is_zigzag(W("e3")));
}

TEST(Zigzag, EquivalencesExhaustive) {
  for (std::size_t d = 0; d <= 3; ++d) {
    for (std::size_t len = 0; len <= 6; ++len) {
      for (const auto& w : all_words(len, d)) {
        const bool z = is_zigzag(w);
        ASSERT_EQ(z, zigzag_oracle(w.indices())) << w.to_string();
        ASSERT_EQ(z, is_zigzag_via_signs(w)) << w.to_string();
        if (type_of(w).bracket_n()) {
          ASSERT_EQ(z, is_bracket_zigzag(w)) << w.to_string();
        }
        if (z && !w.is_constant()) {
          EXPECT_NO_THROW(kappa_of(w)) << w.to_string();
        }
      }
    }
  }
}

TEST(Kappa, Examples) {
  EXPECT_EQ(kappa_of(W("E0 e1 E0")), 2u);
  EXPECT_EQ(kappa_of(W("E0 e2 E0 e1 E0")), 2u);
  EXPECT_EQ(kappa_of(W("E1 e0 E2 e0")), 3u);
  EXPECT_THROW(kappa_of(W("E1 e1 E1")), Error);
  EXPECT_THROW(kappa_of(W("E0 e1 E0 e2 E0")), Error);
  try {
    kappa_of(W("E2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotApplicable);
  }
}

TEST(BracketZigzag, RejectsOtherTypes) {
  try {
    is_bracket_zigzag(W("E0 e1 E1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotZigzagBracketType);
  }
}

TEST(Zigzag, BracketCountsAreBinomial) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(enumerate_zigzag(bracket_type(n), d).size(), oracle::binomial(n + d, d));
    }
  }
}

TEST(TElement, Examples) {
  TElement x = TElement::word(W("E0 e1 E0"), Q);
  EXPECT_EQ(x * TElement::one(Q), x);
  EXPECT_EQ(TElement::one(Q) * x, x);
  auto y = element_mul(x, TElement::word(W("E0 e2 E0"), Q));
  EXPECT_EQ(y, TElement::word(W("E0 e1 E0 e2 E0"), Q));
  EXPECT_EQ(y.support_types(), std::vector<WordType>{bracket_type(2)});
  EXPECT_TRUE((TElement::generator(nonstarred(0), Q) * TElement::generator(nonstarred(1), Q)).is_zero());

  TElement z = TElement::one(Q) + TElement::generator(nonstarred(0), Q);
  EXPECT_EQ(project_component(z, WordType::trivial_type()), TElement::one(Q));
  EXPECT_EQ(project_component(x, type_of(W("E0 e1 E0"))), x);
  EXPECT_TRUE(project_component(x, bracket_type(2)).is_zero());
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_THROW(x + TElement::one(FieldCtx::prime(5)), Error);
}

// The generators of each family are orthogonal idempotents summing to the
// family identity.
TEST(TElement, FamilyIdempotents) {
  for (Family f : {Family::Starred, Family::Nonstarred}) {
    for (std::uint32_t i = 0; i <= 3; ++i) {
      auto e = TElement::generator({f, i}, Q);
      EXPECT_EQ(e * e, e);
      auto s = TElement::family_sum(f, 3, Q);
      EXPECT_EQ(e * s, e);
      EXPECT_EQ(s * e, e);
    }
    auto s = TElement::family_sum(f, 3, Q);
    EXPECT_EQ(s * s, s);
  }
}

TEST(TElement, RingAxiomsRandom) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    auto a = random_element(2, 4, rng), b = random_element(2, 4, rng), c = random_element(2, 4, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    auto two = FieldElement::from_integer(2, Q);
    EXPECT_EQ(two * (a * b), (two * a) * b);
    // The sum of the projections onto the support types recovers the element.
    TElement back(Q);
    for (const auto& ty : a.support_types()) back += a.project(ty);
    EXPECT_EQ(back, a);
  }
}

// Products of bracket-type words stay bracket type with added nonstar length.
TEST(TElement, BracketGrading) {
  for (std::size_t m = 0; m <= 2; ++m) {
    for (std::size_t n = 0; n <= 2; ++n) {
      for (const auto& u : enumerate_words(bracket_type(m), 2)) {
        for (const auto& v : enumerate_words(bracket_type(n), 2)) {
          auto w = word_mul(u, v);
          ASSERT_TRUE(w);
          EXPECT_EQ(type_of(*w), bracket_type(m + n));
        }
      }
    }
  }
}
