#include <gtest/gtest.h>

#include <random>

#include "tdpair/field.hpp"

using namespace tdpair;

namespace {

const FieldCtx Q = FieldCtx::rational();
const FieldCtx P7 = FieldCtx::prime(7);
const FieldCtx BIG = FieldCtx::prime(1000003);

FieldElement q(const char* s) { return FieldElement::parse(s, Q); }

}  // namespace

TEST(FieldCtx, ParseAndValidate) {
  EXPECT_TRUE(FieldCtx::parse("rational").is_rational());
  EXPECT_EQ(FieldCtx::parse("prime:1000003").modulus(), 1000003u);
  EXPECT_EQ(FieldCtx::parse("prime:7").to_string(), "prime:7");
  EXPECT_THROW(FieldCtx::prime(1), Error);
  EXPECT_THROW(FieldCtx::prime(1000001), Error);  // 101 * 9901
  EXPECT_THROW(FieldCtx::prime(std::uint64_t{1} << 62), Error);
  EXPECT_THROW(FieldCtx::parse("prime:"), Error);
  EXPECT_THROW(FieldCtx::parse("reals"), Error);
  // Largest prime below 2^62 is accepted.
  EXPECT_NO_THROW(FieldCtx::prime((std::uint64_t{1} << 62) - 57));
}

TEST(FieldElement, RationalCanonicalForm) {
  EXPECT_EQ(q("6/4").to_string(), "3/2");
  EXPECT_EQ(q("-6/-4").to_string(), "3/2");
  EXPECT_EQ(q("3/-6").to_string(), "-1/2");
  EXPECT_EQ(q("+5").to_string(), "5");
  EXPECT_EQ((q("1/2") + q("1/3")).to_string(), "5/6");
  EXPECT_EQ((q("1/2") - q("1/3")).to_string(), "1/6");
  EXPECT_EQ((q("2/3") * q("9/4")).to_string(), "3/2");
  EXPECT_EQ((q("2/3") / q("4/9")).to_string(), "3/2");
  EXPECT_EQ(q("2/3").inv().to_string(), "3/2");
  EXPECT_EQ((-q("2/3")).to_string(), "-2/3");
}

TEST(FieldElement, ParseErrors) {
  for (const char* bad : {"", "1/", "/2", "1.5", "x", "1/2/3", "--1"}) {
    EXPECT_THROW(FieldElement::parse(bad, Q), Error) << bad;
  }
  try {
    FieldElement::parse("3/0", Q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
}

TEST(FieldElement, ModularArithmetic) {
  auto a = FieldElement::from_integer(3, P7);
  EXPECT_EQ(a.inv().residue(), 5u);
  EXPECT_EQ(FieldElement::from_integer(-1, P7).residue(), 6u);
  EXPECT_EQ(FieldElement::parse("1/2", P7).residue(), 4u);
  EXPECT_EQ((a * a * a).residue(), 6u);
  EXPECT_EQ(a.pow(6).residue(), 1u);  // Fermat
  EXPECT_TRUE(FieldElement::from_integer(14, P7).is_zero());
  EXPECT_THROW(FieldElement::parse("1/7", P7), Error);
}

TEST(FieldElement, DivisionByZero) {
  for (const auto& ctx : {Q, P7}) {
    auto z = FieldElement::zero(ctx);
    try {
      (void)z.inv();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::DivisionByZero);
    }
    EXPECT_THROW((void)(FieldElement::one(ctx) / z), Error);
  }
}

TEST(FieldElement, ContextMismatch) {
  try {
    (void)(FieldElement::one(Q) + FieldElement::one(P7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CtxMismatch);
  }
  EXPECT_THROW((void)(FieldElement::one(P7) * FieldElement::one(BIG)), Error);
  EXPECT_FALSE(FieldElement::one(Q) == FieldElement::one(P7));
}

TEST(FieldElement, ArithDispatch) {
  auto a = q("1/2"), b = q("1/3");
  EXPECT_EQ(arith(ArithOp::Add, a, &b), a + b);
  EXPECT_EQ(arith(ArithOp::Sub, a, &b), a - b);
  EXPECT_EQ(arith(ArithOp::Mul, a, &b), a * b);
  EXPECT_EQ(arith(ArithOp::Div, a, &b), a / b);
  EXPECT_EQ(arith(ArithOp::Neg, a), -a);
  EXPECT_EQ(arith(ArithOp::Inv, a), q("2"));
  EXPECT_THROW(arith(ArithOp::Add, a), Error);
}

TEST(FieldElement, PowEdgeCases) {
  EXPECT_TRUE(FieldElement::zero(Q).pow(0).is_one());
  EXPECT_TRUE(FieldElement::zero(Q).pow(3).is_zero());
  EXPECT_EQ(q("-2").pow(5), q("-32"));
  EXPECT_EQ(q("2/3").pow(3), q("8/27"));
}

// Field axioms on random samples.
TEST(FieldElement, AxiomsRandom) {
  std::mt19937_64 rng(7);
  const FieldCtx huge = FieldCtx::prime((std::uint64_t{1} << 62) - 57);
  for (const auto& ctx : {Q, P7, BIG, huge}) {
    auto draw = [&] {
      if (ctx.is_rational()) {
        std::uniform_int_distribution<long long> n(-1000, 1000), m(1, 1000);
        return FieldElement::from_integer(n(rng), ctx) / FieldElement::from_integer(m(rng), ctx);
      }
      std::uniform_int_distribution<std::uint64_t> r(0, ctx.modulus() - 1);
      return FieldElement::from_integer(mpz_class(std::to_string(r(rng))), ctx);
    };
    for (int t = 0; t < 300; ++t) {
      auto a = draw(), b = draw(), c = draw();
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a - a).is_zero());
      EXPECT_EQ(a + (-a), FieldElement::zero(ctx));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inv()).is_one());
        EXPECT_EQ((b / a) * a, b);
      }
      EXPECT_EQ(FieldElement::parse(a.to_string(), ctx), a);
    }
  }
}

TEST(FieldElement, RationalReducesIntoPrime) {
  // from_rational maps n/m to n * m^-1 mod p.
  auto x = FieldElement::from_rational(mpq_class(3, 4), BIG);
  EXPECT_EQ(x * FieldElement::from_integer(4, BIG), FieldElement::from_integer(3, BIG));
}
