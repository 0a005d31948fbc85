#include <random>

#include <gtest/gtest.h>

#include "derksen/errors.hpp"
#include "derksen/scalar.hpp"

using namespace derksen;

namespace {

// Multiplicative order by repeated multiplication; independent of root_of_unity.
unsigned brute_order(std::uint32_t w, std::uint32_t p) {
  std::uint64_t acc = w % p;
  for (unsigned k = 1; k <= p; ++k) {
    if (acc == 1) return k;
    acc = acc * w % p;
  }
  return 0;
}

}  // namespace

TEST(FieldSpec, ParsesBothKinds) {
  EXPECT_EQ(FieldSpec::parse("QQ"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("GF(7)"), FieldSpec::prime(7));
  EXPECT_EQ(FieldSpec::parse(" GF(2) ").characteristic(), 2u);
  EXPECT_THROW(FieldSpec::parse("GF(8)"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::parse("RR"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::prime(1), std::invalid_argument);
  EXPECT_THROW(FieldSpec::prime(2147483659u), std::invalid_argument);
}

TEST(FieldInv, WorkedExamples) {
  auto gf7 = FieldSpec::prime(7);
  EXPECT_EQ(field_inv(gf7.from_int(3), gf7), gf7.from_int(5));
  EXPECT_EQ(field_inv(gf7.one(), gf7), gf7.one());
  auto qq = FieldSpec::rationals();
  EXPECT_EQ(field_inv(qq.parse_scalar("-2/3"), qq), qq.parse_scalar("-3/2"));
  EXPECT_EQ(field_inv(qq.parse_scalar("-2/3"), qq).to_string(), "-3/2");
}

TEST(FieldInv, ZeroThrows) {
  auto gf7 = FieldSpec::prime(7);
  EXPECT_THROW(field_inv(gf7.zero(), gf7), DivisionByZero);
  EXPECT_THROW(field_inv(FieldSpec::rationals().zero(), FieldSpec::rationals()), DivisionByZero);
}

TEST(FieldInv, ExhaustiveSmallPrimes) {
  for (std::uint32_t p = 2; p <= 31; ++p) {
    if (!is_prime(p)) continue;
    auto f = FieldSpec::prime(p);
    for (std::uint32_t a = 1; a < p; ++a) {
      Scalar x = f.from_int(a);
      EXPECT_TRUE((x * field_inv(x, f)).is_one()) << a << " mod " << p;
    }
  }
}

TEST(FieldAxioms, ExhaustiveGF13) {
  auto f = FieldSpec::prime(13);
  for (int a = 0; a < 13; ++a)
    for (int b = 0; b < 13; ++b)
      for (int c = 0; c < 13; ++c) {
        Scalar x = f.from_int(a), y = f.from_int(b), z = f.from_int(c);
        ASSERT_EQ((x + y) + z, x + (y + z));
        ASSERT_EQ((x * y) * z, x * (y * z));
        ASSERT_EQ(x * (y + z), x * y + x * z);
      }
}

TEST(FieldAxioms, RandomRationals) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  auto qq = FieldSpec::rationals();
  for (int i = 0; i < 1000; ++i) {
    Scalar x(mpq_class(num(rng), den(rng)));
    Scalar y(mpq_class(num(rng), den(rng)));
    Scalar z(mpq_class(num(rng), den(rng)));
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    if (!x.is_zero()) ASSERT_TRUE((x * field_inv(x, qq)).is_one());
  }
}

TEST(Scalar, CanonicalForm) {
  auto qq = FieldSpec::rationals();
  EXPECT_EQ(qq.parse_scalar("2/4"), qq.parse_scalar("1/2"));
  EXPECT_EQ(qq.parse_scalar("0/5"), qq.zero());
  EXPECT_EQ(qq.parse_scalar("-0"), qq.zero());
  auto gf7 = FieldSpec::prime(7);
  EXPECT_EQ(gf7.from_int(-1), gf7.from_int(6));
  EXPECT_EQ(gf7.parse_scalar("1/2"), gf7.from_int(4));
  EXPECT_EQ(gf7.from_int(6).to_string(), "-1");
  EXPECT_EQ(gf7.from_int(3).to_string(), "3");
  EXPECT_EQ(gf7.from_int(4).to_string(), "-3");
  EXPECT_THROW(gf7.one() + qq.one(), ArityMismatch);
  EXPECT_THROW(gf7.one() * FieldSpec::prime(5).one(), ArityMismatch);
}

TEST(RootOfUnity, WorkedExamples) {
  auto gf7 = FieldSpec::prime(7);
  EXPECT_EQ(root_of_unity(3, gf7), gf7.from_int(2));
  EXPECT_EQ(root_of_unity(1, gf7), gf7.one());
  EXPECT_EQ(root_of_unity(2, gf7), gf7.from_int(6));
  auto qq = FieldSpec::rationals();
  EXPECT_EQ(root_of_unity(1, qq), qq.one());
  EXPECT_EQ(root_of_unity(2, qq), qq.from_int(-1));
}

TEST(RootOfUnity, Errors) {
  EXPECT_THROW(root_of_unity(4, FieldSpec::prime(7)), NoSuchRoot);
  EXPECT_THROW(root_of_unity(3, FieldSpec::rationals()), NoSuchRoot);
  EXPECT_THROW(root_of_unity(0, FieldSpec::prime(7)), NoSuchRoot);
}

TEST(RootOfUnity, MatchesExhaustiveSearch) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u, 97u}) {
    auto f = FieldSpec::prime(p);
    for (std::uint32_t t = 1; t < p; ++t) {
      if ((p - 1) % t) continue;
      std::uint32_t expect = 0;
      for (std::uint32_t w = 1; w < p && !expect; ++w)
        if (brute_order(w, p) == t) expect = w;
      Scalar w = root_of_unity(t, f);
      EXPECT_EQ(w.residue(), expect) << "t=" << t << " p=" << p;
      EXPECT_TRUE(w.pow(t).is_one());
      for (std::uint32_t s = 1; s < t; ++s) EXPECT_FALSE(w.pow(s).is_one());
    }
  }
}
