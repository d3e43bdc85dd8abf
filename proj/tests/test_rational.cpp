#include <gtest/gtest.h>

#include <ea_bounds/errors.hpp>
#include <ea_bounds/parallel.hpp>
#include <ea_bounds/rational.hpp>

#include <vector>

using ea::Rational;

TEST(Rational, FractionStringIsReduced) {
  EXPECT_EQ(ea::to_fraction_string(Rational(-9024, 4096)), "-141/64");
  EXPECT_EQ(ea::to_fraction_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(ea::to_fraction_string(Rational(8, 4)), "2");
  EXPECT_EQ(ea::to_fraction_string(Rational(0)), "0");
}

TEST(Rational, ParseAcceptsIntegersFractionsAndDecimals) {
  EXPECT_EQ(ea::parse_rational("-1"), Rational(-1));
  EXPECT_EQ(ea::parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(ea::parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(ea::parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(ea::parse_rational("-2.5"), Rational(-5, 2));
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1e3", "1/", "/2", "1.2.3", "nan"}) {
    EXPECT_THROW(ea::parse_rational(bad), ea::ConfigError) << bad;
  }
}

TEST(Rational, DecimalRoundsHalfToEven) {
  EXPECT_EQ(ea::to_decimal(Rational(-3, 2)).text, "-1.5");
  EXPECT_EQ(ea::to_decimal(Rational(-141, 64)).text, "-2.203125");
  EXPECT_TRUE(ea::to_decimal(Rational(-141, 64)).exact);
  EXPECT_EQ(ea::to_decimal(Rational(1, 8), 2).text, "0.12");
  EXPECT_EQ(ea::to_decimal(Rational(3, 8), 2).text, "0.38");
  EXPECT_EQ(ea::to_decimal(Rational(-141, 64), 3).text, "-2.203");
  EXPECT_FALSE(ea::to_decimal(Rational(1, 3), 4).exact);
  EXPECT_EQ(ea::to_decimal(Rational(1, 3), 4).text, "0.3333");
  EXPECT_EQ(ea::to_decimal(Rational(17, 64)).text, "0.265625");
}

TEST(Rational, CommonDenominator) {
  const std::vector<Rational> v{Rational(1, 2), Rational(-1, 3), Rational(5, 4)};
  EXPECT_EQ(ea::common_denominator(v), 12);
}

TEST(Rational, Int64ConversionGuards) {
  EXPECT_EQ(ea::to_int64(ea::BigInt(-36096)), -36096);
  EXPECT_THROW(ea::to_int64(ea::BigInt(1) << 70), ea::GuardError);
}

TEST(Parallel, IndexedMapPreservesOrderForAnyThreadCount) {
  for (unsigned threads : {1u, 2u, 5u}) {
    const auto out = ea::indexed_map<int>(37, threads, [](std::size_t i) { return static_cast<int>(i * i); });
    ASSERT_EQ(out.size(), 37u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
}

TEST(Parallel, IndexedMapRethrows) {
  EXPECT_THROW(ea::indexed_map<int>(10, 3,
                                    [](std::size_t i) -> int {
                                      if (i == 7) throw ea::NumericalError("boom");
                                      return 0;
                                    }),
               ea::NumericalError);
}

TEST(Parallel, ChunkRangesTileTheInterval) {
  std::size_t next = 0;
  for (std::size_t c = 0; c < 64; ++c) {
    const auto r = ea::chunk_range(4096, 64, c);
    EXPECT_EQ(r.begin, next);
    next = r.end;
  }
  EXPECT_EQ(next, 4096u);
}
