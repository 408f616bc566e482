#include "gdswu/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "gdswu/errors.hpp"

namespace gdswu {
namespace {

using boost::multiprecision::cpp_int;

cpp_int to_cpp_int(Accumulator v) {
  cpp_int hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

TEST(QuantizeTest, SpecExamples) {
  EXPECT_EQ(quantize(0.1, {0, 7}, RoundingMode::half_up).word.raw(), 13u);
  EXPECT_EQ(quantize(0.0, {7, 0}, RoundingMode::half_up).word.raw(), 0u);
  EXPECT_EQ(quantize(0.0, {0, 12}, RoundingMode::nearest_even).word.raw(), 0u);
  const Quantized one = quantize(1.0, {1, 7}, RoundingMode::half_up);
  EXPECT_EQ(one.word.raw(), 128u);
  EXPECT_FALSE(one.saturated);
}

TEST(QuantizeTest, TiesFollowRoundingMode) {
  EXPECT_EQ(quantize(2.5, {3, 0}, RoundingMode::half_up).word.raw(), 3u);
  EXPECT_EQ(quantize(2.5, {3, 0}, RoundingMode::nearest_even).word.raw(), 2u);
  EXPECT_EQ(quantize(3.5, {3, 0}, RoundingMode::nearest_even).word.raw(), 4u);
  // 0.4999999999999999 must not round up under half-up.
  EXPECT_EQ(quantize(std::nextafter(0.5, 0.0), {1, 0}, RoundingMode::half_up).word.raw(), 0u);
}

TEST(QuantizeTest, SaturatesAndReports) {
  const Quantized q = quantize(2.0, {1, 7}, RoundingMode::half_up);
  EXPECT_EQ(q.word.raw(), 255u);
  EXPECT_TRUE(q.saturated);
  const Quantized huge = quantize(1e30, {64, 0}, RoundingMode::half_up);
  EXPECT_EQ(huge.word.raw(), std::numeric_limits<std::uint64_t>::max());
  EXPECT_TRUE(huge.saturated);
}

TEST(QuantizeTest, RejectsNonFiniteAndNegative) {
  EXPECT_THROW(quantize(std::nan(""), {0, 7}, RoundingMode::half_up), DomainError);
  EXPECT_THROW(quantize(INFINITY, {0, 7}, RoundingMode::half_up), DomainError);
  EXPECT_THROW(quantize(-0.25, {0, 7}, RoundingMode::half_up), DomainError);
}

TEST(QFormatTest, WidthLimits) {
  EXPECT_THROW(QFormat({0, 0}).validate(), DomainError);
  EXPECT_THROW(QFormat({40, 25}).validate(), DomainError);
  EXPECT_NO_THROW(QFormat({32, 32}).validate());
  EXPECT_EQ(QFormat({7, 0}).max_raw(), 127u);
  EXPECT_EQ(QFormat({64, 0}).max_raw(), std::numeric_limits<std::uint64_t>::max());
}

TEST(FixedWordTest, RangeAndRealValue) {
  EXPECT_THROW(FixedWord(128, {7, 0}), DomainError);
  EXPECT_DOUBLE_EQ(FixedWord(13, {1, 7}).to_real(), 13.0 / 128.0);
  EXPECT_DOUBLE_EQ(FixedWord(0x7F, {7, 0}).to_real(), 127.0);
}

TEST(QuantizeProperty, MonotoneAndWithinHalfLsb) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(0.0, 4.0);
  std::uniform_int_distribution<unsigned> frac(1, 16);
  for (int i = 0; i < 10000; ++i) {
    const QFormat fmt{3, frac(rng)};
    double v1 = value(rng);
    double v2 = value(rng);
    if (v1 > v2) std::swap(v1, v2);
    for (RoundingMode mode : {RoundingMode::half_up, RoundingMode::nearest_even}) {
      const Quantized q1 = quantize(v1, fmt, mode);
      const Quantized q2 = quantize(v2, fmt, mode);
      ASSERT_LE(q1.word.raw(), q2.word.raw()) << v1 << " " << v2;
      if (!q1.saturated) {
        ASSERT_LE(std::abs(q1.word.to_real() - v1),
                  std::ldexp(1.0, -static_cast<int>(fmt.frac_bits) - 1));
      }
    }
  }
}

TEST(MacExactTest, SpecExamples) {
  const std::vector<std::uint64_t> zeros{0, 0, 0}, w{1, 2, 3};
  EXPECT_EQ(mac_exact(zeros, w), Accumulator{0});
  const std::vector<std::uint64_t> ones{1, 1}, w2{13, 12};
  EXPECT_EQ(mac_exact(ones, w2), Accumulator{25});
  EXPECT_EQ(mac_exact({}, {}), Accumulator{0});
}

TEST(MacExactTest, Errors) {
  const std::vector<std::uint64_t> a{1, 2}, b{1};
  EXPECT_THROW(mac_exact(a, b), UsageError);
  const std::vector<std::uint64_t> wide{std::uint64_t{1} << 32}, one{1};
  EXPECT_THROW(mac_exact(wide, one), DomainError);
  const std::vector<std::uint64_t> too_many(kMaxMacTerms + 1, 1);
  EXPECT_THROW(mac_exact(too_many, too_many), DomainError);
}

TEST(MacExactTest, WorstCaseWidthIsExact) {
  // 2^16 terms of (2^32 - 1)^2 overflows 64 bits but not the accumulator.
  const std::uint64_t m = 0xFFFFFFFFu;
  const std::vector<std::uint64_t> v(kMaxMacTerms, m);
  const cpp_int expected = cpp_int(kMaxMacTerms) * cpp_int(m) * cpp_int(m);
  EXPECT_EQ(to_cpp_int(mac_exact(v, v)), expected);
}

TEST(MacExactProperty, MatchesArbitraryPrecision) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(0, 300);
  std::uniform_int_distribution<unsigned> bits(1, 32);
  for (int c = 0; c < 10000; ++c) {
    const std::size_t n = len(rng);
    const std::uint64_t smax = (std::uint64_t{1} << bits(rng)) - 1;
    const std::uint64_t wmax = (std::uint64_t{1} << bits(rng)) - 1;
    std::uniform_int_distribution<std::uint64_t> sd(0, smax), wd(0, wmax);
    std::vector<std::uint64_t> s(n), w(n);
    cpp_int expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = sd(rng);
      w[i] = wd(rng);
      expected += cpp_int(s[i]) * w[i];
    }
    ASSERT_EQ(to_cpp_int(mac_exact(s, w)), expected) << "case " << c;
  }
}

TEST(CeilLog2Test, Values) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(16), 4u);
  EXPECT_EQ(ceil_log2(17), 5u);
  EXPECT_EQ(ceil_log2(32), 5u);
}

}  // namespace
}  // namespace gdswu
