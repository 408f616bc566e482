#include "gdswu/fixed_point.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "gdswu/errors.hpp"

namespace gdswu {

std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::half_up:
      return "half-up";
    case RoundingMode::nearest_even:
      return "nearest-even";
  }
  return "?";
}

RoundingMode parse_rounding_mode(std::string_view name) {
  if (name == "half-up") return RoundingMode::half_up;
  if (name == "nearest-even") return RoundingMode::nearest_even;
  throw DomainError("unknown rounding mode '" + std::string(name) +
                    "' (expected half-up or nearest-even)");
}

void QFormat::validate() const {
  if (total_bits() < 1 || total_bits() > 64) {
    throw DomainError("fixed-point format needs 1..64 bits, got " +
                      std::to_string(int_bits) + "." +
                      std::to_string(frac_bits));
  }
}

FixedWord::FixedWord(std::uint64_t raw, QFormat format)
    : raw_(raw), format_(format) {
  format_.validate();
  if (!format_.contains(raw_)) {
    throw DomainError("raw value " + std::to_string(raw_) +
                      " exceeds format maximum " +
                      std::to_string(format_.max_raw()));
  }
}

double FixedWord::to_real() const {
  return std::ldexp(static_cast<double>(raw_), -static_cast<int>(format_.frac_bits));
}

std::uint64_t round_to_integer(double v, RoundingMode rounding, bool* overflow) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError("cannot round a negative or non-finite value");
  }
  double r = 0.0;
  if (rounding == RoundingMode::half_up) {
    // v - floor(v) is exact for doubles, so ties are detected exactly.
    const double f = std::floor(v);
    r = (v - f >= 0.5) ? f + 1.0 : f;
  } else {
    r = std::nearbyint(v);
  }
  constexpr double kTwo64 = 18446744073709551616.0;
  if (r >= kTwo64) {
    if (overflow) *overflow = true;
    return ~std::uint64_t{0};
  }
  if (overflow) *overflow = false;
  return static_cast<std::uint64_t>(r);
}

Quantized quantize(double v, QFormat format, RoundingMode rounding) {
  format.validate();
  if (std::isnan(v) || std::isinf(v)) {
    throw DomainError("cannot quantize a non-finite value");
  }
  if (v < 0.0) {
    throw DomainError("unsigned formats cannot hold negative value " +
                      std::to_string(v));
  }
  const double scaled = std::ldexp(v, static_cast<int>(format.frac_bits));
  bool overflow = false;
  std::uint64_t raw = round_to_integer(scaled, rounding, &overflow);
  bool saturated = overflow;
  if (raw > format.max_raw()) {
    raw = format.max_raw();
    saturated = true;
  }
  return {FixedWord(raw, format), saturated};
}

Accumulator mac_exact(std::span<const std::uint64_t> samples,
                      std::span<const std::uint64_t> weights) {
  if (samples.size() != weights.size()) {
    throw UsageError("mac_exact: " + std::to_string(samples.size()) +
                     " samples vs " + std::to_string(weights.size()) +
                     " weights");
  }
  if (samples.size() > kMaxMacTerms) {
    throw DomainError("mac_exact: more than 2^16 terms");
  }
  Accumulator acc = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::uint64_t s = samples[i];
    const std::uint64_t w = weights[i];
    if ((s | w) >> kMaxMacOperandBits) {
      throw DomainError("mac_exact: operand wider than 32 bits at index " +
                        std::to_string(i));
    }
    acc += static_cast<Accumulator>(s) * w;
  }
  return acc;
}

unsigned ceil_log2(std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

}  // namespace gdswu
