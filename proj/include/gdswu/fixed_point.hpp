#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gdswu {

/// Wide accumulator for the multiply-accumulate core.
///
/// mac_exact accepts operands below 2^32 and at most 2^16 terms, so every sum
/// is bounded by 2^16 * (2^32 - 1)^2 < 2^80 and fits with room to spare.
using Accumulator = unsigned __int128;

inline constexpr std::size_t kMaxMacTerms = std::size_t{1} << 16;
inline constexpr unsigned kMaxMacOperandBits = 32;

enum class RoundingMode { half_up, nearest_even };

std::string_view to_string(RoundingMode mode);
RoundingMode parse_rounding_mode(std::string_view name);

/// Unsigned fixed-point layout: raw integers scaled by 2^-frac_bits.
struct QFormat {
  unsigned int_bits = 0;
  unsigned frac_bits = 0;

  constexpr unsigned total_bits() const { return int_bits + frac_bits; }

  /// Largest raw value, 2^(int_bits + frac_bits) - 1.
  constexpr std::uint64_t max_raw() const {
    return total_bits() >= 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << total_bits()) - 1;
  }

  constexpr bool contains(std::uint64_t raw) const { return raw <= max_raw(); }

  /// Throws DomainError unless 1 <= int_bits + frac_bits <= 64.
  void validate() const;

  friend constexpr bool operator==(const QFormat&, const QFormat&) = default;
};

/// A raw value in a QFormat. Real value is raw * 2^-frac_bits, exactly.
class FixedWord {
 public:
  FixedWord() = default;
  /// Throws DomainError if raw does not fit the format.
  FixedWord(std::uint64_t raw, QFormat format);

  std::uint64_t raw() const { return raw_; }
  const QFormat& format() const { return format_; }
  double to_real() const;

  friend bool operator==(const FixedWord&, const FixedWord&) = default;

 private:
  std::uint64_t raw_ = 0;
  QFormat format_{};
};

struct Quantized {
  FixedWord word;
  bool saturated = false;
};

/// Rounds v * 2^frac_bits to an integer and clamps it to the format.
/// Saturation is reported in the result, never thrown. NaN, infinities and
/// negative values throw DomainError.
Quantized quantize(double v, QFormat format, RoundingMode rounding);

/// Rounds a non-negative, finite real to an integer with the given mode.
/// Values at or above 2^64 are returned as 2^64 - 1 with *overflow set.
std::uint64_t round_to_integer(double v, RoundingMode rounding, bool* overflow);

/// Exact dot product of samples and weights.
///
/// No intermediate rounding or saturation. Throws UsageError on a length
/// mismatch and DomainError if there are more than 2^16 terms or an operand
/// is 2^32 or larger.
Accumulator mac_exact(std::span<const std::uint64_t> samples,
                      std::span<const std::uint64_t> weights);

/// Number of bits needed to count to n (ceil(log2 n)), 0 for n <= 1.
unsigned ceil_log2(std::size_t n);

}  // namespace gdswu
