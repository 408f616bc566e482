#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gdswu/filter.hpp"
#include "gdswu/gamma_weights.hpp"

namespace gdswu::oracle {

/// Divider settings for the exact oracle, spelled out rather than taken from
/// a FilterConfig so the oracle does not depend on the filter's arithmetic.
struct ExactMode {
  OutputMode mode = OutputMode::normalized_average;
  unsigned frac_bits = 7;  // raw-accumulate divisor is 2^frac_bits
  std::uint64_t saturate_at = 127;  // raw-accumulate output ceiling
  DivisionRounding division = DivisionRounding::floor;
};

ExactMode exact_mode_of(const FilterConfig& config);

/// Straight-line convolution with arbitrary-precision integers:
/// out[n] = div(sum_i w[i] * x[n-i]), zero for n-i < 0.
std::vector<std::uint64_t> oracle_exact(std::span<const std::uint64_t> samples,
                                        std::span<const std::uint64_t> raw_weights,
                                        std::uint64_t raw_sum, const ExactMode& mode);

/// Same convolution with unquantized PDF weights in double precision.
/// Normalized mode divides by the sum of ideal weights; raw mode does not
/// divide. Outputs are clamped to `ceiling`.
std::vector<double> oracle_real(std::span<const std::uint64_t> samples,
                                const GammaParams& params, std::size_t taps,
                                OutputMode mode, SamplePointRule sample_points = {},
                                double ceiling = std::numeric_limits<double>::infinity());

struct ComparisonReport {
  double max_abs_error = 0.0;
  std::size_t mismatch_count = 0;
  std::optional<std::size_t> first_mismatch_index;
  double bound_used = 0.0;
};

/// Element-wise comparison; a mismatch is |a - b| > bound.
ComparisonReport compare(std::span<const std::uint64_t> fixed_out,
                         std::span<const std::uint64_t> oracle_out, double bound = 0.0);
ComparisonReport compare(std::span<const std::uint64_t> fixed_out,
                         std::span<const double> oracle_out, double bound);

/// Worst-case |fixed - real| for streams whose samples never exceed
/// max_sample: sum of weight quantization errors (at least taps half-LSBs)
/// times max_sample over the divisor, plus one output LSB for the final
/// division.
double quantization_bound(const FilterConfig& config, std::uint64_t max_sample);

}  // namespace gdswu::oracle
