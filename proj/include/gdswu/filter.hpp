#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gdswu/fixed_point.hpp"
#include "gdswu/gamma_weights.hpp"

namespace gdswu {

enum class OutputMode {
  normalized_average,  // floor(acc / raw_sum)
  raw_accumulate,      // floor(acc / 2^frac_bits), saturated to the sample format
};

/// How the accumulator is divided down to an output sample.
enum class DivisionRounding { floor, half_up };

std::string_view to_string(OutputMode mode);
OutputMode parse_output_mode(std::string_view name);
std::string_view to_string(DivisionRounding division);
DivisionRounding parse_division_rounding(std::string_view name);

struct FilterConfig {
  GammaParams params;
  std::size_t taps = 16;
  QFormat sample_format{7, 0};
  WeightVector weights;
  OutputMode mode = OutputMode::normalized_average;
  DivisionRounding division = DivisionRounding::floor;

  /// Divisor applied to the accumulator for this mode.
  std::uint64_t divisor() const;

  /// Throws ConstructionError / DomainError if the weights do not match the
  /// tap count, are degenerate, or the datapath would exceed 32-bit operands.
  void validate() const;
};

/// Everything needed to build a FilterConfig. Defaults are the 16-tap,
/// a=1, b=10 unit with 7-bit samples and 1.7 weights.
struct FilterOptions {
  GammaParams params{1, 10.0};
  std::size_t taps = 16;
  QFormat sample_format{7, 0};
  QFormat weight_format{1, 7};
  RoundingMode rounding = RoundingMode::half_up;
  SamplePointRule sample_points{};
  OutputMode mode = OutputMode::normalized_average;
  DivisionRounding division = DivisionRounding::floor;
};

FilterConfig make_filter_config(const FilterOptions& options = {});

/// Divides an accumulator per the config's mode, applying saturation in
/// raw-accumulate mode.
std::uint64_t scale_accumulator(Accumulator acc, const FilterConfig& config);

/// The gamma-weighted sliding window.
///
/// A ring of the last `taps` samples, zero-filled at construction. Each push
/// evicts the oldest sample and emits one output computed from the whole
/// window. Single writer: pushes must be strictly ordered.
class SlidingWindowFilter {
 public:
  explicit SlidingWindowFilter(FilterConfig config);

  /// Throws DomainError if the sample does not fit the sample format.
  FixedWord push(std::uint64_t sample);
  FixedWord push(const FixedWord& sample);

  /// Back to the freshly constructed state.
  void reset();

  const FilterConfig& config() const { return config_; }
  std::size_t fill_count() const { return fill_count_; }
  std::size_t write_index() const { return head_; }

  /// Window contents, newest first (lag order).
  std::span<const std::uint64_t> window() const;

 private:
  FilterConfig config_;
  // Mirrored ring: each sample is stored at head_ and head_ + taps so that
  // [head_, head_ + taps) is always a contiguous newest-first view.
  std::vector<std::uint64_t> ring_;
  std::size_t head_ = 0;
  std::size_t fill_count_ = 0;
};

/// Pushes every sample in order. Errors carry the failing sample index.
std::vector<FixedWord> run_stream(SlidingWindowFilter& filter,
                                  std::span<const std::uint64_t> samples);

/// Raw output values of run_stream.
std::vector<std::uint64_t> run_stream_raw(SlidingWindowFilter& filter,
                                          std::span<const std::uint64_t> samples);

/// Constant stream of `seed` through a fresh filter. Requires length >= taps.
std::vector<FixedWord> step_response(const FilterConfig& config,
                                     const FixedWord& seed, std::size_t length);

/// A single `magnitude` sample followed by taps-1 zeros through a fresh
/// filter; `taps` outputs.
std::vector<FixedWord> impulse_response(const FilterConfig& config,
                                        const FixedWord& magnitude);

}  // namespace gdswu
