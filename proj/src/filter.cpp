#include "gdswu/filter.hpp"

#include <algorithm>
#include <string>

#include "gdswu/errors.hpp"

namespace gdswu {

std::string_view to_string(OutputMode mode) {
  switch (mode) {
    case OutputMode::normalized_average:
      return "normalized-average";
    case OutputMode::raw_accumulate:
      return "raw-accumulate";
  }
  return "?";
}

OutputMode parse_output_mode(std::string_view name) {
  if (name == "normalized-average") return OutputMode::normalized_average;
  if (name == "raw-accumulate") return OutputMode::raw_accumulate;
  throw DomainError("unknown output mode '" + std::string(name) +
                    "' (expected normalized-average or raw-accumulate)");
}

std::string_view to_string(DivisionRounding division) {
  switch (division) {
    case DivisionRounding::floor:
      return "floor";
    case DivisionRounding::half_up:
      return "half-up";
  }
  return "?";
}

DivisionRounding parse_division_rounding(std::string_view name) {
  if (name == "floor") return DivisionRounding::floor;
  if (name == "half-up") return DivisionRounding::half_up;
  throw DomainError("unknown division rounding '" + std::string(name) +
                    "' (expected floor or half-up)");
}

std::uint64_t FilterConfig::divisor() const {
  return mode == OutputMode::normalized_average
             ? weights.raw_sum
             : std::uint64_t{1} << weights.format.frac_bits;
}

void FilterConfig::validate() const {
  params.validate();
  sample_format.validate();
  if (taps < 1) throw ConstructionError("filter needs at least one tap");
  if (taps > kMaxMacTerms) throw ConstructionError("filter supports at most 2^16 taps");
  if (weights.taps != taps || weights.raw.size() != taps) {
    throw ConstructionError("weight vector has " + std::to_string(weights.raw.size()) +
                            " taps, filter expects " + std::to_string(taps));
  }
  if (weights.raw_sum == 0) throw ConstructionError("degenerate weight vector (sum 0)");
  if (sample_format.total_bits() > kMaxMacOperandBits ||
      weights.format.total_bits() > kMaxMacOperandBits) {
    throw ConstructionError("sample and weight formats are limited to 32 bits");
  }
}

FilterConfig make_filter_config(const FilterOptions& options) {
  FilterConfig config;
  config.params = options.params;
  config.taps = options.taps;
  config.sample_format = options.sample_format;
  config.weights = build_weight_vector(options.params, options.taps,
                                       options.weight_format, options.rounding,
                                       options.sample_points);
  config.mode = options.mode;
  config.division = options.division;
  config.validate();
  return config;
}

std::uint64_t scale_accumulator(Accumulator acc, const FilterConfig& config) {
  const Accumulator d = config.divisor();
  const Accumulator q = config.division == DivisionRounding::floor
                            ? acc / d
                            : (2 * acc + d) / (2 * d);
  if (config.mode == OutputMode::raw_accumulate) {
    return static_cast<std::uint64_t>(
        std::min<Accumulator>(q, config.sample_format.max_raw()));
  }
  // A convex combination never exceeds the largest sample.
  return static_cast<std::uint64_t>(q);
}

SlidingWindowFilter::SlidingWindowFilter(FilterConfig config)
    : config_(std::move(config)) {
  config_.validate();
  ring_.assign(2 * config_.taps, 0);
}

FixedWord SlidingWindowFilter::push(std::uint64_t sample) {
  if (!config_.sample_format.contains(sample)) {
    throw DomainError("sample " + std::to_string(sample) +
                      " exceeds the sample format maximum " +
                      std::to_string(config_.sample_format.max_raw()));
  }
  const std::size_t n = config_.taps;
  head_ = (head_ == 0) ? n - 1 : head_ - 1;
  ring_[head_] = sample;
  ring_[head_ + n] = sample;
  if (fill_count_ < n) ++fill_count_;

  const Accumulator acc = mac_exact(window(), config_.weights.raw);
  return FixedWord(scale_accumulator(acc, config_), config_.sample_format);
}

FixedWord SlidingWindowFilter::push(const FixedWord& sample) {
  if (sample.format() != config_.sample_format) {
    throw DomainError("sample word is not in the filter's sample format");
  }
  return push(sample.raw());
}

void SlidingWindowFilter::reset() {
  std::fill(ring_.begin(), ring_.end(), 0);
  head_ = 0;
  fill_count_ = 0;
}

std::span<const std::uint64_t> SlidingWindowFilter::window() const {
  return std::span<const std::uint64_t>(ring_).subspan(head_, config_.taps);
}

std::vector<FixedWord> run_stream(SlidingWindowFilter& filter,
                                  std::span<const std::uint64_t> samples) {
  std::vector<FixedWord> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      out.push_back(filter.push(samples[i]));
    } catch (const DomainError& e) {
      throw DomainError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::uint64_t> run_stream_raw(SlidingWindowFilter& filter,
                                          std::span<const std::uint64_t> samples) {
  std::vector<std::uint64_t> out;
  out.reserve(samples.size());
  for (const FixedWord& w : run_stream(filter, samples)) out.push_back(w.raw());
  return out;
}

std::vector<FixedWord> step_response(const FilterConfig& config,
                                     const FixedWord& seed, std::size_t length) {
  if (length < config.taps) {
    throw UsageError("step response length " + std::to_string(length) +
                     " is shorter than the window (" +
                     std::to_string(config.taps) + " taps)");
  }
  SlidingWindowFilter filter(config);
  std::vector<FixedWord> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(filter.push(seed));
  return out;
}

std::vector<FixedWord> impulse_response(const FilterConfig& config,
                                        const FixedWord& magnitude) {
  SlidingWindowFilter filter(config);
  std::vector<FixedWord> out;
  out.reserve(config.taps);
  out.push_back(filter.push(magnitude));
  for (std::size_t i = 1; i < config.taps; ++i) out.push_back(filter.push(0));
  return out;
}

}  // namespace gdswu
