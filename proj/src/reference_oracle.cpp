#include "gdswu/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gdswu/errors.hpp"

namespace gdswu::oracle {

using boost::multiprecision::cpp_int;

ExactMode exact_mode_of(const FilterConfig& config) {
  return {config.mode, config.weights.format.frac_bits,
          config.sample_format.max_raw(), config.division};
}

std::vector<std::uint64_t> oracle_exact(std::span<const std::uint64_t> samples,
                                        std::span<const std::uint64_t> raw_weights,
                                        std::uint64_t raw_sum, const ExactMode& mode) {
  cpp_int divisor;
  if (mode.mode == OutputMode::normalized_average) {
    divisor = raw_sum;
  } else {
    divisor = 1;
    divisor <<= mode.frac_bits;
  }
  if (divisor == 0) throw UsageError("oracle_exact: zero divisor");

  std::vector<std::uint64_t> out;
  out.reserve(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    cpp_int acc = 0;
    for (std::size_t i = 0; i < raw_weights.size() && i <= n; ++i) {
      acc += cpp_int(raw_weights[i]) * samples[n - i];
    }
    cpp_int q = mode.division == DivisionRounding::floor
                    ? cpp_int(acc / divisor)
                    : cpp_int((2 * acc + divisor) / (2 * divisor));
    if (mode.mode == OutputMode::raw_accumulate && q > mode.saturate_at) {
      q = mode.saturate_at;
    }
    out.push_back(q.convert_to<std::uint64_t>());
  }
  return out;
}

std::vector<double> oracle_real(std::span<const std::uint64_t> samples,
                                const GammaParams& params, std::size_t taps,
                                OutputMode mode, SamplePointRule sample_points,
                                double ceiling) {
  params.validate();
  std::vector<double> w(taps);
  for (std::size_t i = 0; i < taps; ++i) {
    w[i] = gamma_pdf(sample_points.point(i), params);
  }
  double norm = 1.0;
  if (mode == OutputMode::normalized_average) {
    norm = 0.0;
    for (double v : w) norm += v;
  }

  std::vector<double> out;
  out.reserve(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < taps && i <= n; ++i) {
      acc += w[i] * static_cast<double>(samples[n - i]);
    }
    out.push_back(std::min(acc / norm, ceiling));
  }
  return out;
}

namespace {

template <typename T>
ComparisonReport compare_impl(std::span<const std::uint64_t> fixed_out,
                              std::span<const T> oracle_out, double bound) {
  if (fixed_out.size() != oracle_out.size()) {
    throw UsageError("compare: sequences differ in length (" +
                     std::to_string(fixed_out.size()) + " vs " +
                     std::to_string(oracle_out.size()) + ")");
  }
  ComparisonReport report;
  report.bound_used = bound;
  for (std::size_t i = 0; i < fixed_out.size(); ++i) {
    const double diff = std::abs(static_cast<double>(fixed_out[i]) -
                                 static_cast<double>(oracle_out[i]));
    report.max_abs_error = std::max(report.max_abs_error, diff);
    if (diff > bound) {
      if (report.mismatch_count == 0) report.first_mismatch_index = i;
      ++report.mismatch_count;
    }
  }
  return report;
}

}  // namespace

ComparisonReport compare(std::span<const std::uint64_t> fixed_out,
                         std::span<const std::uint64_t> oracle_out, double bound) {
  return compare_impl(fixed_out, oracle_out, bound);
}

ComparisonReport compare(std::span<const std::uint64_t> fixed_out,
                         std::span<const double> oracle_out, double bound) {
  return compare_impl(fixed_out, oracle_out, bound);
}

double quantization_bound(const FilterConfig& config, std::uint64_t max_sample) {
  const WeightVector& w = config.weights;
  const double scale = std::ldexp(1.0, static_cast<int>(w.format.frac_bits));
  double err_sum = 0.0;
  for (std::size_t i = 0; i < w.taps; ++i) {
    err_sum += std::abs(static_cast<double>(w.raw[i]) - w.ideal[i] * scale);
  }
  err_sum = std::max(err_sum, 0.5 * static_cast<double>(w.taps));
  return err_sum * static_cast<double>(max_sample) /
             static_cast<double>(config.divisor()) +
         1.0;
}

}  // namespace gdswu::oracle
