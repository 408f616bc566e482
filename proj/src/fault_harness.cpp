#include "gdswu/fault_harness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gdswu/errors.hpp"

namespace gdswu::faults {

std::string_view to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::spike:
      return "spike";
    case FaultKind::stuck:
      return "stuck";
    case FaultKind::dropout:
      return "dropout";
  }
  return "?";
}

FaultKind parse_fault_kind(std::string_view name) {
  if (name == "spike") return FaultKind::spike;
  if (name == "stuck") return FaultKind::stuck;
  if (name == "dropout") return FaultKind::dropout;
  throw DomainError("unknown fault kind '" + std::string(name) +
                    "' (expected spike, stuck or dropout)");
}

std::vector<std::uint64_t> inject(std::span<const std::uint64_t> samples,
                                  const FaultSpec& spec) {
  if (spec.duration < 1) throw UsageError("fault duration must be at least 1");
  if (spec.start >= samples.size() || spec.duration > samples.size() - spec.start) {
    throw UsageError("fault window [" + std::to_string(spec.start) + ", " +
                     std::to_string(spec.end()) + ") exceeds stream of " +
                     std::to_string(samples.size()) + " samples");
  }
  std::vector<std::uint64_t> out(samples.begin(), samples.end());
  const std::uint64_t value = spec.kind == FaultKind::dropout ? 0 : spec.magnitude;
  std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(spec.start), spec.duration, value);
  return out;
}

std::uint64_t analytic_bound(const FilterConfig& config, std::uint64_t delta,
                             std::size_t duration) {
  const auto& w = config.weights.raw;
  const std::size_t span = std::min(std::max<std::size_t>(duration, 1), w.size());
  // Largest sum over `span` consecutive lags (the peak lag for span 1).
  Accumulator window = std::accumulate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(span),
                                       Accumulator{0});
  Accumulator best = window;
  for (std::size_t i = span; i < w.size(); ++i) {
    window += w[i];
    window -= w[i - span];
    best = std::max(best, window);
  }
  const Accumulator d = config.divisor();
  const Accumulator num = best * delta;
  return static_cast<std::uint64_t>((num + d - 1) / d) + 1;
}

AttenuationReport attenuation_report(std::span<const std::uint64_t> clean_stream,
                                     const FaultSpec& spec, const FilterConfig& config) {
  if (!config.sample_format.contains(spec.magnitude)) {
    throw DomainError("fault magnitude " + std::to_string(spec.magnitude) +
                      " exceeds the sample format");
  }
  const std::vector<std::uint64_t> faulty = inject(clean_stream, spec);

  SlidingWindowFilter clean_filter(config);
  SlidingWindowFilter faulty_filter(config);
  const auto clean_out = run_stream_raw(clean_filter, clean_stream);
  const auto faulty_out = run_stream_raw(faulty_filter, faulty);

  std::uint64_t delta = 0;
  for (std::size_t i = spec.start; i < spec.end(); ++i) {
    const std::uint64_t a = clean_stream[i];
    const std::uint64_t b = faulty[i];
    delta = std::max(delta, a > b ? a - b : b - a);
  }

  AttenuationReport report;
  report.spec = spec;
  report.recovery_index = spec.end();
  for (std::size_t i = 0; i < clean_out.size(); ++i) {
    const std::uint64_t a = clean_out[i];
    const std::uint64_t b = faulty_out[i];
    const std::uint64_t dev = a > b ? a - b : b - a;
    if (dev != 0) {
      report.max_output_deviation = std::max(report.max_output_deviation, dev);
      report.recovery_index = std::max(report.recovery_index, i + 1);
    }
  }
  report.analytic_bound = analytic_bound(config, delta, spec.duration);
  report.bound_satisfied = report.max_output_deviation <= report.analytic_bound;
  return report;
}

SweepReport sweep(std::span<const FaultSpec> specs, const FilterConfig& config,
                  std::span<const std::vector<std::uint64_t>> streams) {
  SweepReport result;
  if (specs.empty()) return result;
  if (streams.size() != 1 && streams.size() != specs.size()) {
    throw UsageError("sweep needs one shared stream or one stream per spec");
  }
  result.reports.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& stream = streams.size() == 1 ? streams[0] : streams[i];
    result.reports.push_back(attenuation_report(stream, specs[i], config));
  }

  SweepAggregate agg;
  agg.min_deviation = result.reports.front().max_output_deviation;
  agg.worst_bound_slack = static_cast<std::int64_t>(result.reports.front().analytic_bound) -
                          static_cast<std::int64_t>(result.reports.front().max_output_deviation);
  double total = 0.0;
  for (const AttenuationReport& r : result.reports) {
    agg.min_deviation = std::min(agg.min_deviation, r.max_output_deviation);
    agg.max_deviation = std::max(agg.max_deviation, r.max_output_deviation);
    total += static_cast<double>(r.max_output_deviation);
    agg.worst_bound_slack =
        std::min(agg.worst_bound_slack, static_cast<std::int64_t>(r.analytic_bound) -
                                            static_cast<std::int64_t>(r.max_output_deviation));
    agg.all_bounds_satisfied = agg.all_bounds_satisfied && r.bound_satisfied;
  }
  agg.mean_deviation = total / static_cast<double>(result.reports.size());
  result.aggregate = agg;
  return result;
}

}  // namespace gdswu::faults
