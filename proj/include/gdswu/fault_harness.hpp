#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gdswu/filter.hpp"

namespace gdswu::faults {

enum class FaultKind {
  spike,    // replace with `magnitude`
  stuck,    // held at `magnitude`
  dropout,  // forced to 0
};

std::string_view to_string(FaultKind kind);
FaultKind parse_fault_kind(std::string_view name);

/// A transient corruption of the filter's input stream.
struct FaultSpec {
  FaultKind kind = FaultKind::spike;
  std::size_t start = 0;
  std::size_t duration = 1;
  std::uint64_t magnitude = 0;

  std::size_t end() const { return start + duration; }  // one past the last faulty sample
};

struct AttenuationReport {
  FaultSpec spec;
  std::uint64_t max_output_deviation = 0;
  std::uint64_t analytic_bound = 0;
  std::size_t recovery_index = 0;  // outputs equal the clean run from here on
  bool bound_satisfied = true;
  std::string_view fault_site = "input";
};

/// Applies the fault to a copy of the stream. Throws UsageError if the fault
/// window leaves the stream or has zero duration.
std::vector<std::uint64_t> inject(std::span<const std::uint64_t> samples,
                                  const FaultSpec& spec);

/// Largest output deviation the fault can cause:
/// ceil(delta * W / divisor) + 1, where delta is the largest per-sample input
/// change and W the largest sum of `duration` consecutive raw weights. The
/// +1 absorbs the interaction of the fault with floor division.
std::uint64_t analytic_bound(const FilterConfig& config, std::uint64_t delta,
                             std::size_t duration);

/// Runs clean and faulty streams through fresh filters and measures the
/// deviation and recovery point.
AttenuationReport attenuation_report(std::span<const std::uint64_t> clean_stream,
                                     const FaultSpec& spec, const FilterConfig& config);

struct SweepAggregate {
  std::uint64_t min_deviation = 0;
  std::uint64_t max_deviation = 0;
  double mean_deviation = 0.0;
  // Smallest analytic_bound - max_output_deviation over all reports.
  std::int64_t worst_bound_slack = 0;
  bool all_bounds_satisfied = true;
};

struct SweepReport {
  std::vector<AttenuationReport> reports;
  std::optional<SweepAggregate> aggregate;  // absent for an empty sweep
};

/// One report per spec. `streams` holds either one stream shared by every
/// spec or one stream per spec.
SweepReport sweep(std::span<const FaultSpec> specs, const FilterConfig& config,
                  std::span<const std::vector<std::uint64_t>> streams);

}  // namespace gdswu::faults
