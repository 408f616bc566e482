#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gdswu/filter.hpp"

namespace gdswu {

/// Published operation count for the 16-tap unit.
inline constexpr std::size_t kReportedOpsPerCycle = 22;

enum class PipelineTopology {
  adder_tree,  // parallel multipliers -> binary adder tree -> normalize
  mac_chain,   // linear chain of registered multiply-accumulate cells -> normalize
};

std::string_view to_string(PipelineTopology topology);
PipelineTopology parse_pipeline_topology(std::string_view name);

/// Operations executed in one cycle. Counting convention: one multiplier,
/// one 2-input adder, or the normalize unit each count as one operation.
struct OpCounts {
  std::size_t multiply = 0;
  std::size_t add = 0;
  std::size_t normalize = 0;

  std::size_t total() const { return multiply + add + normalize; }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct CycleReport {
  std::uint64_t cycle = 0;  // 1-based
  std::optional<std::uint64_t> input;
  OpCounts ops;
  std::vector<bool> stage_occupancy;
  std::optional<std::uint64_t> emitted_output;
};

struct TickResult {
  std::optional<FixedWord> output;
  CycleReport report;
};

/// Cycle-level model of the fully pipelined datapath.
///
/// The shift register loads on the cycle a sample arrives and the multiply
/// stage registers the products on that same cycle, so the sample fed on
/// cycle t leaves the normalize stage on cycle t + latency - 1. Absent inputs
/// are bubbles: the shift register holds and an invalid token flows down.
///
/// Adder tree: stages = 2 + max(1, ceil(log2 taps)); with one tap the single
/// tree level is a pass-through register. MAC chain: stages = taps + 1, cell
/// k adds w[k] * x[n-k] to the partial sum of output n on its k-th cycle.
class PipelineModel {
 public:
  explicit PipelineModel(FilterConfig config,
                         PipelineTopology topology = PipelineTopology::adder_tree);

  /// Advances one clock. Input must fit the sample format (DomainError).
  TickResult tick(std::optional<std::uint64_t> input);

  std::size_t stage_count() const;
  std::size_t latency() const { return stage_count(); }
  /// Resources every stage exercises once the pipeline is full.
  OpCounts steady_state_ops() const;

  PipelineTopology topology() const { return topology_; }
  const FilterConfig& config() const { return config_; }
  std::uint64_t cycle() const { return cycle_; }

 private:
  struct Token {
    bool valid = false;
    std::vector<Accumulator> values;
    std::uint64_t sequence = 0;  // index of the sample this token belongs to
  };

  TickResult tick_tree(std::optional<std::uint64_t> input);
  TickResult tick_chain(std::optional<std::uint64_t> input);

  FilterConfig config_;
  PipelineTopology topology_;
  std::uint64_t cycle_ = 0;
  std::uint64_t samples_seen_ = 0;
  // Tree: newest-first window. Chain: enough history for cell taps-1.
  std::deque<std::uint64_t> history_;
  // Tree: [products, level 1..depth]. Chain: one partial sum per cell.
  std::vector<Token> stages_;
  Token normalized_;
};

/// Stage count for the default (adder tree) convention: 2 + max(1, ceil(log2 taps)).
std::size_t pipeline_latency(std::size_t taps,
                             PipelineTopology topology = PipelineTopology::adder_tree);

/// Steady-state operation count for a pipeline with `taps` taps.
OpCounts pipeline_steady_state_ops(std::size_t taps);

/// Feeds every sample, then bubbles until the pipeline drains.
std::vector<CycleReport> simulate_stream(PipelineModel& model,
                                         std::span<const std::uint64_t> samples);

/// Outputs of simulate_stream in emission order (latency removed).
std::vector<std::uint64_t> emitted_outputs(std::span<const CycleReport> reports);

}  // namespace gdswu
