#include "gdswu/systolic_model.hpp"

#include <algorithm>
#include <string>

#include "gdswu/errors.hpp"

namespace gdswu {

std::string_view to_string(PipelineTopology topology) {
  switch (topology) {
    case PipelineTopology::adder_tree:
      return "adder-tree";
    case PipelineTopology::mac_chain:
      return "mac-chain";
  }
  return "?";
}

PipelineTopology parse_pipeline_topology(std::string_view name) {
  if (name == "adder-tree") return PipelineTopology::adder_tree;
  if (name == "mac-chain") return PipelineTopology::mac_chain;
  throw DomainError("unknown pipeline topology '" + std::string(name) +
                    "' (expected adder-tree or mac-chain)");
}

namespace {

std::size_t tree_depth(std::size_t taps) {
  return std::max<std::size_t>(1, ceil_log2(taps));
}

}  // namespace

std::size_t pipeline_latency(std::size_t taps, PipelineTopology topology) {
  if (taps < 1) throw ConstructionError("pipeline needs at least one tap");
  return topology == PipelineTopology::adder_tree ? 2 + tree_depth(taps)
                                                  : taps + 1;
}

OpCounts pipeline_steady_state_ops(std::size_t taps) {
  if (taps < 1) throw ConstructionError("pipeline needs at least one tap");
  // Either topology reduces `taps` products with taps-1 two-input adds.
  return {taps, taps - 1, 1};
}

PipelineModel::PipelineModel(FilterConfig config, PipelineTopology topology)
    : config_(std::move(config)), topology_(topology) {
  if (config_.taps < 1) throw ConstructionError("pipeline needs at least one tap");
  config_.validate();
  const std::size_t taps = config_.taps;
  if (topology_ == PipelineTopology::adder_tree) {
    const std::size_t depth = tree_depth(taps);
    stages_.resize(depth + 1);
    std::size_t width = taps;
    stages_[0].values.assign(width, 0);
    for (std::size_t j = 1; j <= depth; ++j) {
      width = (width + 1) / 2;
      stages_[j].values.assign(width, 0);
    }
  } else {
    stages_.resize(taps);
    for (Token& t : stages_) t.values.assign(1, 0);
  }
  normalized_.values.assign(1, 0);
}

std::size_t PipelineModel::stage_count() const {
  return pipeline_latency(config_.taps, topology_);
}

OpCounts PipelineModel::steady_state_ops() const {
  return pipeline_steady_state_ops(config_.taps);
}

TickResult PipelineModel::tick(std::optional<std::uint64_t> input) {
  if (input && !config_.sample_format.contains(*input)) {
    throw DomainError("sample " + std::to_string(*input) +
                      " exceeds the sample format maximum " +
                      std::to_string(config_.sample_format.max_raw()));
  }
  ++cycle_;
  return topology_ == PipelineTopology::adder_tree ? tick_tree(input)
                                                   : tick_chain(input);
}

TickResult PipelineModel::tick_tree(std::optional<std::uint64_t> input) {
  TickResult result;
  CycleReport& report = result.report;
  report.cycle = cycle_;
  report.input = input;
  const std::size_t depth = stages_.size() - 1;

  // Registers update from the previous cycle's values, back to front.
  const Token& last = stages_[depth];
  normalized_.valid = last.valid;
  if (last.valid) {
    normalized_.values[0] = scale_accumulator(last.values[0], config_);
    normalized_.sequence = last.sequence;
    report.ops.normalize = 1;
  }

  for (std::size_t j = depth; j >= 1; --j) {
    const Token& src = stages_[j - 1];
    Token& dst = stages_[j];
    dst.valid = src.valid;
    dst.sequence = src.sequence;
    if (!src.valid) continue;
    const std::size_t n = src.values.size();
    for (std::size_t k = 0; k < dst.values.size(); ++k) {
      const std::size_t left = 2 * k;
      if (left + 1 < n) {
        dst.values[k] = src.values[left] + src.values[left + 1];
        ++report.ops.add;
      } else {
        dst.values[k] = src.values[left];
      }
    }
  }

  Token& products = stages_[0];
  products.valid = input.has_value();
  if (input) {
    history_.push_front(*input);
    if (history_.size() > config_.taps) history_.pop_back();
    products.sequence = samples_seen_++;
    const auto& w = config_.weights.raw;
    for (std::size_t i = 0; i < config_.taps; ++i) {
      const std::uint64_t x = i < history_.size() ? history_[i] : 0;
      products.values[i] = static_cast<Accumulator>(w[i]) * x;
    }
    report.ops.multiply = config_.taps;
  }

  report.stage_occupancy.reserve(stages_.size() + 1);
  for (const Token& t : stages_) report.stage_occupancy.push_back(t.valid);
  report.stage_occupancy.push_back(normalized_.valid);

  if (normalized_.valid) {
    const auto raw = static_cast<std::uint64_t>(normalized_.values[0]);
    result.output = FixedWord(raw, config_.sample_format);
    report.emitted_output = raw;
  }
  return result;
}

TickResult PipelineModel::tick_chain(std::optional<std::uint64_t> input) {
  TickResult result;
  CycleReport& report = result.report;
  report.cycle = cycle_;
  report.input = input;
  const std::size_t taps = config_.taps;
  const auto& w = config_.weights.raw;

  if (input) {
    history_.push_front(*input);
    if (history_.size() > 2 * taps) history_.pop_back();
    ++samples_seen_;
  }
  // Sample m lives at history_[samples_seen_ - 1 - m] while it is retained.
  const auto sample_at = [&](std::uint64_t seq, std::size_t lag) -> std::uint64_t {
    if (seq < lag) return 0;
    const std::uint64_t m = seq - lag;
    return history_[static_cast<std::size_t>(samples_seen_ - 1 - m)];
  };

  const Token& last = stages_[taps - 1];
  normalized_.valid = last.valid;
  if (last.valid) {
    normalized_.values[0] = scale_accumulator(last.values[0], config_);
    normalized_.sequence = last.sequence;
    report.ops.normalize = 1;
  }

  for (std::size_t k = taps - 1; k >= 1; --k) {
    const Token& src = stages_[k - 1];
    Token& dst = stages_[k];
    dst.valid = src.valid;
    dst.sequence = src.sequence;
    if (!src.valid) continue;
    dst.values[0] = src.values[0] +
                    static_cast<Accumulator>(w[k]) * sample_at(src.sequence, k);
    ++report.ops.multiply;
    ++report.ops.add;
  }

  Token& first = stages_[0];
  first.valid = input.has_value();
  if (input) {
    first.sequence = samples_seen_ - 1;
    first.values[0] = static_cast<Accumulator>(w[0]) * *input;
    ++report.ops.multiply;
  }

  report.stage_occupancy.reserve(taps + 1);
  for (const Token& t : stages_) report.stage_occupancy.push_back(t.valid);
  report.stage_occupancy.push_back(normalized_.valid);

  if (normalized_.valid) {
    const auto raw = static_cast<std::uint64_t>(normalized_.values[0]);
    result.output = FixedWord(raw, config_.sample_format);
    report.emitted_output = raw;
  }
  return result;
}

std::vector<CycleReport> simulate_stream(PipelineModel& model,
                                         std::span<const std::uint64_t> samples) {
  std::vector<CycleReport> reports;
  reports.reserve(samples.size() + model.latency());
  for (std::uint64_t s : samples) reports.push_back(model.tick(s).report);
  if (!samples.empty()) {
    for (std::size_t i = 0; i + 1 < model.latency(); ++i) {
      reports.push_back(model.tick(std::nullopt).report);
    }
  }
  return reports;
}

std::vector<std::uint64_t> emitted_outputs(std::span<const CycleReport> reports) {
  std::vector<std::uint64_t> out;
  for (const CycleReport& r : reports) {
    if (r.emitted_output) out.push_back(*r.emitted_output);
  }
  return out;
}

}  // namespace gdswu
