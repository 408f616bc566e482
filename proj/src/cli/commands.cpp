#include "gdswu/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdswu/cli/csv.hpp"
#include "gdswu/cli/run_config.hpp"
#include "gdswu/errors.hpp"
#include "gdswu/fault_harness.hpp"
#include "gdswu/filter.hpp"
#include "gdswu/json.hpp"
#include "gdswu/reference_oracle.hpp"
#include "gdswu/systolic_model.hpp"

namespace gdswu::cli {

namespace {

constexpr const char* kVersion = "gdswu 1.0.0";
constexpr const char* kReportedStepValue = "0x3A";

/// Filter flags shared by the subcommands. Each flag is applied only when
/// given, on top of the defaults and the --config file.
struct FilterFlags {
  std::string config_path;
  unsigned a = 0;
  double b = 0.0;
  std::size_t taps = 0;
  unsigned frac_bits = 0;
  unsigned weight_int_bits = 0;
  std::string rounding;
  std::string mode;
  unsigned sample_int_bits = 0;
  double sample_offset = 0.0;
  std::string division;
  std::string topology;

  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;

  void add_weight_flags(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file");
    bind(app->add_option("--shape,-a", a, "gamma shape a (integer, 1..20)"),
         [this](RunConfig& c) { c.a = a; });
    bind(app->add_option("--scale,-b", b, "gamma scale b (> 0)"),
         [this](RunConfig& c) { c.b = b; });
    bind(app->add_option("--taps", taps, "window length"),
         [this](RunConfig& c) { c.taps = taps; });
    bind(app->add_option("--frac-bits", frac_bits, "weight fractional bits"),
         [this](RunConfig& c) { c.frac_bits = frac_bits; });
    bind(app->add_option("--weight-int-bits", weight_int_bits, "weight integer bits"),
         [this](RunConfig& c) { c.weight_int_bits = weight_int_bits; });
    bind(app->add_option("--rounding", rounding, "half-up | nearest-even"),
         [this](RunConfig& c) { c.rounding = parse_rounding_mode(rounding); });
    bind(app->add_option("--sample-offset", sample_offset, "PDF sample point of lag 0"),
         [this](RunConfig& c) { c.sample_offset = sample_offset; });
  }

  void add_filter_flags(CLI::App* app) {
    add_weight_flags(app);
    bind(app->add_option("--mode", mode, "normalized-average | raw-accumulate"),
         [this](RunConfig& c) { c.mode = parse_output_mode(mode); });
    bind(app->add_option("--sample-int-bits", sample_int_bits, "sample width in bits"),
         [this](RunConfig& c) { c.sample_int_bits = sample_int_bits; });
    bind(app->add_option("--division", division, "floor | half-up"),
         [this](RunConfig& c) { c.division = parse_division_rounding(division); });
  }

  void add_topology_flag(CLI::App* app) {
    bind(app->add_option("--topology", topology, "adder-tree | mac-chain"),
         [this](RunConfig& c) { c.topology = parse_pipeline_topology(topology); });
  }

  void bind(CLI::Option* opt, std::function<void(RunConfig&)> apply) {
    overrides.emplace_back(opt, std::move(apply));
  }

  RunConfig resolve() const {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot open config file '" + config_path + "'");
      apply_config_file(file, config_path, config);
    }
    for (const auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(config);
    }
    return config;
  }
};

struct StreamFlags {
  std::string input = "-";
  std::string output = "-";
  bool header = false;
  std::size_t column = 0;

  void add(CLI::App* app, bool with_input = true) {
    if (with_input) {
      app->add_option("--input,-i", input, "input CSV path, '-' for stdin");
      app->add_flag("--header", header, "input CSV has a header row");
      app->add_option("--column", column, "0-based CSV column holding samples");
    }
    app->add_option("--output,-o", output, "output path, '-' for stdout");
  }
};

/// Output sink that is either a file or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::vector<std::uint64_t> load_samples(const StreamFlags& flags, std::istream& in,
                                        const QFormat& format) {
  CsvOptions options{flags.header, flags.column, format.max_raw()};
  if (flags.input.empty() || flags.input == "-") return read_samples(in, options);
  std::ifstream file(flags.input, std::ios::binary);
  if (!file) throw UsageError("cannot open input file '" + flags.input + "'");
  return read_samples(file, options);
}

/// Writes the summary to --summary when given, else as the last stdout line.
void emit_summary(const Json& summary, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << summary.dump() << '\n';
    return;
  }
  Sink sink(path, out);
  sink.get() << summary.dump(2) << '\n';
}

int cmd_weights(const FilterFlags& flags, const StreamFlags& stream, std::ostream& out) {
  const RunConfig config = flags.resolve();
  const WeightVector w = build_weight_vector(
      {config.a, config.b}, config.taps, {config.weight_int_bits, config.frac_bits},
      config.rounding, {config.sample_offset});
  Sink sink(stream.output, out);
  sink.get() << to_json(w).dump(2) << '\n';
  return kExitOk;
}

void write_stream_csv(std::ostream& os, std::span<const std::uint64_t> input,
                      std::span<const std::uint64_t> output) {
  os << "index,input,output\n";
  for (std::size_t i = 0; i < input.size(); ++i) {
    os << i << ',' << input[i] << ',' << output[i] << '\n';
  }
}

int cmd_run(const FilterFlags& flags, const StreamFlags& stream, const std::string& report_path,
            std::istream& in, std::ostream& out) {
  const RunConfig config = flags.resolve();
  const FilterOptions options = config.filter_options();
  const FilterConfig filter_config = make_filter_config(options);
  SlidingWindowFilter filter(filter_config);
  const auto samples = load_samples(stream, in, config.sample_format());
  const auto outputs = run_stream_raw(filter, samples);
  {
    Sink sink(stream.output, out);
    write_stream_csv(sink.get(), samples, outputs);
  }
  if (report_path.empty()) return kExitOk;

  // Cross-check the run against both reference oracles.
  const auto exact = oracle::oracle_exact(samples, filter_config.weights.raw,
                                          filter_config.weights.raw_sum,
                                          oracle::exact_mode_of(filter_config));
  const std::uint64_t max_sample = filter_config.sample_format.max_raw();
  const auto real = oracle::oracle_real(samples, options.params, options.taps, options.mode,
                                        options.sample_points, static_cast<double>(max_sample));
  Json j;
  j["samples"] = samples.size();
  j["exact"] = to_json(oracle::compare(outputs, exact));
  j["real"] = to_json(
      oracle::compare(outputs, real, oracle::quantization_bound(filter_config, max_sample)));
  Sink sink(report_path, out);
  sink.get() << j.dump(2) << '\n';
  return kExitOk;
}

struct StepSummary {
  std::uint64_t steady = 0;
  std::size_t settle_index = 0;
  bool monotone = true;
};

StepSummary summarize_step(std::span<const std::uint64_t> outputs) {
  StepSummary s;
  s.steady = outputs.back();
  std::size_t first_steady = outputs.size() - 1;
  while (first_steady > 0 && outputs[first_steady - 1] == s.steady) --first_steady;
  s.settle_index = first_steady + 1;
  s.monotone = std::is_sorted(outputs.begin(), outputs.end());
  return s;
}

std::vector<std::uint64_t> raw_values(std::span<const FixedWord> words) {
  std::vector<std::uint64_t> out;
  out.reserve(words.size());
  for (const FixedWord& w : words) out.push_back(w.raw());
  return out;
}

int cmd_step(const FilterFlags& flags, const StreamFlags& stream, const std::string& seed_text,
             std::size_t length, const std::string& summary_path, std::ostream& out) {
  const RunConfig config = flags.resolve();
  const std::uint64_t seed_raw = parse_sample_literal(seed_text);
  const FilterConfig filter = make_filter_config(config.filter_options());
  const FixedWord seed(seed_raw, filter.sample_format);
  const auto outputs = raw_values(step_response(filter, seed, length));
  const StepSummary summary = summarize_step(outputs);

  const std::vector<std::uint64_t> inputs(length, seed_raw);
  {
    Sink sink(stream.output, out);
    write_stream_csv(sink.get(), inputs, outputs);
  }

  Json by_mode = Json::object();
  for (OutputMode m : {OutputMode::normalized_average, OutputMode::raw_accumulate}) {
    FilterOptions options = config.filter_options();
    options.mode = m;
    const auto alt = raw_values(step_response(make_filter_config(options), seed, length));
    by_mode[std::string(to_string(m))] = {{"steady_value", alt.back()},
                                          {"steady_hex", to_hex(alt.back())}};
  }

  Json j;
  j["seed"] = seed_raw;
  j["seed_hex"] = to_hex(seed_raw);
  j["length"] = length;
  j["mode"] = std::string(to_string(config.mode));
  j["raw_sum"] = filter.weights.raw_sum;
  j["steady_value"] = summary.steady;
  j["steady_hex"] = to_hex(summary.steady);
  j["settle_index"] = summary.settle_index;
  j["monotone_non_decreasing"] = summary.monotone;
  j["by_mode"] = by_mode;
  j["paper_comparison"] = {{"paper_reported", kReportedStepValue},
                           {"observed", to_hex(summary.steady)},
                           {"match", to_hex(summary.steady) == kReportedStepValue}};
  emit_summary(j, summary_path, out);
  return kExitOk;
}

struct InjectFlags {
  std::string kind = "spike";
  std::size_t at = 0;
  std::size_t duration = 1;
  std::string magnitude = "0x7F";
  std::size_t random_spikes = 0;
  std::uint64_t rng_seed = 1;
  CLI::Option* at_opt = nullptr;
};

int cmd_inject(const FilterFlags& flags, const StreamFlags& stream, const InjectFlags& inject,
               std::istream& in, std::ostream& out) {
  const RunConfig config = flags.resolve();
  const FilterConfig filter = make_filter_config(config.filter_options());
  const auto samples = load_samples(stream, in, config.sample_format());

  std::vector<faults::FaultSpec> specs;
  if (inject.at_opt->count() > 0) {
    faults::FaultSpec spec;
    spec.kind = faults::parse_fault_kind(inject.kind);
    spec.start = inject.at;
    spec.duration = inject.duration;
    spec.magnitude = parse_sample_literal(inject.magnitude);
    specs.push_back(spec);
  }
  if (inject.random_spikes > 0) {
    if (samples.empty()) throw UsageError("random spikes need a non-empty stream");
    std::mt19937_64 rng(inject.rng_seed);
    std::uniform_int_distribution<std::size_t> where(0, samples.size() - 1);
    std::uniform_int_distribution<std::uint64_t> level(0, filter.sample_format.max_raw());
    for (std::size_t k = 0; k < inject.random_spikes; ++k) {
      const std::size_t start = where(rng);
      const std::uint64_t magnitude = level(rng);
      specs.push_back({faults::FaultKind::spike, start, 1, magnitude});
    }
  }
  if (specs.empty()) throw UsageError("inject needs --at or --random-spikes");

  const std::vector<std::vector<std::uint64_t>> streams{samples};
  const faults::SweepReport report = faults::sweep(specs, filter, streams);
  Sink sink(stream.output, out);
  sink.get() << to_json(report).dump(2) << '\n';
  return kExitOk;
}

int cmd_simulate(const FilterFlags& flags, const StreamFlags& stream,
                 const std::string& summary_path, std::istream& in, std::ostream& out) {
  const RunConfig config = flags.resolve();
  PipelineModel model(make_filter_config(config.filter_options()), config.topology);
  const auto samples = load_samples(stream, in, config.sample_format());
  const auto reports = simulate_stream(model, samples);

  {
    Sink sink(stream.output, out);
    std::ostream& os = sink.get();
    os << "cycle,input,output,mult_ops,add_ops,other_ops\n";
    for (const CycleReport& r : reports) {
      os << r.cycle << ',';
      if (r.input) os << *r.input;
      os << ',';
      if (r.emitted_output) os << *r.emitted_output;
      os << ',' << r.ops.multiply << ',' << r.ops.add << ',' << r.ops.normalize << '\n';
    }
  }

  // Steady state: cycles where every stage holds valid data.
  std::size_t steady_cycles = 0;
  std::size_t steady_outputs = 0;
  std::size_t steady_ops = 0;
  bool ops_constant = true;
  for (const CycleReport& r : reports) {
    if (!std::all_of(r.stage_occupancy.begin(), r.stage_occupancy.end(),
                     [](bool b) { return b; })) {
      continue;
    }
    if (steady_cycles > 0 && r.ops.total() != steady_ops) ops_constant = false;
    steady_ops = r.ops.total();
    ++steady_cycles;
    if (r.emitted_output) ++steady_outputs;
  }

  const OpCounts ops = model.steady_state_ops();
  Json j;
  j["topology"] = std::string(to_string(model.topology()));
  j["taps"] = config.taps;
  j["stages"] = model.stage_count();
  j["latency"] = model.latency();
  j["ops"] = {{"multiply", ops.multiply}, {"add", ops.add}, {"normalize", ops.normalize}};
  j["ops_per_cycle_total"] = ops.total();
  j["paper_claim"] = kReportedOpsPerCycle;
  j["delta_vs_paper"] = static_cast<std::int64_t>(ops.total()) -
                        static_cast<std::int64_t>(kReportedOpsPerCycle);
  j["convention"] = "multiply=1, 2-input add=1, normalize=1";
  j["cycles"] = reports.size();
  j["outputs"] = emitted_outputs(reports).size();
  j["steady_cycles"] = steady_cycles;
  j["steady_outputs_per_cycle"] =
      steady_cycles == 0 ? Json(nullptr)
                         : Json(static_cast<double>(steady_outputs) /
                                static_cast<double>(steady_cycles));
  j["steady_ops_constant"] = ops_constant;
  emit_summary(j, summary_path, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gamma-weighted sliding-window filter toolkit", "gdswu"};
  app.require_subcommand(1);
  bool show_version = false;
  app.add_flag("--version", show_version, "print the version to stderr");

  FilterFlags weight_flags, run_flags, step_flags, inject_flags, sim_flags;
  StreamFlags weight_io, run_io, step_io, inject_io, sim_io;

  auto* weights = app.add_subcommand("weights", "print the quantized tap weights as JSON");
  weight_flags.add_weight_flags(weights);
  weight_io.add(weights, false);

  auto* run_cmd = app.add_subcommand("run", "filter a CSV sample stream");
  run_flags.add_filter_flags(run_cmd);
  run_io.add(run_cmd);
  std::string run_report;
  run_cmd->add_option("--report", run_report, "write oracle comparison JSON here");

  std::string seed = "0x7F";
  std::size_t length = 32;
  std::string step_summary;
  auto* step = app.add_subcommand("step", "step response from a zeroed filter");
  step_flags.add_filter_flags(step);
  step_io.add(step, false);
  step->add_option("--seed", seed, "constant input (decimal, 0x7F or 7h'7F)");
  step->add_option("--length", length, "number of samples");
  step->add_option("--summary", step_summary, "write the summary JSON here");

  InjectFlags inject_opts;
  auto* inject = app.add_subcommand("inject", "fault-injection attenuation report");
  inject_flags.add_filter_flags(inject);
  inject_io.add(inject);
  inject->add_option("--kind", inject_opts.kind, "spike | stuck | dropout");
  inject_opts.at_opt = inject->add_option("--at", inject_opts.at, "first faulty sample index");
  inject->add_option("--duration", inject_opts.duration, "faulty sample count");
  inject->add_option("--magnitude", inject_opts.magnitude, "spike level or stuck value");
  inject->add_option("--random-spikes", inject_opts.random_spikes,
                     "additionally sweep this many random single-sample spikes");
  inject->add_option("--rng-seed", inject_opts.rng_seed, "seed for --random-spikes");

  std::string sim_summary;
  auto* simulate = app.add_subcommand("simulate", "cycle-level pipeline simulation");
  sim_flags.add_filter_flags(simulate);
  sim_flags.add_topology_flag(simulate);
  sim_io.add(simulate);
  simulate->add_option("--summary", sim_summary, "write the footer JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (show_version) {
      err << kVersion << '\n';
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (*weights) return cmd_weights(weight_flags, weight_io, out);
    if (*run_cmd) return cmd_run(run_flags, run_io, run_report, in, out);
    if (*step) return cmd_step(step_flags, step_io, seed, length, step_summary, out);
    if (*inject) return cmd_inject(inject_flags, inject_io, inject_opts, in, out);
    if (*simulate) return cmd_simulate(sim_flags, sim_io, sim_summary, in, out);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << '\n';
    return kExitUsageError;
  }
  return kExitUsageError;
}

}  // namespace gdswu::cli
