#include "gdswu/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gdswu/cli/csv.hpp"
#include "gdswu/cli/run_config.hpp"
#include "gdswu/errors.hpp"
#include "gdswu/json.hpp"
#include "gdswu/reference_oracle.hpp"
#include "test_support.hpp"

namespace gdswu::cli {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "gdswu");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string column(const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::uint64_t v : values) s += std::to_string(v) + "\n";
  return s;
}

/// Splits CSV body rows (after the header) into their fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '{') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::vector<std::uint64_t> output_column(const std::string& text, std::size_t col = 2) {
  std::vector<std::uint64_t> out;
  for (const auto& row : csv_rows(text)) {
    if (row.size() > col && !row[col].empty()) out.push_back(std::stoull(row[col]));
  }
  return out;
}

Json last_line_json(const std::string& text) {
  const auto pos = text.rfind("\n{");
  return Json::parse(text.substr(pos == std::string::npos ? 0 : pos + 1));
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("gdswu_cli_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

TEST(CliWeightsTest, Defaults) {
  const CliResult r = invoke({"weights"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["a"], 1);
  EXPECT_EQ(j["b"], 10.0);
  EXPECT_EQ(j["taps"], 16);
  EXPECT_EQ(j["frac_bits"], 7);
  EXPECT_EQ(j["rounding"], "half-up");
  EXPECT_EQ(j["raw"].get<std::vector<std::uint64_t>>(), testing::kDefaultRaw);
  EXPECT_EQ(j["raw_sum"], 107);
  EXPECT_EQ(j["ideal"].size(), 16u);
  // Stable key order.
  EXPECT_LT(r.out.find("\"a\""), r.out.find("\"raw\""));
}

TEST(CliWeightsTest, SingleTapAndErrors) {
  const CliResult one = invoke({"weights", "--taps", "1"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(Json::parse(one.out)["raw"], Json::array({13}));

  const CliResult zero_shape = invoke({"weights", "--shape", "0"});
  EXPECT_EQ(zero_shape.code, 2);
  EXPECT_NE(zero_shape.err.find("domain error"), std::string::npos) << zero_shape.err;

  EXPECT_EQ(invoke({"weights", "--taps", "abc"}).code, 2);
  EXPECT_EQ(invoke({"weights", "--scale", "-1"}).code, 2);
  EXPECT_EQ(invoke({"weights", "--rounding", "sideways"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(CliRunTest, ZeroAndConstantColumns) {
  const CliResult zeros = invoke({"run"}, column(std::vector<std::uint64_t>(20, 0)));
  ASSERT_EQ(zeros.code, 0) << zeros.err;
  EXPECT_EQ(zeros.out.substr(0, zeros.out.find('\n')), "index,input,output");
  for (std::uint64_t y : output_column(zeros.out)) EXPECT_EQ(y, 0u);

  const CliResult c = invoke({"run"}, column(std::vector<std::uint64_t>(30, 42)));
  const auto out = output_column(c.out);
  ASSERT_EQ(out.size(), 30u);
  EXPECT_EQ(out.back(), 42u);
}

TEST(CliRunTest, HeaderAndColumnSelection) {
  const CliResult r = invoke({"run", "--header", "--column", "1"}, "t,x\n0,5\n1,6\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).size(), 2u);
  EXPECT_EQ(csv_rows(r.out)[1][1], "6");
}

TEST(CliRunTest, MalformedRowsAreDataErrors) {
  const CliResult bad = invoke({"run"}, "1\n2\nthree\n");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("row 3"), std::string::npos) << bad.err;

  const CliResult range = invoke({"run"}, "1\n128\n");
  EXPECT_EQ(range.code, 1);
  EXPECT_NE(range.err.find("row 2"), std::string::npos) << range.err;

  EXPECT_EQ(invoke({"run", "--input", "/nonexistent/file.csv"}).code, 2);
}

TEST(CliRunTest, MatchesExactOracle) {
  std::mt19937_64 rng(51);
  const auto samples = testing::random_stream(rng, 500, 127);
  for (const char* mode : {"normalized-average", "raw-accumulate"}) {
    const CliResult r = invoke({"run", "--mode", mode, "--taps", "24", "--shape", "2",
                                "--scale", "4.5", "--frac-bits", "9"},
                               column(samples));
    ASSERT_EQ(r.code, 0) << r.err;
    FilterOptions o;
    o.taps = 24;
    o.params = {2, 4.5};
    o.weight_format = {1, 9};
    o.mode = parse_output_mode(mode);
    const FilterConfig config = make_filter_config(o);
    const auto expected = oracle::oracle_exact(samples, config.weights.raw,
                                               config.weights.raw_sum,
                                               oracle::exact_mode_of(config));
    EXPECT_EQ(output_column(r.out), expected);
  }
}

TEST(CliRunTest, OracleReport) {
  std::mt19937_64 rng(55);
  const auto path = std::filesystem::temp_directory_path() / "gdswu_cli_test_report.json";
  const CliResult r = invoke({"run", "--report", path.string()},
                             column(testing::random_stream(rng, 200, 127)));
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["samples"], 200);
  EXPECT_EQ(j["exact"]["mismatch_count"], 0);
  EXPECT_TRUE(j["exact"]["first_mismatch_index"].is_null());
  EXPECT_EQ(j["real"]["mismatch_count"], 0);
  EXPECT_GT(j["real"]["bound_used"].get<double>(), 1.0);
}

TEST(CliMiscTest, VersionGoesToStderr) {
  const CliResult r = invoke({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("gdswu"), std::string::npos);
}

TEST(CliStepTest, SeedSevenFScenario) {
  const CliResult r = invoke({"step", "--seed", "0x7F", "--length", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto out = output_column(r.out);
  ASSERT_EQ(out.size(), 32u);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
  const Json s = last_line_json(r.out);
  EXPECT_EQ(s["steady_value"], 127);
  EXPECT_EQ(s["settle_index"], 16);
  EXPECT_EQ(s["monotone_non_decreasing"], true);
  EXPECT_EQ(s["paper_comparison"]["paper_reported"], "0x3A");
  EXPECT_EQ(s["paper_comparison"]["observed"], "0x7F");
  EXPECT_EQ(s["paper_comparison"]["match"], false);
  EXPECT_EQ(s["by_mode"]["raw-accumulate"]["steady_hex"], "0x6A");
  EXPECT_EQ(s["by_mode"]["normalized-average"]["steady_value"], 127);
}

TEST(CliStepTest, RawModeAndSeedNotations) {
  const CliResult raw = invoke({"step", "--seed", "7h'7F", "--mode", "raw-accumulate"});
  ASSERT_EQ(raw.code, 0) << raw.err;
  EXPECT_EQ(last_line_json(raw.out)["steady_value"], 106);

  const CliResult zero = invoke({"step", "--seed", "0"});
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(last_line_json(zero.out)["steady_value"], 0);

  EXPECT_EQ(invoke({"step", "--seed", "0x80"}).code, 2);
  EXPECT_EQ(invoke({"step", "--length", "4"}).code, 2);
}

TEST(CliStepTest, SummaryFile) {
  const auto path = std::filesystem::temp_directory_path() / "gdswu_cli_test_summary.json";
  const CliResult r = invoke({"step", "--summary", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('{'), std::string::npos);
  std::ifstream in(path);
  const Json s = Json::parse(in);
  EXPECT_EQ(s["steady_hex"], "0x7F");
}

TEST(CliInjectTest, NoOpAndSpike) {
  const std::string ten = column(std::vector<std::uint64_t>(50, 10));
  const CliResult noop = invoke({"inject", "--at", "5", "--magnitude", "10"}, ten);
  ASSERT_EQ(noop.code, 0) << noop.err;
  const Json j = Json::parse(noop.out);
  EXPECT_EQ(j["reports"][0]["max_output_deviation"], 0);
  EXPECT_EQ(j["reports"][0]["fault_site"], "input");

  const CliResult spike = invoke({"inject", "--at", "5", "--magnitude", "0x7F"}, ten);
  const Json s = Json::parse(spike.out);
  EXPECT_LE(s["reports"][0]["recovery_index"].get<std::size_t>(), 5u + 1u + 16u);
  EXPECT_EQ(s["reports"][0]["bound_satisfied"], true);

  EXPECT_EQ(invoke({"inject", "--at", "50"}, ten).code, 2);
  EXPECT_EQ(invoke({"inject"}, ten).code, 2);
  EXPECT_EQ(invoke({"inject", "--at", "1", "--kind", "gremlin"}, ten).code, 2);
}

TEST(CliInjectTest, RandomSweepHoldsBound) {
  std::mt19937_64 rng(52);
  const CliResult r = invoke({"inject", "--random-spikes", "200", "--rng-seed", "9"},
                             column(testing::random_stream(rng, 300, 127)));
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["reports"].size(), 200u);
  EXPECT_EQ(j["aggregate"]["all_bounds_satisfied"], true);
}

TEST(CliSimulateTest, FooterAndEquivalenceWithRun) {
  std::mt19937_64 rng(53);
  const std::string input = column(testing::random_stream(rng, 100, 127));
  for (const char* topology : {"adder-tree", "mac-chain"}) {
    const CliResult sim = invoke({"simulate", "--topology", topology}, input);
    ASSERT_EQ(sim.code, 0) << sim.err;
    const Json footer = last_line_json(sim.out);
    EXPECT_EQ(footer["ops_per_cycle_total"], 32);
    EXPECT_EQ(footer["paper_claim"], 22);
    EXPECT_EQ(footer["delta_vs_paper"], 10);
    EXPECT_EQ(footer["steady_outputs_per_cycle"], 1.0);
    EXPECT_EQ(footer["steady_ops_constant"], true);
    if (std::string(topology) == "adder-tree") EXPECT_EQ(footer["latency"], 6);

    const CliResult run = invoke({"run"}, input);
    EXPECT_EQ(output_column(sim.out), output_column(run.out));
  }
}

TEST(CliSimulateTest, ZeroStream) {
  const CliResult r = invoke({"simulate"}, column(std::vector<std::uint64_t>(20, 0)));
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 25u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(rows[i][2], "") << i;
  for (std::uint64_t y : output_column(r.out)) EXPECT_EQ(y, 0u);
}

TEST(CliConfigTest, FileValuesAndFlagOverrides) {
  const auto path = temp_file("cfg.txt",
                              "# test config\n"
                              "a = 1\n"
                              "b = 10\n"
                              "taps = 4\n"
                              "mode = raw-accumulate\n");
  const CliResult from_file = invoke({"weights", "--config", path.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(Json::parse(from_file.out)["taps"], 4);

  const CliResult overridden = invoke({"weights", "--config", path.string(), "--taps", "2"});
  EXPECT_EQ(Json::parse(overridden.out)["taps"], 2);

  const CliResult step = invoke({"step", "--config", path.string(), "--seed", "127"});
  EXPECT_EQ(last_line_json(step.out)["mode"], "raw-accumulate");
}

TEST(CliConfigTest, ErrorsNameKeyAndLine) {
  const auto bad_value = temp_file("bad1.txt", "a = 1\n\ntaps = many\n");
  const CliResult r = invoke({"weights", "--config", bad_value.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("'taps'"), std::string::npos) << r.err;

  std::istringstream unknown("colour = blue\n");
  RunConfig config;
  try {
    apply_config_file(unknown, "inline", config);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.key(), "colour");
  }
  std::istringstream no_eq("taps 16\n");
  EXPECT_THROW(apply_config_file(no_eq, "inline", config), ConfigError);
}

TEST(CliLiteralTest, SampleLiterals) {
  EXPECT_EQ(parse_sample_literal("127"), 127u);
  EXPECT_EQ(parse_sample_literal("0x7F"), 127u);
  EXPECT_EQ(parse_sample_literal("7h'3A"), 0x3Au);
  EXPECT_THROW(parse_sample_literal("0xZZ"), DomainError);
  EXPECT_THROW(parse_sample_literal(""), DomainError);
  EXPECT_EQ(to_hex(0x6A), "0x6A");
  EXPECT_EQ(to_hex(5), "0x05");
}

TEST(CliDeterminismTest, RepeatedRunsAreByteIdentical) {
  std::mt19937_64 rng(54);
  const std::string input = column(testing::random_stream(rng, 64, 127));
  const std::vector<std::vector<std::string>> commands = {
      {"weights"}, {"run"}, {"step"}, {"inject", "--random-spikes", "20"}, {"simulate"}};
  for (const auto& cmd : commands) {
    const CliResult a = invoke(cmd, input);
    const CliResult b = invoke(cmd, input);
    EXPECT_EQ(a.code, 0) << cmd[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd[0];
  }
}

}  // namespace
}  // namespace gdswu::cli
