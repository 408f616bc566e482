#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gdswu/filter.hpp"
#include "gdswu/systolic_model.hpp"

namespace gdswu::cli {

/// Settings shared by every subcommand. Defaults reproduce the 16-tap,
/// a=1, b=10 unit.
struct RunConfig {
  unsigned a = 1;
  double b = 10.0;
  std::size_t taps = 16;
  unsigned frac_bits = 7;
  unsigned weight_int_bits = 1;
  RoundingMode rounding = RoundingMode::half_up;
  OutputMode mode = OutputMode::normalized_average;
  unsigned sample_int_bits = 7;
  double sample_offset = 0.0;
  DivisionRounding division = DivisionRounding::floor;
  PipelineTopology topology = PipelineTopology::adder_tree;

  FilterOptions filter_options() const;
  QFormat sample_format() const { return {sample_int_bits, 0}; }
};

/// Bad config file contents. The message names the key and line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::size_t line, std::string key, const std::string& what);

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

/// Applies `key = value` lines onto `config`. Blank lines and lines starting
/// with '#' are ignored. Throws ConfigError on unknown keys or bad values.
void apply_config_file(std::istream& in, std::string_view source, RunConfig& config);

/// Parses a sample literal: decimal, 0x-prefixed hex, or width-tagged hex
/// such as 7h'7F.
std::uint64_t parse_sample_literal(std::string_view text);

/// "0x7F"-style rendering, at least two hex digits.
std::string to_hex(std::uint64_t value);

}  // namespace gdswu::cli
