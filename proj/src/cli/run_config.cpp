#include "gdswu/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "gdswu/errors.hpp"

namespace gdswu::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_unsigned(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text) {
  const std::string copy(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (copy.empty() || used != copy.size() || !std::isfinite(value)) {
    throw DomainError("expected a real number, got '" + copy + "'");
  }
  return value;
}

}  // namespace

FilterOptions RunConfig::filter_options() const {
  FilterOptions o;
  o.params = {a, b};
  o.taps = taps;
  o.sample_format = sample_format();
  o.weight_format = {weight_int_bits, frac_bits};
  o.rounding = rounding;
  o.sample_points.offset = sample_offset;
  o.mode = mode;
  o.division = division;
  return o;
}

ConfigError::ConfigError(std::string source, std::size_t line, std::string key,
                         const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": key '" + key + "': " + what),
      line_(line),
      key_(std::move(key)) {}

void apply_config_file(std::istream& in, std::string_view source, RunConfig& config) {
  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"a", [&](auto v) { config.a = parse_unsigned<unsigned>(v); }},
      {"b", [&](auto v) { config.b = parse_real(v); }},
      {"taps", [&](auto v) { config.taps = parse_unsigned<std::size_t>(v); }},
      {"frac_bits", [&](auto v) { config.frac_bits = parse_unsigned<unsigned>(v); }},
      {"weight_int_bits", [&](auto v) { config.weight_int_bits = parse_unsigned<unsigned>(v); }},
      {"rounding", [&](auto v) { config.rounding = parse_rounding_mode(v); }},
      {"mode", [&](auto v) { config.mode = parse_output_mode(v); }},
      {"sample_int_bits", [&](auto v) { config.sample_int_bits = parse_unsigned<unsigned>(v); }},
      {"sample_offset", [&](auto v) { config.sample_offset = parse_real(v); }},
      {"division", [&](auto v) { config.division = parse_division_rounding(v); }},
      {"topology", [&](auto v) { config.topology = parse_pipeline_topology(v); }},
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(source), line_no, std::string(trim(body)),
                        "expected 'key = value'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view value = trim(body.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(std::string(source), line_no, key, "unknown key");
    }
    try {
      it->second(value);
    } catch (const DomainError& e) {
      throw ConfigError(std::string(source), line_no, key, e.what());
    }
  }
}

std::uint64_t parse_sample_literal(std::string_view text) {
  text = trim(text);
  std::string_view digits = text;
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    digits = text.substr(2);
    base = 16;
  } else if (const auto tick = text.find("h'"); tick != std::string_view::npos && tick > 0) {
    digits = text.substr(tick + 2);
    base = 16;
  }
  std::uint64_t value = 0;
  const auto* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, value, base);
  if (digits.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse sample value '" + std::string(text) + "'");
  }
  return value;
}

std::string to_hex(std::uint64_t value) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%02llX", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace gdswu::cli
