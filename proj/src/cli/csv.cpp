#include "gdswu/cli/csv.hpp"

#include <charconv>
#include <string_view>

namespace gdswu::cli {

DataError::DataError(std::size_t row, const std::string& what)
    : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}

std::vector<std::uint64_t> read_samples(std::istream& in, const CsvOptions& options) {
  std::vector<std::uint64_t> samples;
  std::string line;
  std::size_t row = 0;
  bool header_pending = options.header;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    std::string_view rest = line;
    std::string_view field;
    for (std::size_t c = 0;; ++c) {
      const auto comma = rest.find(',');
      field = rest.substr(0, comma);
      if (c == options.column) break;
      if (comma == std::string_view::npos) {
        throw DataError(row, "missing column " + std::to_string(options.column));
      }
      rest.remove_prefix(comma + 1);
    }
    const auto first = field.find_first_not_of(" \t\"");
    const auto last = field.find_last_not_of(" \t\"");
    field = first == std::string_view::npos ? std::string_view{}
                                            : field.substr(first, last - first + 1);

    std::uint64_t value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
      throw DataError(row, "expected a non-negative integer, got '" + std::string(field) + "'");
    }
    if (value > options.max_value) {
      throw DataError(row, "sample " + std::to_string(value) + " exceeds the sample format maximum " +
                               std::to_string(options.max_value));
    }
    samples.push_back(value);
  }
  return samples;
}

}  // namespace gdswu::cli
