#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdswu::cli {

/// Malformed input data; carries the 1-based row number.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t row, const std::string& what);
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct CsvOptions {
  bool header = false;     // skip the first non-empty row
  std::size_t column = 0;  // 0-based field holding the sample
  std::uint64_t max_value = ~std::uint64_t{0};  // larger samples are a DataError
};

/// Reads one non-negative decimal integer per row from the selected column.
/// Empty rows are skipped. Rows are counted from 1 including the header.
std::vector<std::uint64_t> read_samples(std::istream& in, const CsvOptions& options = {});

}  // namespace gdswu::cli
