#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlion::csv {

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split(std::string_view line);

// Joins fields, quoting those that need it.
std::string join(const std::vector<std::string>& fields);

std::string trim(std::string_view s);

// Parses a whole field as a finite double; nullopt otherwise. Empty -> nullopt.
std::optional<double> parse_double(std::string_view s);

// 12 significant digits; NaN renders as an empty field.
std::string format_number(double v);

// Line reader that tracks 1-based line numbers and skips blank lines and
// '#'-prefixed comment lines.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input.
  std::optional<std::vector<std::string>> next();
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace mlion::csv
