#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace footrule {

/// Numeric cell formatting shared by every CSV writer: fixed decimals by
/// default, shortest round-trip representation on request.
struct NumberFormat {
  bool full_precision = false;
  int decimals = 5;

  std::string operator()(double value) const;
};

std::string format_fixed(double value, int decimals);
std::string format_shortest(double value);

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  /// One-based line number in the input.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct TwoColumnData {
  std::vector<double> x;
  std::vector<double> y;
  /// One-based source line of each row.
  std::vector<std::size_t> lines;
};

/// Comma-separated two-column real data. Blank lines are skipped; an
/// optional header row is dropped unparsed.
TwoColumnData read_two_column_csv(std::istream& in, bool has_header);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

/// Strict full-field parse (no trailing garbage, finite only).
bool parse_double(std::string_view text, double& out) noexcept;

/// Writes to `<path>.partial` and renames on commit(). If the object dies
/// uncommitted, the partial file is deleted.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace footrule
