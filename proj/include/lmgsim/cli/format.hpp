#pragma once

#include <string>
#include <vector>

namespace lmgsim::cli {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double v);

/// Comma-separated table with '\n' line endings and no quoting (all cells are
/// identifiers or numbers).
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& row();
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& s);

  std::string str() const;

 private:
  std::size_t columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> header_;
};

}  // namespace lmgsim::cli
