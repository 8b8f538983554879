#include "lmgsim/cli/format.hpp"

#include <charconv>
#include <system_error>

#include "lmgsim/error.hpp"

namespace lmgsim::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error(ErrorCode::IoError, "number formatting failed");
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()), header_(std::move(header)) {}

CsvWriter& CsvWriter::row() {
  if (!rows_.empty() && rows_.back().size() != columns_) throw Error(ErrorCode::IoError, "CSV row has the wrong number of cells");
  rows_.emplace_back();
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (rows_.empty()) row();
  rows_.back().push_back(s);
  return *this;
}

std::string CsvWriter::str() const {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.size() != columns_) throw Error(ErrorCode::IoError, "CSV row has the wrong number of cells");
    line(r);
  }
  return out;
}

}  // namespace lmgsim::cli
