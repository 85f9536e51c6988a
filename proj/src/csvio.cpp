#include "nullcone/csvio.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace nullcone {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::string header) : text_(std::move(header)) {
  text_.push_back('\n');
}

void CsvWriter::add_field(const std::string& s) {
  if (row_open_) text_.push_back(',');
  text_ += s;
  row_open_ = true;
}

void CsvWriter::add_field(double v) { add_field(format_double(v)); }

void CsvWriter::end_row() {
  text_.push_back('\n');
  row_open_ = false;
}

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text_;
}

}  // namespace nullcone
