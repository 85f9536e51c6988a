#pragma once

#include <string>

namespace nullcone {

// Shortest decimal string that round-trips the binary64 value.
std::string format_double(double v);

// A tiny deterministic CSV writer: caller supplies full rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::string header);
  void add_field(const std::string& s);
  void add_field(double v);
  void end_row();
  const std::string& text() const { return text_; }
  void write_file(const std::string& path) const;

 private:
  std::string text_;
  bool row_open_ = false;
};

}  // namespace nullcone
