#pragma once

#include <string>
#include <vector>

namespace pvcast {

// Minimal CSV support for the plain numeric tables this project exchanges.
// No quoting or embedded separators; fields are split on ','.
std::vector<std::string> split_csv_line(const std::string& line);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace pvcast
