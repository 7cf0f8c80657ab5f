#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef POLYFOCK_TEST_DATA_DIR
#define POLYFOCK_TEST_DATA_DIR "tests/data"
#endif

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(POLYFOCK_TEST_DATA_DIR) / name;
}

/// Rows of a numeric CSV, header skipped.
inline std::vector<std::vector<double>> read_rows(const std::string& name) {
  std::ifstream in(data_path(name));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("polyfock_test_" + name);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace testing
