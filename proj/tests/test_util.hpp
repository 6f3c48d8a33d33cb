#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wearopt/csv.hpp"

namespace testutil {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(WEAROPT_FIXTURES_DIR) / rel;
}

inline wearopt::FailureHistory example1_history() { return wearopt::load_history(fixture("example1/history.csv")); }
inline wearopt::FailureHistory example2_history() { return wearopt::load_history(fixture("example2/history.csv")); }

inline wearopt::RateTable example1_rates() {
  return wearopt::load_rate_table(fixture("example1/rate_a.csv"), fixture("example1/rate_b.csv"));
}
inline wearopt::RateTable example2_rates() {
  return wearopt::load_rate_table(fixture("example2/rate_a.csv"), fixture("example2/rate_b.csv"));
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// Scratch directory unique per test run, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("wearopt_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace testutil
