#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dvl::report {

inline constexpr const char* kToolVersion = "0.1.0";

// Tabular result of one experiment run. Rows and parameters are emitted in
// insertion order; CSV numbers use fixed 17-significant-digit formatting so
// identical runs are byte-identical.
struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // metadata (JSON sidecar only)
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t prime_limit = 0;
  int threads = 1;
  std::string kernel;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::string> notes;

  void param(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, value);
  }
  void param(const std::string& key, double value);
  void param(const std::string& key, std::uint64_t value);
  void add_row(std::vector<double> row);

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

std::string format_g17(double v);

void write_csv(const ExperimentReport& r, std::ostream& os);
void write_json_sidecar(const ExperimentReport& r, std::ostream& os);

}  // namespace dvl::report
