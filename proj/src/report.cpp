#include "dvl/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace dvl::report {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ExperimentReport::param(const std::string& key, double value) {
  parameters.emplace_back(key, format_g17(value));
}

void ExperimentReport::param(const std::string& key, std::uint64_t value) {
  parameters.emplace_back(key, std::to_string(value));
}

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("ExperimentReport: row width mismatch");
  rows.push_back(std::move(row));
}

std::size_t ExperimentReport::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::invalid_argument("ExperimentReport: no column named " + name);
}

std::vector<double> ExperimentReport::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

void write_csv(const ExperimentReport& r, std::ostream& os) {
  for (std::size_t j = 0; j < r.columns.size(); ++j)
    os << (j ? "," : "") << r.columns[j];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << format_g17(row[j]);
    os << '\n';
  }
}

void write_json_sidecar(const ExperimentReport& r, std::ostream& os) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["tool_version"] = kToolVersion;
  nlohmann::ordered_json params;
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["prime_limit"] = r.prime_limit;
  j["seed"] = r.seed;
  j["threads"] = r.threads;
  j["kernel"] = r.kernel;
  j["wall_time_s"] = r.wall_time_s;
  nlohmann::ordered_json tol;
  for (const auto& [k, v] : r.tolerances) tol[k] = v;
  j["tolerances"] = tol;
  j["notes"] = r.notes;
  j["row_count"] = r.rows.size();
  j["columns"] = r.columns;
  os << j.dump(2) << '\n';
}

}  // namespace dvl::report
