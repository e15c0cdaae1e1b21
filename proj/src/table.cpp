#include "pshardy/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace pshardy {

void ConvergenceTable::add_row(double parameter, double value, double reference,
                               double abs_error, bool converged) {
  rows.push_back(TableRow{parameter, value, reference, abs_error, converged});
}

void ConvergenceTable::note(const std::string& key, const std::string& val) {
  summary.emplace_back(key, val);
}

void ConvergenceTable::note(const std::string& key, double val) {
  summary.emplace_back(key, format_double(val));
}

bool ConvergenceTable::values_nondecreasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].value < rows[i - 1].value - slack) return false;
  return true;
}

bool ConvergenceTable::values_nonincreasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].value > rows[i - 1].value + slack) return false;
  return true;
}

bool ConvergenceTable::errors_nonincreasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].abs_error > rows[i - 1].abs_error + slack) return false;
  return true;
}

bool ConvergenceTable::all_converged() const {
  for (const auto& row : rows)
    if (!row.converged) return false;
  return true;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

std::string ConvergenceTable::to_csv() const {
  std::string out = "parameter,value,reference,abs_error,converged\n";
  for (const auto& row : rows) {
    out += format_double(row.parameter);
    out += ',';
    out += format_double(row.value);
    out += ',';
    out += format_double(row.reference);
    out += ',';
    out += format_double(row.abs_error);
    out += ',';
    out += row.converged ? '1' : '0';
    out += '\n';
  }
  out += "# experiment = " + experiment + "\n";
  for (const auto& [key, val] : summary) out += "# " + key + " = " + val + "\n";
  return out;
}

std::string ConvergenceTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["experiment"] = experiment;
  doc["columns"] = {"parameter", "value", "reference", "abs_error", "converged"};
  auto& out_rows = doc["rows"];
  out_rows = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    out_rows.push_back({row.parameter, row.value, row.reference, row.abs_error,
                        row.converged});
  }
  auto& sum = doc["summary"];
  sum = nlohmann::ordered_json::object();
  for (const auto& [key, val] : summary) sum[key] = val;
  return doc.dump(2) + "\n";
}

ConvergenceTable ConvergenceTable::from_json(const std::string& text) {
  const auto doc = nlohmann::ordered_json::parse(text);
  ConvergenceTable table;
  table.experiment = doc.at("experiment").get<std::string>();
  for (const auto& row : doc.at("rows")) {
    if (row.size() != 5)
      throw std::runtime_error("table row must have exactly five entries");
    table.add_row(row[0].get<double>(), row[1].get<double>(),
                  row[2].get<double>(), row[3].get<double>(),
                  row[4].get<bool>());
  }
  if (doc.contains("summary"))
    for (const auto& [key, val] : doc.at("summary").items())
      table.note(key, val.get<std::string>());
  return table;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " onto " + path);
}

}  // namespace pshardy
