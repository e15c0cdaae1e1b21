#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pshardy {

struct TableRow {
  double parameter = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

// Experiment output: fixed five-column rows plus ordered summary lines
// (pass/fail verdicts, headline values). Serialization is deterministic so
// identical runs produce byte-identical files.
struct ConvergenceTable {
  std::string experiment;
  std::vector<TableRow> rows;
  std::vector<std::pair<std::string, std::string>> summary;

  void add_row(double parameter, double value, double reference,
               double abs_error, bool converged = true);
  void note(const std::string& key, const std::string& val);
  void note(const std::string& key, double val);

  bool values_nondecreasing(double slack = 0.0) const;
  bool values_nonincreasing(double slack = 0.0) const;
  bool errors_nonincreasing(double slack = 0.0) const;
  bool all_converged() const;

  std::string to_csv() const;
  std::string to_json() const;
  static ConvergenceTable from_json(const std::string& text);
};

// shortest exact decimal form of x, stable across runs
std::string format_double(double x);

// write via temp file + rename so readers never observe a partial table
void write_atomic(const std::string& path, const std::string& content);

}  // namespace pshardy
