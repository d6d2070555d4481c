#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace nlvar::cli {

struct Assertion {
  std::string name;
  bool passed = false;
  double slack = 0.0;          // >= 0 when the asserted inequality holds
  bool convergence = false;    // failure means a solver did not converge
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Two-column plot data.
struct Curve {
  std::string name;
  std::string abscissa;
  std::string value;
  std::vector<std::pair<double, double>> points;
};

struct Report {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<Assertion> assertions;
  std::vector<Table> tables;
  std::vector<Curve> curves;
  nlohmann::json summary = nlohmann::json::object();
  double wall_clock = 0.0;

  void assert_that(std::string name, double slack, bool convergence = false);
  void assert_that(std::string name, bool passed, double slack, bool convergence = false);
  /// 0 pass, 3 if a convergence assertion failed, else 2.
  int exit_code() const;
  const Assertion* first_failure() const;
};

/// Reals are written with 17 significant digits.
std::string format_real(double x);
std::string to_json(const Report& r);
std::string to_csv(const Table& t);
std::string to_csv(const Curve& c);

/// Writes report.json or one CSV per table into `dir`, plus one CSV per curve.
/// Returns the paths written.
std::vector<std::string> write_report(const Report& r, const std::string& dir, const std::string& format);

}  // namespace nlvar::cli
