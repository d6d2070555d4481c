#include "report.hpp"

#include "config.hpp"
#include "nlvar/version.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlvar::cli {

using nlohmann::json;

void Report::assert_that(std::string name, double slack, bool convergence) {
  assert_that(std::move(name), slack >= 0.0, slack, convergence);
}

void Report::assert_that(std::string name, bool passed, double slack, bool convergence) {
  assertions.push_back({std::move(name), passed, slack, convergence});
}

const Assertion* Report::first_failure() const {
  for (const auto& a : assertions) {
    if (!a.passed) return &a;
  }
  return nullptr;
}

int Report::exit_code() const {
  for (const auto& a : assertions) {
    if (!a.passed && a.convergence) return 3;
  }
  return first_failure() ? 2 : 0;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// nlohmann's number output is shortest round-trip; reports want fixed 17 digits.
void emit(std::ostringstream& out, const json& v, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [k, x] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(k).dump() << ": ";
        emit(out, x, indent, depth + 1);
      }
      out << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      bool flat = true;
      for (const auto& x : v) flat = flat && !x.is_structured();
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          emit(out, v[i], indent, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        emit(out, v[i], indent, depth + 1);
      }
      out << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      out << (std::isfinite(x) ? format_real(x) : json(format_real(x)).dump());
      return;
    }
    default:
      out << v.dump();
  }
}

json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  return std::get<std::string>(c);
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_real(*d);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::string to_json(const Report& r) {
  json j = json::object();
  j["subcommand"] = r.subcommand;
  j["version"] = nlvar::version;
  j["seed"] = r.seed;
  j["config"] = r.config;
  j["assertions"] = json::array();
  for (const auto& a : r.assertions) {
    j["assertions"].push_back({{"name", a.name}, {"passed", a.passed}, {"slack", a.slack}});
  }
  j["summary"] = r.summary;
  j["tables"] = json::array();
  for (const auto& t : r.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json jr = json::array();
      for (const auto& c : row) jr.push_back(cell_json(c));
      rows.push_back(std::move(jr));
    }
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["wall_clock"] = r.wall_clock;
  std::ostringstream out;
  emit(out, j, 2, 0);
  out << "\n";
  return out.str();
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string to_csv(const Curve& c) {
  std::ostringstream out;
  out << c.abscissa << "," << c.value << "\n";
  for (const auto& [x, y] : c.points) out << format_real(x) << "," << format_real(y) << "\n";
  return out.str();
}

std::vector<std::string> write_report(const Report& r, const std::string& dir, const std::string& format) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    const fs::path p = fs::path(dir) / name;
    write_file(p, text);
    written.push_back(p.string());
  };
  if (format == "json") {
    put("report.json", to_json(r));
  } else {
    for (const auto& t : r.tables) put(t.name + ".csv", to_csv(t));
  }
  for (const auto& c : r.curves) put("curve_" + c.name + ".csv", to_csv(c));
  return written;
}

}  // namespace nlvar::cli
