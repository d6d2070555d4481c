#include "cli/commands.hpp"
#include "nlvar/error.hpp"
#include "nlvar/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

constexpr int kConfigError = 4;

int report_and_exit(const nlvar::cli::Report& r, const std::string& out, const std::string& format) {
  using namespace nlvar::cli;
  if (out.empty()) {
    if (format == "json") {
      std::cout << to_json(r);
    } else {
      for (const auto& t : r.tables) std::cout << "# " << t.name << "\n" << to_csv(t);
    }
  } else {
    for (const auto& path : write_report(r, out, format)) std::cerr << "wrote " << path << "\n";
  }
  for (const auto& a : r.assertions) {
    std::cerr << (a.passed ? "PASS " : "FAIL ") << a.name << " (slack " << format_real(a.slack) << ")\n";
  }
  if (const Assertion* f = r.first_failure()) std::cerr << "first failing assertion: " << f->name << "\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal variational energies: experiments and checks"};
  app.set_version_flag("--version", nlvar::version);
  app.require_subcommand(1);

  std::string config_path, out, format = "json";
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--p", p, "exponent p");
  for (const auto& name : nlvar::cli::subcommands()) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = nlvar::cli::load_config(sub, config_path, p, seed);
    return report_and_exit(nlvar::cli::run(cfg), out, format);
  } catch (const nlvar::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlvar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case nlvar::ErrorKind::InvalidInput:
      case nlvar::ErrorKind::ShapeMismatch:
      case nlvar::ErrorKind::Refusal:
      case nlvar::ErrorKind::Config:
        return kConfigError;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
