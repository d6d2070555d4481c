#pragma once

#include "nlvar/grid.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlvar::cli {

/// Schema violations; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read-only view of one block of the config, remembering its path for
/// error messages.
class Block {
 public:
  Block(const nlohmann::json* node, std::string path);

  bool has(const std::string& key) const;
  Block child(const std::string& key) const;  // empty block if absent

  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  /// A scalar is accepted as a one-element list.
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  std::vector<std::string> texts(const std::string& key, std::vector<std::string> fallback) const;

  /// Rejects keys outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;

 private:
  const nlohmann::json* get(const std::string& key) const;
  std::string at(const std::string& key) const;

  const nlohmann::json* node_;
  std::string path_;
};

struct ExperimentConfig {
  std::string subcommand;
  nlohmann::json raw = nlohmann::json::object();  // with flag overrides applied
  std::uint64_t seed = 1;

  Block root() const { return Block(&raw, ""); }
};

/// Parses a JSON config file (or an empty config when `path` is empty) and
/// applies the flag overrides.
ExperimentConfig load_config(const std::string& subcommand, const std::string& path,
                             std::optional<double> p, std::optional<std::uint64_t> seed);
ExperimentConfig parse_config(const std::string& subcommand, const std::string& text,
                              std::optional<double> p, std::optional<std::uint64_t> seed);

/// {"dim", "n", "lengths", "lower"}; scalars broadcast over the axes.
Domain domain_from(const Block& block, int default_dim, int default_n);

}  // namespace nlvar::cli
