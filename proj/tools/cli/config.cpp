#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nlvar::cli {

using nlohmann::json;

Block::Block(const json* node, std::string path) : node_(node), path_(std::move(path)) {
  if (node_ && !node_->is_object()) throw ConfigError((path_.empty() ? "<root>" : path_) + ": expected a block");
}

std::string Block::at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

const json* Block::get(const std::string& key) const {
  if (!node_) return nullptr;
  auto it = node_->find(key);
  return it == node_->end() || it->is_null() ? nullptr : &*it;
}

bool Block::has(const std::string& key) const { return get(key) != nullptr; }

Block Block::child(const std::string& key) const { return Block(get(key), at(key)); }

double Block::number(const std::string& key, double fallback) const {
  const json* v = get(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(at(key) + ": expected a number");
  return v->get<double>();
}

int Block::integer(const std::string& key, int fallback) const {
  const json* v = get(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(at(key) + ": expected an integer");
  return v->get<int>();
}

std::string Block::text(const std::string& key, const std::string& fallback) const {
  const json* v = get(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(at(key) + ": expected a string");
  return v->get<std::string>();
}

std::vector<double> Block::numbers(const std::string& key, std::vector<double> fallback) const {
  const json* v = get(key);
  if (!v) return fallback;
  if (v->is_number()) return {v->get<double>()};
  if (!v->is_array()) throw ConfigError(at(key) + ": expected a number or a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]: expected a number");
    out.push_back((*v)[i].get<double>());
  }
  if (out.empty()) throw ConfigError(at(key) + ": empty list");
  return out;
}

std::vector<std::string> Block::texts(const std::string& key, std::vector<std::string> fallback) const {
  const json* v = get(key);
  if (!v) return fallback;
  if (v->is_string()) return {v->get<std::string>()};
  if (!v->is_array()) throw ConfigError(at(key) + ": expected a string or a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_string()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]: expected a string");
    out.push_back((*v)[i].get<std::string>());
  }
  return out;
}

void Block::only(std::initializer_list<const char*> allowed) const {
  if (!node_) return;
  for (const auto& [key, value] : node_->items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(at(key) + ": unknown field");
  }
}

ExperimentConfig parse_config(const std::string& subcommand, const std::string& text,
                              std::optional<double> p, std::optional<std::uint64_t> seed) {
  ExperimentConfig c;
  c.subcommand = subcommand;
  if (!text.empty()) {
    try {
      c.raw = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("<root>: not valid JSON: ") + e.what());
    }
    if (!c.raw.is_object()) throw ConfigError("<root>: expected a block");
  }
  if (p) c.raw["p"] = *p;
  if (seed) c.raw["seed"] = *seed;
  if (c.raw.contains("seed")) {
    const json& s = c.raw["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed: expected a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  } else {
    c.raw["seed"] = c.seed;
  }
  return c;
}

ExperimentConfig load_config(const std::string& subcommand, const std::string& path,
                             std::optional<double> p, std::optional<std::uint64_t> seed) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot read config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config(subcommand, text, p, seed);
}

Domain domain_from(const Block& block, int default_dim, int default_n) {
  block.only({"dim", "n", "lengths", "lower"});
  const int dim = block.integer("dim", default_dim);
  if (dim < 1 || dim > 3) throw ConfigError("domain.dim: must be 1, 2 or 3");
  auto spread = [&](const char* key, std::vector<double> v) {
    if (v.size() == 1) v.assign(dim, v[0]);
    if (static_cast<int>(v.size()) != dim) {
      throw ConfigError(std::string("domain.") + key + ": needs 1 or " + std::to_string(dim) + " entries");
    }
    return v;
  };
  const auto n = spread("n", block.numbers("n", {static_cast<double>(default_n)}));
  const auto lengths = spread("lengths", block.numbers("lengths", {1.0}));
  const auto lower = spread("lower", block.numbers("lower", {0.0}));
  std::vector<int> nodes;
  for (double x : n) {
    if (x != std::floor(x) || x < 1) throw ConfigError("domain.n: node counts must be positive integers");
    nodes.push_back(static_cast<int>(x));
  }
  for (double l : lengths) {
    if (!(l > 0.0)) throw ConfigError("domain.lengths: must be positive");
  }
  return Domain(dim, lengths, nodes, lower);
}

}  // namespace nlvar::cli
