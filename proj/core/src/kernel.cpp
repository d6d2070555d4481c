#include "nlvar/kernel.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nlvar {

Kernel Kernel::ball_average(const Domain& domain, const Point& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorKind::InvalidInput, "ball radius must be positive");
  }
  const int d = domain.dim();
  for (int a = 0; a < d; ++a) {
    // at least 5 nodes across a diameter: 2 radius >= 4 h on every axis
    if (2.0 * radius < 4.0 * domain.spacing(a) * (1.0 - 1e-12)) {
      fail(ErrorKind::Refusal, "ball of radius " + std::to_string(radius) +
                                   " is not resolved by the grid (need >= 5 nodes across)");
    }
    if (!(center[a] - radius > domain.lower(a) && center[a] + radius < domain.upper(a))) {
      fail(ErrorKind::Refusal, "ball is not contained in the domain");
    }
  }
  Kernel k(domain, BallAverage{center, radius});
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Point x = domain.coordinate(i);
    double dist2 = 0.0;
    for (int a = 0; a < d; ++a) dist2 += (x[a] - center[a]) * (x[a] - center[a]);
    if (dist2 <= r2) k.ball_nodes_.push_back(i);
  }
  k.ball_measure_ = static_cast<double>(k.ball_nodes_.size()) * domain.cell_volume();
  return k;
}

Kernel Kernel::strip(const Domain& domain, int k) {
  if (domain.dim() != 2) fail(ErrorKind::InvalidInput, "strip kernel is defined in 2D only");
  if (k < 1) fail(ErrorKind::InvalidInput, "strip index k must be a positive integer");
  const double height = 1.0 / k;
  if (!(height < domain.length(1))) {
    fail(ErrorKind::InvalidInput, "strip of height 1/k must fit inside the domain");
  }
  Kernel ker(domain, Strip{k});
  const double h1 = domain.spacing(1);
  const double lo = domain.lower(1);
  ker.strip_alpha_.assign(domain.size(), 0.0);
  CompensatedSum interior_mass;
  const double w = domain.cell_volume();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const double y = domain.coordinate(i)[1];
    const double a = std::max(y - 0.5 * h1, lo);
    const double b = std::min(y + 0.5 * h1, lo + height);
    const double overlap = std::max(0.0, b - a);
    if (overlap > 0.0) {
      ker.strip_alpha_[i] = k * overlap / h1;
      ker.strip_support_.push_back(i);
      interior_mass.add(ker.strip_alpha_[i] * w);
    }
  }
  // Full trapezoidal alpha-mass is k * height * width = width.
  ker.strip_boundary_mass_ = domain.length(0) - interior_mass.value();
  return ker;
}

Kernel Kernel::dense(const Domain& domain, std::vector<DenseEntry> entries) {
  for (const auto& e : entries) {
    if (e.i >= domain.size() || e.j >= domain.size()) {
      fail(ErrorKind::InvalidInput, "dense kernel entry refers to a node outside the domain");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      fail(ErrorKind::InvalidInput, "dense kernel weights must be finite and nonnegative");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const DenseEntry& a, const DenseEntry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<DenseEntry> merged;
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  return Kernel(domain, Dense{std::move(merged)});
}

std::vector<DenseEntry> read_weight_triples(std::istream& in) {
  std::vector<DenseEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    long long i = -1;
    long long j = -1;
    double w = 0.0;
    if (!(row >> i >> j >> w)) {
      if (out.empty() && lineno == 1) continue;  // header
      fail(ErrorKind::InvalidInput, "malformed triple on line " + std::to_string(lineno));
    }
    if (i < 0 || j < 0) fail(ErrorKind::InvalidInput, "negative index on line " + std::to_string(lineno));
    out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
  }
  return out;
}

Kernel Kernel::dense_from_csv(const Domain& domain, std::istream& in) {
  return dense(domain, read_weight_triples(in));
}

Kernel Kernel::dense_from_csv(const Domain& domain, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open kernel file " + path);
  return dense_from_csv(domain, in);
}

std::string Kernel::name() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallAverage>) {
          return "ball-average(eps=" + std::to_string(v.radius) + ")";
        } else if constexpr (std::is_same_v<T, Strip>) {
          return "strip(k=" + std::to_string(v.k) + ")";
        } else {
          return "dense(" + std::to_string(v.entries.size()) + " entries)";
        }
      },
      variant_);
}

double mass(const Kernel& kernel) {
  const Domain& dom = kernel.domain();
  const Quadrature q = Quadrature::of(dom);
  const double w = q.node_weight;
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallAverage>) {
          // sum_x w_x * sum_{y in B} (1/|B|) w_y
          CompensatedSum inner;
          const double a = 1.0 / kernel.ball_measure();
          for (std::size_t n = 0; n < kernel.ball_nodes().size(); ++n) inner.add(a * w);
          return q.total() * inner.value();
        } else if constexpr (std::is_same_v<T, Strip>) {
          CompensatedSum am;
          for (std::size_t i : kernel.strip_support()) am.add(kernel.strip_alpha()[i] * w);
          am.add(kernel.strip_boundary_mass());
          return 2.0 * q.total() * am.value();
        } else {
          CompensatedSum s;
          for (const auto& e : v.entries) s.add(e.weight * w * w);
          return s.value();
        }
      },
      kernel.variant());
}

double concentration_defect(const Kernel& kernel, const Box& compact) {
  const Domain& dom = kernel.domain();
  if (!dom.contains(compact)) {
    fail(ErrorKind::InvalidInput, "compact set K must lie inside the domain");
  }
  const int d = dom.dim();
  const double w = dom.cell_volume();
  std::vector<char> in_k(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) in_k[i] = compact.contains(dom.coordinate(i), d);

  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        const double total = mass(kernel);
        if constexpr (std::is_same_v<T, BallAverage>) {
          CompensatedSum wk;
          for (std::size_t i = 0; i < dom.size(); ++i) {
            if (in_k[i]) wk.add(w);
          }
          CompensatedSum bk;
          const double a = 1.0 / kernel.ball_measure();
          for (std::size_t j : kernel.ball_nodes()) {
            if (in_k[j]) bk.add(a * w);
          }
          return std::max(0.0, total - wk.value() * bk.value());
        } else if constexpr (std::is_same_v<T, Strip>) {
          CompensatedSum wk;
          CompensatedSum ak;
          for (std::size_t i = 0; i < dom.size(); ++i) {
            if (in_k[i]) {
              wk.add(w);
              ak.add(kernel.strip_alpha()[i] * w);
            }
          }
          return std::max(0.0, total - 2.0 * wk.value() * ak.value());
        } else {
          CompensatedSum s;
          for (const auto& e : v.entries) {
            if (!(in_k[e.i] && in_k[e.j])) s.add(e.weight * w * w);
          }
          return s.value();
        }
      },
      kernel.variant());
}

SequenceSchedule::SequenceSchedule(Direction direction, std::vector<double> values)
    : direction_(direction), values_(std::move(values)) {
  if (values_.empty()) fail(ErrorKind::InvalidInput, "schedule must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      fail(ErrorKind::InvalidInput, "schedule values must be positive");
    }
    if (i > 0) {
      const bool ok = direction_ == Direction::ToZero ? values_[i] < values_[i - 1]
                                                      : values_[i] > values_[i - 1];
      if (!ok) fail(ErrorKind::InvalidInput, "schedule must be strictly monotone");
    }
  }
}

}  // namespace nlvar
