#pragma once

#include "nlvar/grid.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace nlvar {

/// a(x,y) = 1/|B| for y in B = B_radius(center), independent of x.
struct BallAverage {
  Point center{};
  double radius = 0.0;
};

/// a(x,y) = alpha(x) + alpha(y), alpha = k on the bottom strip of height 1/k.
struct Strip {
  int k = 1;
};

struct DenseEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
};

/// Arbitrary nonnegative weights on interior node pairs, stored sparsely.
struct Dense {
  std::vector<DenseEntry> entries;
};

/// Parses "i,j,weight" rows; a non-numeric first row is a header and '#'
/// starts a comment line.
std::vector<DenseEntry> read_weight_triples(std::istream& in);

/// Discretized nonlocal weight a(x_i, x_j). Construction validates the
/// variant against the domain and precomputes the node data the energy
/// evaluation needs.
class Kernel {
 public:
  using Variant = std::variant<BallAverage, Strip, Dense>;

  /// Ball membership is by node centre; |B| is the node count times h^d so
  /// the average weights of every x sum to exactly one. Refuses balls with
  /// fewer than 5 nodes across a diameter or not contained in the domain.
  static Kernel ball_average(const Domain& domain, const Point& center, double radius);
  /// 2D only. Node weights alpha are cell-averaged so that sum alpha w = 1.
  static Kernel strip(const Domain& domain, int k);
  /// Entries are sorted by (i, j); duplicates are summed.
  static Kernel dense(const Domain& domain, std::vector<DenseEntry> entries);
  /// CSV rows "i,j,weight" (0-based interior node indices). A non-numeric
  /// first row is treated as a header; '#' starts a comment line.
  static Kernel dense_from_csv(const Domain& domain, std::istream& in);
  static Kernel dense_from_csv(const Domain& domain, const std::string& path);

  const Domain& domain() const noexcept { return domain_; }
  const Variant& variant() const noexcept { return variant_; }
  std::string name() const;

  // BallAverage data.
  const std::vector<std::size_t>& ball_nodes() const noexcept { return ball_nodes_; }
  double ball_measure() const noexcept { return ball_measure_; }

  // Strip data: alpha at interior nodes and the alpha-mass (sum alpha w)
  // carried by the boundary nodes.
  const std::vector<double>& strip_alpha() const noexcept { return strip_alpha_; }
  double strip_boundary_mass() const noexcept { return strip_boundary_mass_; }
  /// Interior nodes with alpha > 0.
  const std::vector<std::size_t>& strip_support() const noexcept { return strip_support_; }

 private:
  Kernel(Domain domain, Variant v) : domain_(std::move(domain)), variant_(std::move(v)) {}

  Domain domain_;
  Variant variant_;
  std::vector<std::size_t> ball_nodes_;
  double ball_measure_ = 0.0;
  std::vector<double> strip_alpha_;
  std::vector<std::size_t> strip_support_;
  double strip_boundary_mass_ = 0.0;
};

/// Discrete L1 norm sum_{x,y} a(x,y) w_x w_y.
double mass(const Kernel& kernel);

/// Discrete mass of a over (Omega x Omega) \ (K x K). K must lie strictly
/// inside the domain.
double concentration_defect(const Kernel& kernel, const Box& compact);

/// Index of a kernel family: radii shrinking to 0 or strip indices growing.
class SequenceSchedule {
 public:
  enum class Direction { ToZero, ToInfinity };

  SequenceSchedule(Direction direction, std::vector<double> values);
  static SequenceSchedule radii(std::vector<double> eps) {
    return SequenceSchedule(Direction::ToZero, std::move(eps));
  }
  static SequenceSchedule indices(std::vector<double> k) {
    return SequenceSchedule(Direction::ToInfinity, std::move(k));
  }

  Direction direction() const noexcept { return direction_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_.at(i); }

 private:
  Direction direction_;
  std::vector<double> values_;
};

}  // namespace nlvar
