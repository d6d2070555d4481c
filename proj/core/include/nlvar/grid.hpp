#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlvar {

using Point = std::array<double, 3>;
using Index3 = std::array<int, 3>;

/// Closed axis-aligned sub-box [lower, upper] (unused axes ignored).
struct Box {
  Point lower{};
  Point upper{};

  bool contains(const Point& x, int dim) const noexcept {
    for (int a = 0; a < dim; ++a) {
      if (x[a] < lower[a] || x[a] > upper[a]) return false;
    }
    return true;
  }
};

/// Axis-aligned box with a uniform grid of interior nodes. Values on the
/// boundary nodes are identically zero (zero trace), so only interior nodes
/// carry degrees of freedom.
class Domain {
 public:
  Domain(int dim, std::span<const double> lengths, std::span<const int> nodes,
         std::span<const double> lower = {});

  /// (0,1)^dim with n interior nodes per axis.
  static Domain unit_box(int dim, int n);
  /// (-half, half)^dim with n interior nodes per axis.
  static Domain centered_box(int dim, double half, int n);

  int dim() const noexcept { return dim_; }
  double length(int axis) const { return lengths_.at(axis); }
  double lower(int axis) const { return lower_.at(axis); }
  double upper(int axis) const { return lower_.at(axis) + lengths_.at(axis); }
  int nodes(int axis) const { return n_.at(axis); }
  double spacing(int axis) const { return h_.at(axis); }
  double min_spacing() const noexcept;

  /// Number of interior nodes.
  std::size_t size() const noexcept { return size_; }
  double measure() const noexcept;
  double cell_volume() const noexcept;
  Point center() const noexcept;

  /// Per-axis 1-based multi-index of interior node `i` (0 on unused axes).
  Index3 multi_index(std::size_t i) const noexcept;
  std::size_t linear_index(const Index3& idx) const noexcept;
  /// Coordinates of the node with 1-based multi-index (0..n+1 allowed).
  Point coordinate(const Index3& idx) const noexcept;
  Point coordinate(std::size_t i) const noexcept { return coordinate(multi_index(i)); }

  bool contains(const Point& x) const noexcept;  // open box
  /// True if the closed box lies strictly inside the open domain.
  bool contains(const Box& box) const noexcept;
  bool operator==(const Domain& other) const noexcept;

 private:
  int dim_;
  std::array<double, 3> lengths_{};
  std::array<double, 3> lower_{};
  std::array<int, 3> n_{};
  std::array<double, 3> h_{};
  std::array<std::size_t, 3> stride_{};
  std::size_t size_ = 0;
};

/// Trapezoidal quadrature on the full grid. Interior nodes weigh h^d; the
/// boundary nodes all carry the value 0 and are folded into a single atom.
struct Quadrature {
  double node_weight = 0.0;
  std::size_t nodes = 0;
  double boundary_weight = 0.0;

  static Quadrature of(const Domain& domain) noexcept;
  double total() const noexcept;
};

/// Real values on the interior nodes of a domain; zero on the boundary.
class GridFunction {
 public:
  explicit GridFunction(Domain domain);  // zero function
  GridFunction(Domain domain, std::vector<double> values);

  /// Samples f at interior nodes.
  static GridFunction sample(const Domain& domain,
                             const std::function<double(const Point&)>& f);
  /// Samples f on the full grid and refuses if f does not vanish on the
  /// boundary nodes (the sample would not have zero trace).
  static GridFunction sample_with_trace(const Domain& domain,
                                        const std::function<double(const Point&)>& f,
                                        double trace_tolerance = 1e-12);

  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s) noexcept;

  /// Throws InvalidInput if any value is not finite.
  void validate() const;

 private:
  Domain domain_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

void require_same_domain(const GridFunction& a, const GridFunction& b);

/// sum_i w_i f(u_i) over the quadrature, boundary atom included (f(0)).
double integrate(const GridFunction& u, const std::function<double(double)>& f);

/// sum over cells of h^d |grad_h u|^p with forward differences per cell.
double discrete_gradient_energy(const GridFunction& u, double p);

/// Same energy for raw values; if `grad` is non-empty it receives dE/du.
double gradient_energy(const Domain& domain, std::span<const double> u, double p,
                       std::span<double> grad = {});

/// Positive approximation of the Hessian diagonal of the gradient energy;
/// |grad u|^{p-2} is regularised on nearly flat cells.
void gradient_energy_diagonal(const Domain& domain, std::span<const double> u, double p,
                              std::span<double> diag);

/// max(values U {0}) - min(values U {0}).
double oscillation(const GridFunction& u);

/// Node-wise Psi(u). Psi must be 1-Lipschitz with Psi(0) = 0; Psi(0) is
/// checked exactly and the Lipschitz bound is spot-checked on pairs of
/// sampled values of u.
GridFunction lipschitz_truncate(const GridFunction& u,
                                const std::function<double(double)>& psi);

/// The truncation operator (m ^ t) v (-m).
std::function<double(double)> clamp_map(double m);

}  // namespace nlvar
