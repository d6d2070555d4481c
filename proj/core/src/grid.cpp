#include "nlvar/grid.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlvar {

Domain::Domain(int dim, std::span<const double> lengths, std::span<const int> nodes,
               std::span<const double> lower)
    : dim_(dim) {
  if (dim < 1 || dim > 3) fail(ErrorKind::InvalidInput, "dimension must be 1, 2 or 3");
  if (lengths.size() != static_cast<std::size_t>(dim) ||
      nodes.size() != static_cast<std::size_t>(dim)) {
    fail(ErrorKind::InvalidInput, "lengths and node counts must have one entry per axis");
  }
  if (!lower.empty() && lower.size() != static_cast<std::size_t>(dim)) {
    fail(ErrorKind::InvalidInput, "lower corner must have one entry per axis");
  }
  size_ = 1;
  for (int a = 0; a < dim; ++a) {
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) {
      fail(ErrorKind::InvalidInput, "axis lengths must be positive and finite");
    }
    if (nodes[a] < 1) fail(ErrorKind::InvalidInput, "need at least one interior node per axis");
    lengths_[a] = lengths[a];
    lower_[a] = lower.empty() ? 0.0 : lower[a];
    n_[a] = nodes[a];
    h_[a] = lengths[a] / (nodes[a] + 1);
    stride_[a] = size_;
    size_ *= static_cast<std::size_t>(nodes[a]);
  }
}

Domain Domain::unit_box(int dim, int n) {
  const std::array<double, 3> len{1.0, 1.0, 1.0};
  const std::array<int, 3> nn{n, n, n};
  return Domain(dim, std::span(len.data(), dim), std::span(nn.data(), dim));
}

Domain Domain::centered_box(int dim, double half, int n) {
  const std::array<double, 3> len{2 * half, 2 * half, 2 * half};
  const std::array<double, 3> lo{-half, -half, -half};
  const std::array<int, 3> nn{n, n, n};
  return Domain(dim, std::span(len.data(), dim), std::span(nn.data(), dim),
                std::span(lo.data(), dim));
}

double Domain::min_spacing() const noexcept {
  double h = h_[0];
  for (int a = 1; a < dim_; ++a) h = std::min(h, h_[a]);
  return h;
}

double Domain::measure() const noexcept {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) m *= lengths_[a];
  return m;
}

double Domain::cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= h_[a];
  return v;
}

Point Domain::center() const noexcept {
  Point c{};
  for (int a = 0; a < dim_; ++a) c[a] = lower_[a] + 0.5 * lengths_[a];
  return c;
}

Index3 Domain::multi_index(std::size_t i) const noexcept {
  Index3 idx{};
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>(i % static_cast<std::size_t>(n_[a])) + 1;
    i /= static_cast<std::size_t>(n_[a]);
  }
  return idx;
}

std::size_t Domain::linear_index(const Index3& idx) const noexcept {
  std::size_t i = 0;
  for (int a = 0; a < dim_; ++a) i += static_cast<std::size_t>(idx[a] - 1) * stride_[a];
  return i;
}

Point Domain::coordinate(const Index3& idx) const noexcept {
  Point x{};
  for (int a = 0; a < dim_; ++a) x[a] = lower_[a] + idx[a] * h_[a];
  return x;
}

bool Domain::contains(const Point& x) const noexcept {
  for (int a = 0; a < dim_; ++a) {
    if (!(x[a] > lower_[a] && x[a] < lower_[a] + lengths_[a])) return false;
  }
  return true;
}

bool Domain::contains(const Box& box) const noexcept {
  for (int a = 0; a < dim_; ++a) {
    if (!(box.lower[a] <= box.upper[a])) return false;
    if (!(box.lower[a] > lower_[a] && box.upper[a] < lower_[a] + lengths_[a])) return false;
  }
  return true;
}

bool Domain::operator==(const Domain& o) const noexcept {
  return dim_ == o.dim_ && lengths_ == o.lengths_ && lower_ == o.lower_ && n_ == o.n_;
}

Quadrature Quadrature::of(const Domain& domain) noexcept {
  Quadrature q;
  q.node_weight = domain.cell_volume();
  q.nodes = domain.size();
  // Trapezoidal weights of the boundary nodes sum to |Omega| - N h^d; with a
  // product rule that remainder is exactly prod (n+1)h - prod n h.
  double full = 1.0;
  double inner = 1.0;
  for (int a = 0; a < domain.dim(); ++a) {
    full *= (domain.nodes(a) + 1) * domain.spacing(a);
    inner *= domain.nodes(a) * domain.spacing(a);
  }
  q.boundary_weight = full - inner;
  return q;
}

double Quadrature::total() const noexcept {
  return static_cast<double>(nodes) * node_weight + boundary_weight;
}

GridFunction::GridFunction(Domain domain)
    : domain_(std::move(domain)), values_(domain_.size(), 0.0) {}

GridFunction::GridFunction(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    fail(ErrorKind::ShapeMismatch, "grid function has " + std::to_string(values_.size()) +
                                       " values but the domain has " +
                                       std::to_string(domain_.size()) + " interior nodes");
  }
  validate();
}

GridFunction GridFunction::sample(const Domain& domain,
                                  const std::function<double(const Point&)>& f) {
  std::vector<double> v(domain.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(domain.coordinate(i));
  return GridFunction(domain, std::move(v));
}

GridFunction GridFunction::sample_with_trace(const Domain& domain,
                                             const std::function<double(const Point&)>& f,
                                             double trace_tolerance) {
  GridFunction u = sample(domain, f);
  // Walk the boundary of the extended (n+2)^d lattice.
  const int d = domain.dim();
  Index3 ext{1, 1, 1};
  for (int a = 0; a < d; ++a) ext[a] = domain.nodes(a) + 2;
  Index3 idx{0, 0, 0};
  for (;;) {
    bool on_boundary = false;
    for (int a = 0; a < d; ++a) {
      if (idx[a] == 0 || idx[a] == ext[a] - 1) on_boundary = true;
    }
    if (on_boundary) {
      const double v = f(domain.coordinate(idx));
      if (!(std::abs(v) <= trace_tolerance)) {
        fail(ErrorKind::ContractViolation,
             "sampled function does not vanish on the boundary (value " + std::to_string(v) +
                 "); zero trace is required");
      }
    }
    int a = 0;
    while (a < d && ++idx[a] == ext[a]) idx[a++] = 0;
    if (a == d) break;
  }
  return u;
}

void GridFunction::validate() const {
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "grid function has non-finite values");
  }
}

void require_same_domain(const GridFunction& a, const GridFunction& b) {
  if (!(a.domain() == b.domain())) {
    fail(ErrorKind::ShapeMismatch, "grid functions live on different domains");
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_domain(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_domain(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

double integrate(const GridFunction& u, const std::function<double(double)>& f) {
  const Quadrature q = Quadrature::of(u.domain());
  CompensatedSum s;
  for (double v : u.values()) s.add(q.node_weight * f(v));
  s.add(q.boundary_weight * f(0.0));
  return s.value();
}

namespace {

// Cells are indexed by their lower corner c in {0..n}^d of the extended
// lattice; the forward difference along axis k uses nodes c and c + e_k.
template <int D>
double gradient_energy_impl(const Domain& dom, std::span<const double> u, const AbsPower& pw,
                            std::span<double> grad) {
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> inv_h{0, 0, 0};
  std::array<std::ptrdiff_t, 3> stride{0, 0, 0};
  std::ptrdiff_t s = 1;
  for (int a = 0; a < D; ++a) {
    n[a] = dom.nodes(a);
    inv_h[a] = 1.0 / dom.spacing(a);
    stride[a] = s;
    s *= n[a];
  }
  const double vol = dom.cell_volume();
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);

  CompensatedSum total;
  std::array<int, 3> c{0, 0, 0};
  for (;;) {
    // Value at c and its forward neighbours; out-of-range means boundary (0).
    bool c_inside = true;
    std::ptrdiff_t lin = 0;
    for (int a = 0; a < D; ++a) {
      if (c[a] < 1 || c[a] > n[a]) c_inside = false;
      lin += (c[a] - 1) * stride[a];
    }
    const double uc = c_inside ? u[lin] : 0.0;
    std::array<double, 3> g{0, 0, 0};
    std::array<bool, 3> nb_inside{false, false, false};
    double r2 = 0.0;
    for (int k = 0; k < D; ++k) {
      bool inside = true;
      for (int a = 0; a < D; ++a) {
        const int ca = c[a] + (a == k ? 1 : 0);
        if (ca < 1 || ca > n[a]) inside = false;
      }
      nb_inside[k] = inside;
      const double un = inside ? u[lin + stride[k]] : 0.0;
      g[k] = (un - uc) * inv_h[k];
      r2 += g[k] * g[k];
    }
    if (r2 > 0.0) {
      total.add(vol * pw.of_squared(r2));
      if (want_grad) {
        const double f = vol * pw.gradient_factor_of_squared(r2);
        for (int k = 0; k < D; ++k) {
          const double comp = f * g[k] * inv_h[k];
          if (nb_inside[k]) grad[lin + stride[k]] += comp;
          if (c_inside) grad[lin] -= comp;
        }
      }
    }
    int a = 0;
    while (a < D && ++c[a] > n[a]) c[a++] = 0;
    if (a == D) break;
  }
  return total.value();
}

template <int D>
void gradient_diagonal_impl(const Domain& dom, std::span<const double> u, double p,
                            std::span<double> diag) {
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> inv_h{0, 0, 0};
  std::array<std::ptrdiff_t, 3> stride{0, 0, 0};
  std::ptrdiff_t s = 1;
  for (int a = 0; a < D; ++a) {
    n[a] = dom.nodes(a);
    inv_h[a] = 1.0 / dom.spacing(a);
    stride[a] = s;
    s *= n[a];
  }
  const double vol = dom.cell_volume();
  std::fill(diag.begin(), diag.end(), 0.0);

  // Two passes: the first finds the largest cell gradient, which sets the
  // regularisation of |g|^{p-2} near flat cells (1e-12 of the largest squared gradient).
  double floor2 = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    std::array<int, 3> c{0, 0, 0};
    for (;;) {
      bool c_inside = true;
      std::ptrdiff_t lin = 0;
      for (int a = 0; a < D; ++a) {
        if (c[a] < 1 || c[a] > n[a]) c_inside = false;
        lin += (c[a] - 1) * stride[a];
      }
      const double uc = c_inside ? u[lin] : 0.0;
      std::array<double, 3> g{0, 0, 0};
      std::array<bool, 3> nb_inside{false, false, false};
      double r2 = 0.0;
      for (int k = 0; k < D; ++k) {
        bool inside = true;
        for (int a = 0; a < D; ++a) {
          const int ca = c[a] + (a == k ? 1 : 0);
          if (ca < 1 || ca > n[a]) inside = false;
        }
        nb_inside[k] = inside;
        const double un = inside ? u[lin + stride[k]] : 0.0;
        g[k] = (un - uc) * inv_h[k];
        r2 += g[k] * g[k];
      }
      if (pass == 0) {
        floor2 = std::max(floor2, r2);
      } else {
        const double re2 = r2 + floor2;
        const double f = vol * p * std::pow(re2, 0.5 * p - 1.0);
        double gv = 0.0;
        double hh = 0.0;
        for (int k = 0; k < D; ++k) {
          gv -= g[k] * inv_h[k];
          hh += inv_h[k] * inv_h[k];
          if (nb_inside[k]) {
            const double gk = g[k] * inv_h[k];
            diag[lin + stride[k]] += f * (inv_h[k] * inv_h[k] + (p - 2.0) * gk * gk / re2);
          }
        }
        if (c_inside) diag[lin] += f * (hh + (p - 2.0) * gv * gv / re2);
      }
      int a = 0;
      while (a < D && ++c[a] > n[a]) c[a++] = 0;
      if (a == D) break;
    }
    if (pass == 0) floor2 = floor2 > 0.0 ? 1e-12 * floor2 : 1.0;
  }
}

}  // namespace

void gradient_energy_diagonal(const Domain& domain, std::span<const double> u, double p,
                              std::span<double> diag) {
  if (u.size() != domain.size() || diag.size() != domain.size()) {
    fail(ErrorKind::ShapeMismatch, "value vector does not match the domain");
  }
  switch (domain.dim()) {
    case 1: return gradient_diagonal_impl<1>(domain, u, p, diag);
    case 2: return gradient_diagonal_impl<2>(domain, u, p, diag);
    default: return gradient_diagonal_impl<3>(domain, u, p, diag);
  }
}

double gradient_energy(const Domain& domain, std::span<const double> u, double p,
                       std::span<double> grad) {
  if (u.size() != domain.size() || (!grad.empty() && grad.size() != domain.size())) {
    fail(ErrorKind::ShapeMismatch, "value vector does not match the domain");
  }
  const AbsPower pw(p);
  switch (domain.dim()) {
    case 1: return gradient_energy_impl<1>(domain, u, pw, grad);
    case 2: return gradient_energy_impl<2>(domain, u, pw, grad);
    default: return gradient_energy_impl<3>(domain, u, pw, grad);
  }
}

double discrete_gradient_energy(const GridFunction& u, double p) {
  u.validate();
  return gradient_energy(u.domain(), u.values(), p);
}

double oscillation(const GridFunction& u) {
  u.validate();
  double lo = 0.0;
  double hi = 0.0;
  for (double v : u.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

GridFunction lipschitz_truncate(const GridFunction& u, const std::function<double(double)>& psi) {
  u.validate();
  if (psi(0.0) != 0.0) {
    fail(ErrorKind::ContractViolation, "truncation map must satisfy Psi(0) = 0");
  }
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = psi(u[i]);

  // Spot check: consecutive nodes and each node against 0.
  const double slack = 1e-12;
  auto violates = [&](double a, double b, double pa, double pb) {
    return std::abs(pa - pb) > std::abs(a - b) * (1.0 + slack) + slack;
  };
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (violates(u[i], 0.0, out[i], 0.0) ||
        (i + 1 < u.size() && violates(u[i], u[i + 1], out[i], out[i + 1]))) {
      fail(ErrorKind::ContractViolation, "truncation map is not 1-Lipschitz on sampled values");
    }
  }
  return GridFunction(u.domain(), std::move(out));
}

std::function<double(double)> clamp_map(double m) {
  return [m](double t) { return std::max(-m, std::min(m, t)); };
}

}  // namespace nlvar
