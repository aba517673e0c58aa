#include "shapecur/metric.hpp"

#include <cmath>
#include <numbers>

namespace shapecur {

namespace {

void check_space(const CurrentVector& f, const GramOperator& G) {
  if (!(f.space == G.space()) || f.size() != G.size()) {
    throw ConfigurationError("current and Gram operator live on different form spaces");
  }
}

void check_order(int s) {
  if (s < 1) throw ConfigurationError("Sobolev order must be at least 1");
}

}  // namespace

Representer representer(const CurrentVector& f, const GramOperator& G, int s) {
  check_space(f, G);
  check_order(s);
  return {G.representer_solve(f.fx, s), G.representer_solve(f.fy, s), s, G.sigma()};
}

double dual_norm(const CurrentVector& f, const GramOperator& G, int s) {
  const Representer b = representer(f, G, s);
  const double sq = f.fx.dot(b.bx) + f.fy.dot(b.by);
  return std::sqrt(std::max(sq, 0.0));
}

double distance(const CurrentVector& a, const CurrentVector& b, const GramOperator& G, int s) {
  return dual_norm(a - b, G, s);
}

namespace {

// With A = G^{-1}: the squared norm f^T (A Mass)^{s-1} A f equals u^T Mass u
// for s = 2k, u = (A Mass)^{k-1} A f, and u^T G u for s = 2k+1, u = (A Mass)^k A f.
Vector whiten_component(const Vector& f, const GramOperator& G, int s) {
  if (s == 1) return G.half_solve(f);
  if (s % 2 == 0) return G.mass_root(G.representer_solve(f, s / 2));
  return G.root(G.representer_solve(f, (s + 1) / 2));
}

}  // namespace

Vector whiten(const CurrentVector& f, const GramOperator& G, int s) {
  check_space(f, G);
  check_order(s);
  const auto n = static_cast<Eigen::Index>(f.size());
  Vector w(2 * n);
  w.head(n) = whiten_component(f.fx, G, s);
  w.tail(n) = whiten_component(f.fy, G, s);
  return w;
}

double kernel_1d(int s, double x) {
  const double a = std::abs(x);
  if (s == 1) return 0.5 * std::exp(-a);
  if (s == 2) return 0.25 * std::exp(-a) * (1.0 + a);
  throw ConfigurationError("1D kernel available for s = 1, 2 only");
}

double line_distance_per_unit_length(int s, double eps, double sigma) {
  if (!(sigma > 0.0)) throw ConfigurationError("sigma must be positive");
  return std::sqrt(2.0 * (kernel_1d(s, 0.0) - kernel_1d(s, eps / sigma)));
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw ConfigurationError("K0 needs a positive argument");
  if (x <= 2.0) {
    // K0 = -(ln(x/2) + gamma) I0 + sum (x^2/4)^k / (k!)^2 H_k
    const double q = 0.25 * x * x;
    double term = 1.0;
    double i0 = 1.0;
    double tail = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k < 40; ++k) {
      term *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      i0 += term;
      tail += term * harmonic;
      if (term < 1e-18 * i0) break;
    }
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
  }
  // K0(x) = int_0^inf exp(-x cosh t) dt; the trapezoidal rule converges
  // geometrically for this analytic, rapidly decaying integrand.
  const double h = 0.05;
  double sum = 0.5 * std::exp(-x);
  for (int k = 1;; ++k) {
    const double v = std::exp(-x * std::cosh(k * h));
    sum += v;
    if (v < 1e-18 * sum) break;
  }
  return h * sum;
}

double greens_function_2d(double r, double sigma) {
  if (!(r > 0.0)) throw ConfigurationError("Green's function needs r > 0");
  if (!(sigma > 0.0)) throw ConfigurationError("sigma must be positive");
  return bessel_k0(r / sigma) / (2.0 * std::numbers::pi * sigma * sigma);
}

std::vector<Vec2> representer_field_eval(const Representer& rep, const FormSpace& space,
                                         const std::vector<Vec2>& points) {
  const auto n = static_cast<Eigen::Index>(space.dof_count());
  if (rep.bx.size() != n || rep.by.size() != n) throw ConfigurationError("representer has wrong size");
  std::vector<Vec2> out;
  out.reserve(points.size());
  BasisEval e;
  for (std::size_t i = 0; i < points.size(); ++i) {
    int cell = 0;
    try {
      cell = space.locate(points[i]);
    } catch (const OutOfDomain&) {
      throw OutOfDomain(i, points[i]);
    }
    space.evaluate(cell, points[i], e);
    Vec2 v = Vec2::Zero();
    for (std::size_t k = 0; k < e.dofs.size(); ++k) {
      v.x() += rep.bx[e.dofs[k]] * e.values[k];
      v.y() += rep.by[e.dofs[k]] * e.values[k];
    }
    out.push_back(v);
  }
  return out;
}

double richardson(double coarse, double fine, double order) {
  return fine + (fine - coarse) / (std::pow(2.0, order) - 1.0);
}

}  // namespace shapecur
