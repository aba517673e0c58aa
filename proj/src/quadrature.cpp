#include "shapecur/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace shapecur {

std::vector<QuadPoint1D> gauss_legendre(int n) {
  if (n < 1) throw ConfigurationError("Gauss-Legendre rule needs at least one point");
  std::vector<QuadPoint1D> rule(static_cast<std::size_t>(n));
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
  }
  return rule;
}

std::vector<QuadPoint2D> triangle_rule(int degree) {
  // Duffy map (u, v) -> (u, v (1 - u)) with Jacobian (1 - u): a degree-p
  // integrand becomes degree p+1 in u and p in v.
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  const auto gu = gauss_legendre(nu);
  const auto gv = gauss_legendre(nv);
  std::vector<QuadPoint2D> rule;
  rule.reserve(gu.size() * gv.size());
  for (const auto& a : gu) {
    for (const auto& b : gv) {
      rule.push_back({Vec2(a.x, b.x * (1.0 - a.x)), a.w * b.w * (1.0 - a.x)});
    }
  }
  return rule;
}

}  // namespace shapecur
