#pragma once

#include "shapecur/core.hpp"

#include <vector>

namespace shapecur {

struct QuadPoint1D {
  double x;
  double w;
};

/// n-point Gauss-Legendre rule on [0,1]; exact for degree 2n-1.
std::vector<QuadPoint1D> gauss_legendre(int n);

struct QuadPoint2D {
  Vec2 x;  // barycentric-free reference coordinates (xi, eta)
  double w;
};

/// Collapsed Gauss rule on the reference triangle {xi, eta >= 0, xi + eta <= 1}
/// exact for polynomials of total degree <= `degree`. Weights sum to 1/2.
std::vector<QuadPoint2D> triangle_rule(int degree);

}  // namespace shapecur
