#pragma once

#include "shapecur/currents.hpp"
#include "shapecur/femspace.hpp"

#include <vector>

namespace shapecur {

/// Default length scale 1/sqrt(10).
inline const double kDefaultSigma = 0.31622776601683794;

/// Coefficients of the Riesz representer beta = bx dx + by dy.
struct Representer {
  Vector bx;
  Vector by;
  int s = 1;
  double sigma = 0.0;
};

/// Order-s representer. For s = 1 this solves G b = f. Each further order
/// solves G b_{k+1} = Mass b_k, i.e. the previous representer is fed back as
/// a field, which keeps the norm independent of the mesh.
Representer representer(const CurrentVector& f, const GramOperator& G, int s);

/// ||f||_{-s} = sqrt(fx . bx + fy . by).
double dual_norm(const CurrentVector& f, const GramOperator& G, int s);

double distance(const CurrentVector& a, const CurrentVector& b, const GramOperator& G, int s);

/// Euclidean coordinates (whitened dx block followed by the dy block) whose
/// squared length is the squared dual norm.
Vector whiten(const CurrentVector& f, const GramOperator& G, int s);

/// 1D kernels: K_1(x) = e^{-|x|}/2, K_2(x) = e^{-|x|}(1+|x|)/4.
double kernel_1d(int s, double x);

/// sqrt(2 (K_s(0) - K_s(eps/sigma))): distance per unit length between two
/// parallel lines at separation eps, with length measured in units of sigma.
double line_distance_per_unit_length(int s, double eps, double sigma);

/// Modified Bessel function K_0 for x > 0.
double bessel_k0(double x);

/// K_0(r/sigma) / (2 pi sigma^2).
double greens_function_2d(double r, double sigma);

/// Representer field (beta_x, beta_y) at each point.
std::vector<Vec2> representer_field_eval(const Representer& rep, const FormSpace& space,
                                         const std::vector<Vec2>& points);

/// Richardson extrapolation from values on meshes h and h/2 with known order.
double richardson(double coarse, double fine, double order);

}  // namespace shapecur
