#pragma once

#include "shapecur/core.hpp"
#include "shapecur/curve.hpp"
#include "shapecur/femspace.hpp"

#include <string>
#include <vector>

namespace shapecur {

enum class QuadratureRule { Midpoint, Simpson };

QuadratureRule parse_rule(const std::string& name);
std::string rule_name(QuadratureRule rule);

/// Discrete current: fx_i = [phi](w_i dx), fy_i = [phi](w_i dy).
struct CurrentVector {
  SpaceDescriptor space;
  Vector fx;
  Vector fy;

  std::size_t size() const { return static_cast<std::size_t>(fx.size()); }
  /// Pairing with the form sum_i (ax_i w_i dx + ay_i w_i dy).
  double apply(const Vector& ax, const Vector& ay) const { return fx.dot(ax) + fy.dot(ay); }
};

CurrentVector operator-(const CurrentVector& a, const CurrentVector& b);
CurrentVector operator+(const CurrentVector& a, const CurrentVector& b);
CurrentVector operator*(double c, const CurrentVector& a);

/// Current of the sampled curve against every basis 1-form of `space`.
///
/// Midpoint: the curve is the polyline through the samples, and each clipped
/// piece [p,q] contributes w(mid) (q - p).
/// Simpson: consecutive sample triples are joined by quadratic arcs (the
/// last segment stays straight when the segment count is odd), and each
/// clipped piece of an arc gets Simpson's rule in the arc parameter.
///
/// Throws OutOfDomain naming the first offending sample.
CurrentVector evaluate_current(const SampledCurve& curve, const FormSpace& space,
                               QuadratureRule rule = QuadratureRule::Midpoint);

struct ClippedPiece {
  int cell;
  Vec2 p;
  Vec2 q;
};

/// Splits [p,q] at every mesh edge it crosses. Pieces are ordered from p to
/// q and each lies in the closed triangle `cell`; a piece running along an
/// edge goes to the cell on its left/below.
std::vector<ClippedPiece> clip_segment(const Vec2& p, const Vec2& q, const StructuredMesh& mesh);

/// Breakpoints in [0,1] (sorted, including both ends) where the quadratic arc
/// a + b t + c t^2 crosses a mesh line.
std::vector<double> clip_arc(const Vec2& a, const Vec2& b, const Vec2& c, const StructuredMesh& mesh);

/// Derivative of the current map at the curve in direction X (one vector per
/// sample, linear along segments), paired with the form
/// alpha = sum_i (ax_i w_i dx + ay_i w_i dy):
///   integral of (d_x alpha_2 - d_y alpha_1)(X_1 dy - X_2 dx)
/// by the midpoint rule on clipped pieces.
double directional_derivative(const SampledCurve& curve, const std::vector<Vec2>& X,
                              const Vector& ax, const Vector& ay, const FormSpace& space);

/// Sum of segment lengths.
double arclength_functional(const SampledCurve& curve);

}  // namespace shapecur
