#pragma once

#include "shapecur/core.hpp"
#include "shapecur/curve.hpp"
#include "shapecur/femspace.hpp"

#include <array>
#include <memory>
#include <vector>

namespace shapecur {

/// Currents of a curve against the piecewise-constant 1-forms: per triangle,
/// the net displacement (dx, dy) of the curve inside it.
struct CellJumps {
  std::shared_ptr<const StructuredMesh> mesh;
  std::vector<Vec2> jump;

  /// |dx| + |dy| above 1e-10 times the cell diameter.
  bool occupied(int cell) const;
};

CellJumps compute_jumps(const SampledCurve& curve, const StructuredMesh& mesh);

/// The occupied triangles as a cycle of edge-adjacent cells, starting from
/// the lowest cell id and following the curve's orientation. Empty input
/// gives an empty chain. Throws NotInGeneralPosition when some occupied cell
/// does not have exactly two occupied neighbors.
std::vector<int> occupied_cells(const CellJumps& jumps);

struct Segment {
  Vec2 p;
  Vec2 q;
};

/// Places the vector `jump` inside the triangle with its tail on local edge
/// `entry_edge` and its head on `exit_edge` (edge k is opposite vertex k).
/// Throws InconsistentJumps when no placement fits within 1e-9.
Segment segment_from_jumps(const std::array<Vec2, 3>& triangle, const Vec2& jump, int entry_edge,
                           int exit_edge);

struct ReconstructedCurve {
  std::vector<int> cells;    // chain of triangles
  std::vector<Vec2> points;  // crossing point at the entry edge of each cell

  SampledCurve as_curve() const;
};

/// Piecewise-linear reconstruction from piecewise-constant currents.
ReconstructedCurve reconstruct_pc(const CellJumps& jumps);

/// Polynomial on [0,h] in monomial coefficients c_0 + c_1 x + ...
struct Poly1D {
  std::vector<double> c;
  double operator()(double x) const;
};

/// a0 such that g0 (h-x)/h + gh x/h + a0 x (h-x) has integral I over [0,h].
double quadratic_correction(double g0, double gh, double I, double h);

/// The quadratic above as a polynomial.
Poly1D quadratic_reconstruct(double g0, double gh, double I, double h);

/// The cubic with the given end values, integral I and first moment
/// Ixy = int x g dx.
Poly1D cubic_reconstruct(double g0, double gh, double I, double Ixy, double h);

struct QuarticResult {
  Poly1D selected;
  std::vector<Poly1D> solutions;  // real solutions (0 or 2)
  bool fallback = false;          // no real solution: `selected` is the cubic
};

/// Quartics matching end values, I, Ixy and Iy2 = int g^2 dx. The selected
/// solution is the one closer to the cubic reconstruction.
QuarticResult quartic_reconstruct(double g0, double gh, double I, double Ixy, double Iy2, double h);

/// Points x_1..x_n from power sums m_k = sum_j x_j^k, k = 1..d (d >= n),
/// sorted ascending. Throws InconsistentMoments when the roots are not real
/// or the recovered points do not reproduce every given moment.
std::vector<double> recover_points_from_moments(const std::vector<double>& moments, std::size_t n);

}  // namespace shapecur
