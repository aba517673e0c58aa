#pragma once

#include "shapecur/core.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace shapecur {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Uniform triangulation of a rectangle: M x M squares, each split along the
/// diagonal from its lower-left to its upper-right corner.
///
/// Cell numbering: square (i, j) (column i, row j) owns cells 2(jM+i) and
/// 2(jM+i)+1. Type 0 is the lower-right triangle (v00, v10, v11), type 1 the
/// upper-left triangle (v00, v11, v01). Both are counterclockwise.
class StructuredMesh {
 public:
  StructuredMesh(int cells_per_side, Rect domain);

  int cells_per_side() const { return m_; }
  const Rect& domain() const { return domain_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  int vertex_count() const { return (m_ + 1) * (m_ + 1); }
  int triangle_count() const { return 2 * m_ * m_; }

  Vec2 vertex(int i, int j) const;
  /// Integer lattice coordinates (i, j) of the three vertices of `cell`.
  std::array<std::array<int, 2>, 3> triangle_lattice(int cell) const;
  std::array<Vec2, 3> triangle_vertices(int cell) const;
  double triangle_area(int cell) const;
  Vec2 centroid(int cell) const;

  /// Cell containing p. Points on a shared edge go to the cell whose
  /// centroid lies to the left/below (the lower triangle on a diagonal).
  /// Throws OutOfDomain (index 0) when p lies outside the rectangle.
  int locate(const Vec2& p) const;

  /// Local edge k is opposite local vertex k. Returns the neighboring cell
  /// across that edge, or -1 on the boundary.
  int neighbor(int cell, int edge) const;
  /// Endpoints of local edge k.
  std::array<Vec2, 2> edge(int cell, int edge) const;

  /// Barycentric coordinates of p with respect to `cell` (may be outside
  /// [0,1] if p is not in the cell).
  std::array<double, 3> barycentric(int cell, const Vec2& p) const;
  /// Gradients of the barycentric coordinates of `cell`.
  std::array<Vec2, 3> barycentric_gradients(int cell) const;

 private:
  int m_;
  Rect domain_;
  double hx_;
  double hy_;
};

StructuredMesh build_mesh(int cells_per_side, Rect domain = {});

enum class SpaceKind { Lagrange, Monomial };

/// Serializable identity of a form space.
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::Lagrange;
  int mesh = 10;      // cells per side (Lagrange)
  int degree = 1;     // polynomial degree (Lagrange)
  int max_total = 10; // monomials x^m y^n with m + n < max_total (Monomial)
  Rect domain{};

  bool operator==(const SpaceDescriptor&) const = default;
  std::string to_json() const;
  static SpaceDescriptor from_json(const std::string& text);
};

/// Basis values (and optionally gradients) of the functions supported on a
/// cell at one point.
struct BasisEval {
  std::vector<int> dofs;
  std::vector<double> values;
  std::vector<double> dx;
  std::vector<double> dy;
};

/// The scalar test-function space W. A 1-form basis element is w_i dx or
/// w_i dy; both components share the scalar basis.
class FormSpace {
 public:
  static FormSpace lagrange(int cells_per_side, int degree, Rect domain = {});
  static FormSpace monomial(int max_total_degree, Rect domain = {});
  static FormSpace from_descriptor(const SpaceDescriptor& d);

  const SpaceDescriptor& descriptor() const { return desc_; }
  SpaceKind kind() const { return desc_.kind; }
  const Rect& domain() const { return desc_.domain; }
  std::size_t dof_count() const { return dof_count_; }
  /// Lagrange: mesh cells. Monomial: a single cell covering the domain.
  int cell_count() const;
  const StructuredMesh& mesh() const;
  int degree() const;

  /// Cell containing p (0 for monomial spaces). Throws OutOfDomain.
  int locate(const Vec2& p) const;
  void evaluate(int cell, const Vec2& p, BasisEval& out, bool with_gradients = false) const;

  /// Dofs supported on a cell, in local order.
  std::span<const int> cell_dofs(int cell) const;
  /// Nodal position of a Lagrange dof.
  Vec2 dof_coordinate(std::size_t dof) const;
  /// Exponents (m, n) of a monomial dof.
  std::array<int, 2> monomial_exponents(std::size_t dof) const;

  /// Coefficients of the nodal interpolant of f. Lagrange spaces only.
  template <class F>
  Vector interpolate(F&& f) const {
    Vector c(static_cast<Eigen::Index>(dof_count_));
    for (std::size_t i = 0; i < dof_count_; ++i) c[static_cast<Eigen::Index>(i)] = f(dof_coordinate(i));
    return c;
  }

  /// Evaluates sum_i coeffs_i w_i at p.
  double evaluate_field(const Vector& coeffs, const Vec2& p) const;

 private:
  FormSpace() = default;

  SpaceDescriptor desc_{};
  std::shared_ptr<const StructuredMesh> mesh_;
  std::size_t dof_count_ = 0;
  int local_count_ = 0;
  std::vector<int> cell_dofs_;                    // cell-major
  std::vector<std::array<int, 3>> local_indices_; // barycentric multi-indices
  std::vector<std::array<int, 2>> exponents_;     // monomial exponents
};

FormSpace build_space(const SpaceDescriptor& d);

/// Scaled Lagrange polynomial P_m(l) = prod_{k<m} (d l - k)/(k+1) and its
/// derivative, the 1D factor of the equispaced Lagrange basis on a simplex.
double lagrange_factor(int m, int degree, double l);
double lagrange_factor_derivative(int m, int degree, double l);

/// The H^1_sigma Gram operator G = Mass + sigma^2 Stiffness of one scalar
/// component, with a cached sparse Cholesky factor. Cheap to copy; copies
/// share the factorization.
class GramOperator {
 public:
  const SparseMatrix& matrix() const;
  const SparseMatrix& mass() const;
  const SparseMatrix& stiffness() const;
  double sigma() const;
  const SpaceDescriptor& space() const;
  std::size_t size() const;

  Vector apply(const Vector& x) const;
  /// G^{-1} rhs.
  Vector solve(const Vector& rhs) const;
  /// G^{-s} rhs by s successive solves.
  Vector solve_power(const Vector& rhs, int s) const;
  /// L^{-1} P rhs where P G P^T = L L^T; |result|^2 = rhs^T G^{-1} rhs.
  Vector half_solve(const Vector& rhs) const;
  /// L^T P u; |result|^2 = u^T G u.
  Vector root(const Vector& u) const;

  Vector apply_mass(const Vector& x) const;
  /// R u with R^T R = Mass; |result|^2 = u^T Mass u.
  Vector mass_root(const Vector& u) const;

  /// (G^{-1} Mass)^{s-1} G^{-1} rhs: the order-s representer, where each
  /// further solve takes the previous representer as a field.
  Vector representer_solve(const Vector& rhs, int s) const;

  struct Impl;
  explicit GramOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Assembles and factorizes G = M + sigma^2 S. Throws AssemblyFailure when
/// the factorization detects a non-SPD matrix.
GramOperator assemble_gram(const FormSpace& space, double sigma);

/// Builds an operator around a given SPD matrix (mass = matrix, stiffness = 0).
GramOperator gram_from_matrix(const SparseMatrix& g, const SpaceDescriptor& space, double sigma = 0.0);

/// Coordinate-format dump `row col value` (1-based, lower triangle included).
std::string to_coordinate_text(const SparseMatrix& m);

}  // namespace shapecur
