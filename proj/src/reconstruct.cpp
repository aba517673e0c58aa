#include "shapecur/reconstruct.hpp"

#include "shapecur/currents.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace shapecur {

bool CellJumps::occupied(int cell) const {
  const Vec2& j = jump[static_cast<std::size_t>(cell)];
  const double diam = std::hypot(mesh->hx(), mesh->hy());
  return std::abs(j.x()) + std::abs(j.y()) > 1e-10 * diam;
}

CellJumps compute_jumps(const SampledCurve& curve, const StructuredMesh& mesh) {
  CellJumps out;
  out.mesh = std::make_shared<const StructuredMesh>(mesh);
  out.jump.assign(static_cast<std::size_t>(mesh.triangle_count()), Vec2::Zero());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!mesh.domain().contains(curve.points[i])) throw OutOfDomain(i, curve.points[i]);
  }
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    for (const auto& piece : clip_segment(curve.segment_start(i), curve.segment_end(i), mesh)) {
      out.jump[static_cast<std::size_t>(piece.cell)] += piece.q - piece.p;
    }
  }
  return out;
}

Segment segment_from_jumps(const std::array<Vec2, 3>& tri, const Vec2& jump, int entry_edge,
                           int exit_edge) {
  if (jump.x() == 0.0 && jump.y() == 0.0) throw InconsistentJumps("zero jump has no placement");
  if (entry_edge < 0 || entry_edge > 2 || exit_edge < 0 || exit_edge > 2 || entry_edge == exit_edge) {
    throw ConfigurationError("entry and exit must be two distinct local edges");
  }
  auto ends = [&tri](int e) {
    return std::array<Vec2, 2>{tri[static_cast<std::size_t>((e + 1) % 3)],
                               tri[static_cast<std::size_t>((e + 2) % 3)]};
  };
  const auto E = ends(entry_edge);
  const auto X = ends(exit_edge);
  // P = E0 + a (E1 - E0), Q = X0 + b (X1 - X0), Q - P = jump
  Eigen::Matrix2d A;
  A.col(0) = -(E[1] - E[0]);
  A.col(1) = X[1] - X[0];
  const Vec2 rhs = jump - X[0] + E[0];
  const Vec2 ab = A.fullPivLu().solve(rhs);
  const double tol = 1e-9;
  if (!(ab.x() >= -tol && ab.x() <= 1.0 + tol && ab.y() >= -tol && ab.y() <= 1.0 + tol)) {
    throw InconsistentJumps("jump does not fit between the given edges");
  }
  const double a = std::clamp(ab.x(), 0.0, 1.0);
  const double b = std::clamp(ab.y(), 0.0, 1.0);
  return {E[0] + a * (E[1] - E[0]), X[0] + b * (X[1] - X[0])};
}

namespace {

int shared_edge(const StructuredMesh& mesh, int cell, int other) {
  for (int e = 0; e < 3; ++e) {
    if (mesh.neighbor(cell, e) == other) return e;
  }
  throw InconsistentJumps("chain cells are not adjacent");
}

bool fits(const CellJumps& jumps, int prev, int cell, int next) {
  const auto& mesh = *jumps.mesh;
  try {
    segment_from_jumps(mesh.triangle_vertices(cell), jumps.jump[static_cast<std::size_t>(cell)],
                       shared_edge(mesh, cell, prev), shared_edge(mesh, cell, next));
    return true;
  } catch (const InconsistentJumps&) {
    return false;
  }
}

}  // namespace

std::vector<int> occupied_cells(const CellJumps& jumps) {
  const auto& mesh = *jumps.mesh;
  const int cells = mesh.triangle_count();
  std::vector<std::array<int, 2>> nb(static_cast<std::size_t>(cells), {-1, -1});
  int start = -1;
  for (int c = 0; c < cells; ++c) {
    if (!jumps.occupied(c)) continue;
    if (start < 0) start = c;
    int count = 0;
    for (int e = 0; e < 3; ++e) {
      const int n = mesh.neighbor(c, e);
      if (n < 0 || !jumps.occupied(n)) continue;
      if (count < 2) nb[static_cast<std::size_t>(c)][static_cast<std::size_t>(count)] = n;
      ++count;
    }
    if (count != 2) {
      throw NotInGeneralPosition("cell " + std::to_string(c) + " has " + std::to_string(count) +
                                 " occupied neighbors (expected 2)");
    }
  }
  if (start < 0) return {};

  std::vector<int> chain{start};
  int prev = start;
  int cur = nb[static_cast<std::size_t>(start)][1];
  while (cur != start) {
    if (chain.size() > static_cast<std::size_t>(cells)) throw NotInGeneralPosition("occupied cells do not close up");
    chain.push_back(cur);
    const auto& n = nb[static_cast<std::size_t>(cur)];
    const int nxt = n[0] == prev ? n[1] : n[0];
    prev = cur;
    cur = nxt;
  }
  if (chain.size() < 3) throw NotInGeneralPosition("chain of occupied cells is too short");

  // the direction is fixed by where the first jump fits
  const int last = chain.back();
  if (fits(jumps, last, start, chain[1])) return chain;
  if (fits(jumps, chain[1], start, last)) {
    std::reverse(chain.begin() + 1, chain.end());
    return chain;
  }
  throw InconsistentJumps("jump of cell " + std::to_string(start) + " fits neither orientation");
}

SampledCurve ReconstructedCurve::as_curve() const {
  SampledCurve c;
  c.closed = true;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    c.params.push_back(static_cast<double>(i) / static_cast<double>(n));
    c.points.push_back(points[i]);
  }
  return c;
}

ReconstructedCurve reconstruct_pc(const CellJumps& jumps) {
  ReconstructedCurve out;
  out.cells = occupied_cells(jumps);
  const std::size_t n = out.cells.size();
  if (n == 0) return out;
  const auto& mesh = *jumps.mesh;
  std::vector<Segment> segs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int cell = out.cells[k];
    const int prev = out.cells[(k + n - 1) % n];
    const int next = out.cells[(k + 1) % n];
    segs[k] = segment_from_jumps(mesh.triangle_vertices(cell), jumps.jump[static_cast<std::size_t>(cell)],
                                 shared_edge(mesh, cell, prev), shared_edge(mesh, cell, next));
  }
  out.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.points[k] = 0.5 * (segs[k].p + segs[(k + n - 1) % n].q);
  return out;
}

// ---------------------------------------------------------------------------
// 1D moment problems

double Poly1D::operator()(double x) const {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

double quadratic_correction(double g0, double gh, double I, double h) {
  if (!(h > 0.0)) throw ConfigurationError("interval width must be positive");
  return 6.0 / (h * h * h) * (I - 0.5 * h * (g0 + gh));
}

Poly1D quadratic_reconstruct(double g0, double gh, double I, double h) {
  const double a0 = quadratic_correction(g0, gh, I, h);
  // g0 + (gh - g0) x / h + a0 (h x - x^2)
  return {{g0, (gh - g0) / h + a0 * h, -a0}};
}

namespace {

// Constraint rows in the scaled variable s = x/h for coefficients d_0..d_{k-1}:
// q(0), q(1), int q dx, int x q dx.
Eigen::MatrixXd constraint_rows(int k, double h) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, k);
  A(0, 0) = 1.0;
  for (int j = 0; j < k; ++j) {
    A(1, j) = 1.0;
    A(2, j) = h / (j + 1);
    A(3, j) = h * h / (j + 2);
  }
  return A;
}

Poly1D unscale(const Eigen::VectorXd& d, double h) {
  Poly1D p;
  double hk = 1.0;
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    p.c.push_back(d[k] / hk);
    hk *= h;
  }
  return p;
}

// int_0^h a(x) b(x) dx for scaled coefficient vectors.
double product_integral(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double h) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) s += a[i] * b[j] / static_cast<double>(i + j + 1);
  }
  return h * s;
}

Eigen::VectorXd cubic_scaled(double g0, double gh, double I, double Ixy, double h) {
  if (!(h > 0.0)) throw ConfigurationError("interval width must be positive");
  const Eigen::MatrixXd A = constraint_rows(4, h);
  const Eigen::Vector4d rhs(g0, gh, I, Ixy);
  return A.fullPivLu().solve(rhs);
}

}  // namespace

Poly1D cubic_reconstruct(double g0, double gh, double I, double Ixy, double h) {
  return unscale(cubic_scaled(g0, gh, I, Ixy, h), h);
}

QuarticResult quartic_reconstruct(double g0, double gh, double I, double Ixy, double Iy2, double h) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
  c.head(4) = cubic_scaled(g0, gh, I, Ixy, h);

  // homogeneous quartic r with r(0) = r(h) = 0 and vanishing first two moments
  const Eigen::MatrixXd A = constraint_rows(5, h);
  Eigen::VectorXd r(5);
  r.head(4) = A.leftCols(4).fullPivLu().solve(-A.col(4));
  r[4] = 1.0;

  const double a = product_integral(r, r, h);
  const double b = product_integral(c, r, h);
  const double cc = product_integral(c, c, h) - Iy2;
  const double disc = b * b - a * cc;

  QuarticResult out;
  if (disc < 0.0) {
    out.fallback = true;
    out.selected = unscale(c, h);
    return out;
  }
  const double sq = std::sqrt(disc);
  const double l1 = (-b + sq) / a;
  const double l2 = (-b - sq) / a;
  out.solutions = {unscale(c + l1 * r, h), unscale(c + l2 * r, h)};
  out.selected = std::abs(l1) <= std::abs(l2) ? out.solutions[0] : out.solutions[1];
  return out;
}

std::vector<double> recover_points_from_moments(const std::vector<double>& moments, std::size_t n) {
  if (n == 0) return {};
  if (moments.size() < n) throw ConfigurationError("need at least as many moments as points");

  // Newton's identities: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += ((i % 2 == 1) ? 1.0 : -1.0) * e[k - i] * moments[i - 1];
    e[k] = s / static_cast<double>(k);
  }
  // monic p(x) = x^n + a_{n-1} x^{n-1} + ... + a_0 with a_{n-k} = (-1)^k e_k
  std::vector<double> a(n);
  for (std::size_t k = 1; k <= n; ++k) a[n - k] = ((k % 2 == 1) ? -1.0 : 1.0) * e[k];

  std::vector<double> roots;
  if (n == 1) {
    roots.push_back(-a[0]);
  } else {
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 1; i < N; ++i) C(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < N; ++i) C(i, N - 1) = -a[static_cast<std::size_t>(i)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw InconsistentMoments("companion eigenvalues did not converge");
    for (Eigen::Index i = 0; i < N; ++i) roots.push_back(es.eigenvalues()[i].real());
  }

  auto poly = [&a, n](double x, double& dp) {
    double p = 1.0;
    dp = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + a[k];
    }
    return p;
  };
  for (double& x : roots) {
    for (int it = 0; it < 5; ++it) {
      double dp = 0.0;
      const double p = poly(x, dp);
      if (dp == 0.0) break;
      const double nx = x - p / dp;
      double dq = 0.0;
      if (std::abs(poly(nx, dq)) >= std::abs(p)) break;
      x = nx;
    }
  }
  std::sort(roots.begin(), roots.end());

  for (std::size_t k = 1; k <= moments.size(); ++k) {
    double s = 0.0;
    double scale = 1.0;
    for (double x : roots) {
      const double v = std::pow(x, static_cast<double>(k));
      s += v;
      scale += std::abs(v);
    }
    scale = std::max(scale, std::abs(moments[k - 1]));
    if (std::abs(s - moments[k - 1]) > 1e-8 * scale) {
      throw InconsistentMoments("moment " + std::to_string(k) + " is not reproduced by real points");
    }
  }
  return roots;
}

}  // namespace shapecur
