#include "shapecur/currents.hpp"

#include <algorithm>
#include <cmath>

namespace shapecur {

QuadratureRule parse_rule(const std::string& name) {
  if (name == "midpoint") return QuadratureRule::Midpoint;
  if (name == "simpson") return QuadratureRule::Simpson;
  throw ConfigurationError("unknown quadrature rule '" + name + "' (expected midpoint|simpson)");
}

std::string rule_name(QuadratureRule rule) {
  return rule == QuadratureRule::Midpoint ? "midpoint" : "simpson";
}

namespace {

void require_same_space(const CurrentVector& a, const CurrentVector& b) {
  if (!(a.space == b.space) || a.fx.size() != b.fx.size()) {
    throw ConfigurationError("currents live on different form spaces");
  }
}

void check_inside(const SampledCurve& curve, const Rect& domain) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!domain.contains(curve.points[i])) throw OutOfDomain(i, curve.points[i]);
  }
}

// Lattice coordinates of a point.
struct Lattice {
  double x0, y0, hx, hy;
  explicit Lattice(const StructuredMesh& m)
      : x0(m.domain().x0), y0(m.domain().y0), hx(m.hx()), hy(m.hy()) {}
  double u(const Vec2& p) const { return (p.x() - x0) / hx; }
  double v(const Vec2& p) const { return (p.y() - y0) / hy; }
};

// Roots in (0,1) of c t^2 + b t + a = 0.
void roots_in_unit(double a, double b, double c, std::vector<double>& out) {
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  if (scale == 0.0) return;
  auto push = [&out](double t) {
    if (t > 0.0 && t < 1.0) out.push_back(t);
  };
  if (std::abs(c) <= 1e-14 * scale) {
    if (b != 0.0) push(-a / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  push(q / c);
  if (q != 0.0) push(a / q);
}

// Crossings of a + b t + c t^2 (one scalar coordinate) with the integers.
void integer_crossings(double a, double b, double c, std::vector<double>& out) {
  double lo = std::min(a, a + b + c);
  double hi = std::max(a, a + b + c);
  if (c != 0.0) {
    const double ts = -b / (2.0 * c);
    if (ts > 0.0 && ts < 1.0) {
      const double ext = a + b * ts + c * ts * ts;
      lo = std::min(lo, ext);
      hi = std::max(hi, ext);
    }
  }
  for (double k = std::floor(lo); k <= std::ceil(hi); k += 1.0) roots_in_unit(a - k, b, c, out);
}

void add_scaled(Vector& f, const BasisEval& e, double weight) {
  for (std::size_t i = 0; i < e.dofs.size(); ++i) f[e.dofs[i]] += weight * e.values[i];
}

}  // namespace

CurrentVector operator-(const CurrentVector& a, const CurrentVector& b) {
  require_same_space(a, b);
  return {a.space, a.fx - b.fx, a.fy - b.fy};
}

CurrentVector operator+(const CurrentVector& a, const CurrentVector& b) {
  require_same_space(a, b);
  return {a.space, a.fx + b.fx, a.fy + b.fy};
}

CurrentVector operator*(double c, const CurrentVector& a) { return {a.space, c * a.fx, c * a.fy}; }

namespace {

// Sorts the breakpoints and drops any within 1e-12 of its predecessor or of
// t = 1, so an endpoint lying on a mesh line up to rounding adds no sliver.
void merge_breakpoints(std::vector<double>& ts) {
  std::sort(ts.begin(), ts.end());
  std::vector<double> out{0.0};
  for (double t : ts) {
    if (t - out.back() > 1e-12 && 1.0 - t > 1e-12) out.push_back(t);
  }
  out.push_back(1.0);
  ts.swap(out);
}

}  // namespace

std::vector<ClippedPiece> clip_segment(const Vec2& p, const Vec2& q, const StructuredMesh& mesh) {
  if (!mesh.domain().contains(p)) throw OutOfDomain(0, p);
  if (!mesh.domain().contains(q)) throw OutOfDomain(1, q);
  const Lattice lat(mesh);
  const double up = lat.u(p), vp = lat.v(p);
  const double du = lat.u(q) - up, dv = lat.v(q) - vp;

  std::vector<double> ts{0.0, 1.0};
  integer_crossings(up, du, 0.0, ts);
  integer_crossings(vp, dv, 0.0, ts);
  integer_crossings(vp - up, dv - du, 0.0, ts);
  merge_breakpoints(ts);

  std::vector<ClippedPiece> pieces;
  pieces.reserve(ts.size() - 1);
  const Vec2 d = q - p;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const Vec2 a = ts[k] == 0.0 ? p : Vec2(p + ts[k] * d);
    const Vec2 b = ts[k + 1] == 1.0 ? q : Vec2(p + ts[k + 1] * d);
    const Vec2 mid = p + (0.5 * (ts[k] + ts[k + 1])) * d;
    pieces.push_back({mesh.locate(mid), a, b});
  }
  return pieces;
}

std::vector<double> clip_arc(const Vec2& a, const Vec2& b, const Vec2& c, const StructuredMesh& mesh) {
  const Lattice lat(mesh);
  const double ua = lat.u(a), va = lat.v(a);
  const double ub = b.x() / lat.hx, vb = b.y() / lat.hy;
  const double uc = c.x() / lat.hx, vc = c.y() / lat.hy;
  std::vector<double> ts{0.0, 1.0};
  integer_crossings(ua, ub, uc, ts);
  integer_crossings(va, vb, vc, ts);
  integer_crossings(va - ua, vb - ub, vc - uc, ts);
  merge_breakpoints(ts);
  return ts;
}

namespace {

void midpoint_current(const SampledCurve& curve, const FormSpace& space, CurrentVector& f) {
  BasisEval e;
  const bool mesh = space.kind() == SpaceKind::Lagrange;
  auto accumulate = [&](int cell, const Vec2& p, const Vec2& q) {
    const Vec2 mid = 0.5 * (p + q);
    space.evaluate(cell, mid, e);
    add_scaled(f.fx, e, q.x() - p.x());
    add_scaled(f.fy, e, q.y() - p.y());
  };
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const Vec2 p = curve.segment_start(i);
    const Vec2 q = curve.segment_end(i);
    if (mesh) {
      for (const auto& piece : clip_segment(p, q, space.mesh())) accumulate(piece.cell, piece.p, piece.q);
    } else {
      accumulate(0, p, q);
    }
  }
}

// Arc a + b t + c t^2 on t in [0,1] whose samples sit at t = 0, tm, 1.
struct Arc {
  Vec2 a, b, c;
  double tm;
  std::size_t first;  // index of the sample at t = 0
  Vec2 at(double t) const { return a + t * b + (t * t) * c; }
  Vec2 tangent(double t) const { return b + (2.0 * t) * c; }
};

Arc quadratic_arc(const Vec2& p0, const Vec2& p1, const Vec2& p2, std::size_t first) {
  const double l1 = (p1 - p0).norm();
  const double l2 = (p2 - p1).norm();
  const double tm = l1 / (l1 + l2);
  const Vec2 c = (p1 - p0 - tm * (p2 - p0)) / (tm * (tm - 1.0));
  return {p0, p2 - p0 - c, c, tm, first};
}

Arc straight_arc(const Vec2& p, const Vec2& q, std::size_t first) {
  return {p, q - p, Vec2::Zero(), 0.5, first};
}

void check_arc_inside(const Arc& arc, const Rect& r) {
  for (int k = 0; k < 2; ++k) {
    const double a = arc.a[k], b = arc.b[k], c = arc.c[k];
    if (c == 0.0) continue;
    const double ts = -b / (2.0 * c);
    if (ts > 0.0 && ts < 1.0) {
      const double ext = a + b * ts + c * ts * ts;
      const double lo = k == 0 ? r.x0 : r.y0;
      const double hi = k == 0 ? r.x1 : r.y1;
      if (ext < lo || ext > hi) throw OutOfDomain(arc.first + 1, arc.at(ts));
    }
  }
}

void simpson_current(const SampledCurve& curve, const FormSpace& space, CurrentVector& f) {
  const std::size_t nseg = curve.segment_count();
  std::vector<Arc> arcs;
  std::size_t i = 0;
  for (; i + 1 < nseg; i += 2) {
    arcs.push_back(quadratic_arc(curve.segment_start(i), curve.segment_end(i), curve.segment_end(i + 1), i));
  }
  if (i < nseg) arcs.push_back(straight_arc(curve.segment_start(i), curve.segment_end(i), i));

  const bool mesh = space.kind() == SpaceKind::Lagrange;
  BasisEval ea, em, eb;
  for (const auto& arc : arcs) {
    check_arc_inside(arc, space.domain());
    std::vector<double> ts;
    if (mesh) {
      ts = clip_arc(arc.a, arc.b, arc.c, space.mesh());
    } else {
      ts = {0.0, 1.0};
    }
    if (arc.c != Vec2::Zero()) ts.push_back(arc.tm);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double t0 = ts[k], t1 = ts[k + 1];
      const double tmid = 0.5 * (t0 + t1);
      const Vec2 pm = arc.at(tmid);
      const int cell = mesh ? space.mesh().locate(pm) : 0;
      space.evaluate(cell, arc.at(t0), ea);
      space.evaluate(cell, pm, em);
      space.evaluate(cell, arc.at(t1), eb);
      const double w = (t1 - t0) / 6.0;
      const Vec2 d0 = w * arc.tangent(t0);
      const Vec2 dm = (4.0 * w) * arc.tangent(tmid);
      const Vec2 d1 = w * arc.tangent(t1);
      add_scaled(f.fx, ea, d0.x());
      add_scaled(f.fx, em, dm.x());
      add_scaled(f.fx, eb, d1.x());
      add_scaled(f.fy, ea, d0.y());
      add_scaled(f.fy, em, dm.y());
      add_scaled(f.fy, eb, d1.y());
    }
  }
}

}  // namespace

CurrentVector evaluate_current(const SampledCurve& curve, const FormSpace& space, QuadratureRule rule) {
  check_inside(curve, space.domain());
  CurrentVector f;
  f.space = space.descriptor();
  f.fx = Vector::Zero(static_cast<Eigen::Index>(space.dof_count()));
  f.fy = Vector::Zero(static_cast<Eigen::Index>(space.dof_count()));
  if (curve.size() < 2) return f;
  if (rule == QuadratureRule::Midpoint) {
    midpoint_current(curve, space, f);
  } else {
    simpson_current(curve, space, f);
  }
  return f;
}

double directional_derivative(const SampledCurve& curve, const std::vector<Vec2>& X,
                              const Vector& ax, const Vector& ay, const FormSpace& space) {
  if (X.size() != curve.size()) throw ConfigurationError("direction field needs one vector per sample");
  const auto n = static_cast<Eigen::Index>(space.dof_count());
  if (ax.size() != n || ay.size() != n) throw ConfigurationError("form coefficients have wrong size");
  check_inside(curve, space.domain());

  const bool mesh = space.kind() == SpaceKind::Lagrange;
  BasisEval e;
  double total = 0.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const Vec2 p = curve.segment_start(i);
    const Vec2 q = curve.segment_end(i);
    const Vec2 xp = X[i];
    const Vec2 xq = X[(i + 1) % X.size()];
    const Vec2 d = q - p;
    const double len2 = d.squaredNorm();
    auto piece = [&](int cell, const Vec2& a, const Vec2& b) {
      const Vec2 mid = 0.5 * (a + b);
      const double t = len2 > 0.0 ? (mid - p).dot(d) / len2 : 0.5;
      const Vec2 x = (1.0 - t) * xp + t * xq;
      space.evaluate(cell, mid, e, true);
      double curl = 0.0;
      for (std::size_t k = 0; k < e.dofs.size(); ++k) {
        curl += ay[e.dofs[k]] * e.dx[k] - ax[e.dofs[k]] * e.dy[k];
      }
      const Vec2 step = b - a;
      total += curl * (x.x() * step.y() - x.y() * step.x());
    };
    if (mesh) {
      for (const auto& pc : clip_segment(p, q, space.mesh())) piece(pc.cell, pc.p, pc.q);
    } else {
      piece(0, p, q);
    }
  }
  return total;
}

double arclength_functional(const SampledCurve& curve) {
  double s = 0.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    s += (curve.segment_end(i) - curve.segment_start(i)).norm();
  }
  return s;
}

}  // namespace shapecur
