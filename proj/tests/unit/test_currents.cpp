#include "shapecur/currents.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace shapecur;

namespace {

// y dx in the degree-1 monomial space {1, x, y}
constexpr int kY = 2;

}  // namespace

TEST(Currents, SignedAreaOfCircle) {
  const auto space = FormSpace::monomial(2);
  const auto f = evaluate_current(circle(512), space);
  EXPECT_NEAR(f.fx[kY], -std::numbers::pi / 4.0, 1e-4);
  EXPECT_NEAR(f.fy[1], std::numbers::pi / 4.0, 1e-4);
  // exact for the inscribed polygon
  EXPECT_NEAR(f.fy[1], signed_area(circle(512)), 1e-14);
}

TEST(Currents, ExactFormsVanishOnClosedCurves) {
  for (const auto& space : {FormSpace::lagrange(7, 2), FormSpace::monomial(6)}) {
    const auto f = evaluate_current(wiggly_circle(0.2, 5, 300), space, QuadratureRule::Simpson);
    // constant form: the sum over the partition of unity / the monomial 1
    if (space.kind() == SpaceKind::Lagrange) {
      EXPECT_NEAR(f.fx.sum(), 0.0, 1e-13);
      EXPECT_NEAR(f.fy.sum(), 0.0, 1e-13);
    } else {
      EXPECT_NEAR(f.fx[0], 0.0, 1e-13);
      EXPECT_NEAR(f.fy[0], 0.0, 1e-13);
    }
  }
}

TEST(Currents, RetracedSegmentHasZeroCurrent) {
  const auto f = evaluate_current(retraced_segment(200), FormSpace::lagrange(10, 1));
  EXPECT_LT(f.fx.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(f.fy.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Currents, OrientationReversalFlipsSign) {
  const auto space = FormSpace::lagrange(5, 1);
  const auto c = wiggly_circle(0.1, 3, 100);
  const auto f = evaluate_current(c, space);
  const auto g = evaluate_current(reverse_orientation(c), space);
  EXPECT_LT((f.fx + g.fx).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((f.fy + g.fy).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Currents, RulesAgreeOnStraightSegmentsWithP1) {
  // P1 is linear on every clipped piece, so both rules are exact on a polyline
  const auto space = FormSpace::lagrange(6, 1);
  auto c = segment_line(3);
  c.points = {Vec2(-0.9, -0.8), Vec2(0.1, 0.35), Vec2(0.7, 0.9)};
  const auto a = evaluate_current(c, space, QuadratureRule::Midpoint);
  SampledCurve straight = c;
  straight.points[1] = 0.5 * (c.points[0] + c.points[2]);
  const auto m = evaluate_current(straight, space, QuadratureRule::Midpoint);
  const auto s = evaluate_current(straight, space, QuadratureRule::Simpson);
  EXPECT_LT((m.fx - s.fx).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((m.fy - s.fy).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GT((a.fx - m.fx).norm(), 1e-3);
}

TEST(Currents, SimpsonIntegratesQuadraticArcsExactly) {
  // symmetric samples of y = 1.2 x^2: equal chords, so the Simpson arc is the
  // parabola with x linear in the arc parameter
  const auto space = FormSpace::monomial(3);
  SampledCurve c;
  c.closed = false;
  c.params = {0.0, 0.5, 1.0};
  c.points = {Vec2(-0.5, 0.3), Vec2(0.0, 0.0), Vec2(0.5, 0.3)};
  const auto f = evaluate_current(c, space, QuadratureRule::Simpson);
  // int y dx = int 1.2 x^2 dx over [-0.5, 0.5]
  EXPECT_NEAR(f.fx[kY], 0.1, 1e-15);
  // int x dy = int 2.4 x^2 dx
  EXPECT_NEAR(f.fy[1], 0.2, 1e-15);
  // the midpoint rule sees the two chords instead
  const auto m = evaluate_current(c, space, QuadratureRule::Midpoint);
  EXPECT_NEAR(m.fx[kY], 0.15, 1e-15);
}

TEST(Currents, ClipSegmentPiecesTileTheSegment) {
  const auto mesh = build_mesh(8);
  const Vec2 p(-0.93, -0.41), q(0.77, 0.58);
  const auto pieces = clip_segment(p, q, mesh);
  ASSERT_GT(pieces.size(), 5u);
  EXPECT_EQ(pieces.front().p, p);
  EXPECT_EQ(pieces.back().q, q);
  double len = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) EXPECT_NEAR((pieces[i].p - pieces[i - 1].q).norm(), 0.0, 1e-15);
    len += (pieces[i].q - pieces[i].p).norm();
    // each piece sits in its cell: the midpoint has nonnegative barycentrics
    const auto l = mesh.barycentric(pieces[i].cell, 0.5 * (pieces[i].p + pieces[i].q));
    for (double x : l) EXPECT_GE(x, -1e-12);
  }
  EXPECT_NEAR(len, (q - p).norm(), 1e-14);
  // re-clipping a piece returns it unchanged
  for (const auto& pc : pieces) {
    const auto again = clip_segment(pc.p, pc.q, mesh);
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0].cell, pc.cell);
  }
}

TEST(Currents, SegmentAlongSharedEdgeGoesLeftOrBelow) {
  const auto mesh = build_mesh(4);
  // x = 0 is a vertical mesh line; the left cell owns it
  const auto pieces = clip_segment(Vec2(0.0, 0.1), Vec2(0.0, 0.3), mesh);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_LT(mesh.centroid(pieces[0].cell).x(), 0.0);
  // y = 0 is a horizontal mesh line; the cell below owns it
  const auto h = clip_segment(Vec2(0.1, 0.0), Vec2(0.3, 0.0), mesh);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_LT(mesh.centroid(h[0].cell).y(), 0.0);
}

TEST(Currents, OutOfDomainNamesSample) {
  auto c = circle(20);
  c.points[7] = Vec2(1.5, 0.0);
  try {
    evaluate_current(c, FormSpace::lagrange(4, 1));
    FAIL();
  } catch (const OutOfDomain& e) {
    EXPECT_EQ(e.index(), 7u);
  }
}

TEST(Currents, MismatchedSpacesCannotBeCombined) {
  const auto a = evaluate_current(circle(20), FormSpace::lagrange(4, 1));
  const auto b = evaluate_current(circle(20), FormSpace::lagrange(5, 1));
  EXPECT_THROW(a - b, ConfigurationError);
}

TEST(Currents, DirectionalDerivativeMatchesFiniteDifference) {
  const auto space = FormSpace::monomial(5);
  const auto c = wiggly_circle(0.1, 3, 4000);
  std::vector<Vec2> X;
  for (const auto& p : c.points) X.emplace_back(0.2 * p.y() + 0.05, 0.1 * p.x() * p.x());
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  Vector ax(static_cast<Eigen::Index>(space.dof_count())), ay(ax.size());
  for (auto& v : ax) v = nd(rng);
  for (auto& v : ay) v = nd(rng);
  const double d = directional_derivative(c, X, ax, ay, space);
  const double f0 = evaluate_current(c, space).apply(ax, ay);
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    SampledCurve moved = c;
    for (std::size_t i = 0; i < c.size(); ++i) moved.points[i] += eps * X[i];
    const double err = std::abs((evaluate_current(moved, space).apply(ax, ay) - f0) / eps - d);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 10.0, 1.0);
    prev = err;
  }
}

TEST(Currents, ArclengthOfSegment) {
  EXPECT_NEAR(arclength_functional(segment_line(11)), 1.0, 1e-15);
}

TEST(Currents, RuleNames) {
  EXPECT_EQ(parse_rule("simpson"), QuadratureRule::Simpson);
  EXPECT_EQ(rule_name(QuadratureRule::Midpoint), "midpoint");
  EXPECT_THROW(parse_rule("gauss"), ConfigurationError);
}
