#include "shapecur/reconstruct.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace shapecur;

TEST(Reconstruct, HandPlacedSegment) {
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  // bottom edge is opposite vertex 2, the hypotenuse opposite vertex 0
  const auto s = segment_from_jumps(tri, Vec2(0.5, 0.25), 2, 0);
  EXPECT_NEAR((s.p - Vec2(0.25, 0.0)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((s.q - Vec2(0.75, 0.25)).norm(), 0.0, 1e-14);
  EXPECT_THROW(segment_from_jumps(tri, Vec2(0.0, 0.0), 2, 0), InconsistentJumps);
  EXPECT_THROW(segment_from_jumps(tri, Vec2(3.0, 0.25), 2, 0), InconsistentJumps);
}

TEST(Reconstruct, ParallelJumpHasUniquePlacement) {
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  // parallel to the bottom edge, from the left leg to the hypotenuse
  const auto s = segment_from_jumps(tri, Vec2(0.6, 0.0), 1, 0);
  EXPECT_NEAR(s.p.x(), 0.0, 1e-14);
  EXPECT_NEAR(s.q.x() + s.q.y(), 1.0, 1e-14);
  EXPECT_NEAR(s.p.y(), 0.4, 1e-14);
}

TEST(Reconstruct, PolygonCrossingsLieOnTheCurve) {
  // straight sides: the crossing points are exact, and so is every segment
  // in a cell without a corner
  SampledCurve c;
  for (int k = 0; k < 8; ++k) {
    const double th = 2.0 * std::numbers::pi * (k + 0.3) / 8.0;
    c.params.push_back(k / 8.0);
    c.points.emplace_back(0.031 + 0.7 * std::cos(th), -0.017 + 0.7 * std::sin(th));
  }
  const auto mesh = build_mesh(10);
  const auto rec = reconstruct_pc(compute_jumps(c, mesh));
  ASSERT_GT(rec.points.size(), 20u);
  auto dist = [&](const Vec2& x) {
    double d = 1e300;
    for (std::size_t k = 0; k < 8; ++k) {
      const Vec2 a = c.points[k], b = c.points[(k + 1) % 8];
      const double t = std::clamp((x - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
      d = std::min(d, (a + t * (b - a) - x).norm());
    }
    return d;
  };
  std::vector<int> corner_cells;
  for (const auto& p : c.points) corner_cells.push_back(mesh.locate(p));
  const std::size_t m = rec.points.size();
  for (std::size_t k = 0; k < m; ++k) {
    EXPECT_LT(dist(rec.points[k]), 1e-10);
    if (std::find(corner_cells.begin(), corner_cells.end(), rec.cells[k]) != corner_cells.end()) continue;
    EXPECT_LT(dist(0.5 * (rec.points[k] + rec.points[(k + 1) % m])), 1e-10);
  }
}

TEST(Reconstruct, CircleChainIsCyclic) {
  const auto mesh = build_mesh(10);
  const auto jumps = compute_jumps(circle(4000, 0.5, Vec2(0.0123, -0.0071)), mesh);
  const auto cells = occupied_cells(jumps);
  ASSERT_GT(cells.size(), 20u);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const int a = cells[k], b = cells[(k + 1) % cells.size()];
    bool adj = false;
    for (int e = 0; e < 3; ++e) adj = adj || mesh.neighbor(a, e) == b;
    EXPECT_TRUE(adj);
  }
  EXPECT_EQ(cells.front(), *std::min_element(cells.begin(), cells.end()));
  // jumps sum to zero around a closed curve
  Vec2 total = Vec2::Zero();
  for (const auto& j : jumps.jump) total += j;
  EXPECT_LT(total.norm(), 1e-13);
}

TEST(Reconstruct, EmptyAndDegenerateInput) {
  const auto mesh = build_mesh(4);
  CellJumps none{std::make_shared<StructuredMesh>(mesh), std::vector<Vec2>(static_cast<std::size_t>(mesh.triangle_count()), Vec2::Zero())};
  EXPECT_TRUE(occupied_cells(none).empty());
  // a circle tangent-close to a mesh line crosses an edge twice
  EXPECT_THROW(reconstruct_pc(compute_jumps(circle(20000, 0.5, Vec2(0.000231305, -0.0413885)), build_mesh(20))),
               NotInGeneralPosition);
}

TEST(Reconstruct, QuadraticCorrection) {
  // g = x(h - x) on [0,h]: a0 = 1
  const double h = 0.7;
  EXPECT_NEAR(quadratic_correction(0.0, 0.0, h * h * h / 6.0, h), 1.0, 1e-14);
  EXPECT_THROW(quadratic_correction(0.0, 0.0, 1.0, 0.0), ConfigurationError);
}

namespace {

// exact moments of a polynomial on [0,h]
struct Moments {
  double g0, gh, I, Ixy, Iy2;
};

Moments moments_of(const Poly1D& p, double h) {
  Moments m{p(0.0), p(h), 0.0, 0.0, 0.0};
  const int n = 4000;
  // composite Simpson, exact beyond what the tests need at this n
  for (int i = 0; i <= n; ++i) {
    const double x = h * i / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double g = p(x);
    m.I += w * g;
    m.Ixy += w * x * g;
    m.Iy2 += w * g * g;
  }
  const double f = h / (3.0 * n);
  m.I *= f;
  m.Ixy *= f;
  m.Iy2 *= f;
  return m;
}

double max_diff(const Poly1D& a, const Poly1D& b, double h) {
  double e = 0.0;
  for (int i = 0; i <= 200; ++i) e = std::max(e, std::abs(a(h * i / 200) - b(h * i / 200)));
  return e;
}

}  // namespace

TEST(Reconstruct, InterpolatorySolversAreExactOnTheirDegree) {
  const double h = 0.6;
  const Poly1D q{{0.3, -1.2, 2.0}};
  const Poly1D c{{0.1, 0.4, -0.7, 1.9}};
  const Poly1D r{{0.2, 1.0, 0.5, -2.0, 3.0}};
  auto mq = moments_of(q, h);
  EXPECT_LT(max_diff(quadratic_reconstruct(mq.g0, mq.gh, mq.I, h), q, h), 1e-10);
  auto mc = moments_of(c, h);
  EXPECT_LT(max_diff(cubic_reconstruct(mc.g0, mc.gh, mc.I, mc.Ixy, h), c, h), 1e-10);
  auto mr = moments_of(r, h);
  const auto res = quartic_reconstruct(mr.g0, mr.gh, mr.I, mr.Ixy, mr.Iy2, h);
  EXPECT_FALSE(res.fallback);
  EXPECT_EQ(res.solutions.size(), 2u);
  EXPECT_LT(max_diff(res.selected, r, h), 1e-10);
}

TEST(Reconstruct, QuarticFallsBackWithoutRealSolution) {
  // Iy2 below what any interpolant with these moments can reach
  const auto res = quartic_reconstruct(0.0, 1.0, 0.25, 0.2, 0.0, 1.0);
  EXPECT_TRUE(res.fallback);
  EXPECT_TRUE(res.solutions.empty());
}

TEST(Reconstruct, PointsFromMoments) {
  const std::vector<double> pts{-0.7, 0.1, 0.35, 0.9};
  std::vector<double> m;
  for (int k = 1; k <= 6; ++k) {
    double s = 0.0;
    for (double x : pts) s += std::pow(x, k);
    m.push_back(s);
  }
  const auto got = recover_points_from_moments(m, 4);
  ASSERT_EQ(got.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], pts[i], 1e-10);
  // a sixth moment that disagrees with the first four
  auto bad = m;
  bad[5] += 0.1;
  EXPECT_THROW(recover_points_from_moments(bad, 4), InconsistentMoments);
  // complex roots: p1 = 0, p2 = -2 for x^2 + 1
  EXPECT_THROW(recover_points_from_moments({0.0, -2.0}, 2), InconsistentMoments);
  EXPECT_THROW(recover_points_from_moments({1.0}, 2), ConfigurationError);
}
