#include "shapecur/curve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace shapecur;

TEST(Curve, CircleShoelaceMatchesInscribedPolygon) {
  const std::size_t n = 64;
  const auto c = circle(n, 0.5);
  // regular n-gon inscribed in radius r: (n/2) r^2 sin(2 pi / n)
  const double expect = 0.5 * n * 0.25 * std::sin(2.0 * std::numbers::pi / n);
  EXPECT_NEAR(signed_area(c), expect, 1e-14);
  EXPECT_NEAR(signed_area(reverse_orientation(c)), -expect, 1e-14);
}

TEST(Curve, ValidateRejectsBadInput) {
  SampledCurve c = circle(8);
  EXPECT_NO_THROW(c.validate());
  SampledCurve dup = c;
  dup.points[3] = dup.points[2];
  EXPECT_THROW(dup.validate(), InvalidCurve);
  SampledCurve order = c;
  std::swap(order.params[1], order.params[2]);
  EXPECT_THROW(order.validate(), InvalidCurve);
  SampledCurve tiny;
  tiny.params = {0.0, 0.5};
  tiny.points = {Vec2(0, 0), Vec2(1, 0)};
  EXPECT_THROW(tiny.validate(), InvalidCurve);
  tiny.closed = false;
  EXPECT_NO_THROW(tiny.validate());
}

TEST(Curve, SegmentCounts) {
  EXPECT_EQ(circle(10).segment_count(), 10u);
  EXPECT_EQ(segment_line(10).segment_count(), 9u);
}

TEST(Curve, FourierShapeOfSingleModeIsCircle) {
  FourierCoeffs z;
  z[1] = 0.5;
  const auto c = fourier_shape(z, 100);
  for (const auto& p : c.points) EXPECT_NEAR(p.norm(), 0.5, 1e-15);
  EXPECT_THROW(fourier_shape(z, 2), InvalidCurve);
}

TEST(Curve, RandomCoefficientsAreSeededAndCentred) {
  const auto a = random_smooth_coeffs(4);
  const auto b = random_smooth_coeffs(4);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_smooth_coeffs(5));
  EXPECT_EQ(a.at(1), std::complex<double>(0.5, 0.0));
  EXPECT_EQ(a.at(0), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(a.at(-1), std::complex<double>(0.0, 0.0));
}

TEST(Curve, SupercircleLiesOnItsLevelSet) {
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    for (const auto& p : supercircle(r, 37).points) {
      EXPECT_NEAR(std::pow(std::abs(p.x()), r) + std::pow(std::abs(p.y()), r), std::pow(0.5, r), 1e-12);
    }
  }
}

TEST(Curve, WigglyRadius) {
  const auto c = wiggly_circle(0.1, 4, 64);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double th = 2.0 * std::numbers::pi * c.params[i];
    EXPECT_NEAR(c.points[i].norm(), 0.5 * (1.0 + 0.1 * std::cos(4.0 * th)), 1e-14);
  }
}

TEST(Curve, RetracedSegmentIsSymmetric) {
  const auto c = retraced_segment(16);
  for (std::size_t i = 1; i < 16; ++i) {
    EXPECT_EQ(c.points[i].x(), c.points[16 - i].x());
    EXPECT_EQ(c.points[i].y(), 0.0);
  }
}

TEST(Curve, NoiseIsDeterministicAndCanFixEnds) {
  const auto line = segment_line(11);
  const auto a = add_noise(line, 0.01, 3, true);
  const auto b = add_noise(line, 0.01, 3, true);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.points.front(), line.points.front());
  EXPECT_EQ(a.points.back(), line.points.back());
  EXPECT_NE(a.points[5], line.points[5]);
}

TEST(Curve, ReparameterizeKeepsPointsOnPolyline) {
  const auto c = circle(200);
  EXPECT_EQ(reparameterize(c, 0.0, 1).points, c.points);
  const auto r = reparameterize(c, 0.05, 9);
  r.validate();
  // every new point lies on some chord of the original polygon
  const double sag = 0.5 * (1.0 - std::cos(std::numbers::pi / 200));
  for (const auto& p : r.points) {
    EXPECT_LE(p.norm(), 0.5 + 1e-12);
    EXPECT_GE(p.norm(), 0.5 - sag - 1e-12);
  }
}

TEST(Curve, LengthAndTranslate) {
  EXPECT_NEAR(polyline_length(segment_line(7)), 1.0, 1e-15);
  const auto t = translate(circle(8), Vec2(0.1, -0.2));
  EXPECT_NEAR(t.points[0].x(), 0.6, 1e-15);
  EXPECT_NEAR(t.points[0].y(), -0.2, 1e-15);
}
