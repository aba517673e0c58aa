#include "shapecur/femspace.hpp"
#include "shapecur/quadrature.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace shapecur;

TEST(Mesh, LocateAndTieBreaks) {
  const auto mesh = build_mesh(10);
  // square (5,5) spans [0,0.2]^2
  EXPECT_EQ(mesh.locate(Vec2(0.05, 0.02)), 110);
  EXPECT_EQ(mesh.locate(Vec2(0.02, 0.05)), 111);
  // on the diagonal: the lower triangle
  EXPECT_EQ(mesh.locate(Vec2(0.1, 0.1)), 110);
  // on a vertical edge x = 0: the cell to the left
  EXPECT_EQ(mesh.locate(Vec2(0.0, 0.05)) / 2, 54);
  EXPECT_EQ(mesh.locate(Vec2(-1.0, -1.0)), 0);
  EXPECT_EQ(mesh.locate(Vec2(1.0, 1.0)), mesh.triangle_count() - 2);
  EXPECT_THROW(mesh.locate(Vec2(1.0001, 0.0)), OutOfDomain);
}

TEST(Mesh, NeighborsAreSymmetricAndShareEdges) {
  const auto mesh = build_mesh(4);
  for (int c = 0; c < mesh.triangle_count(); ++c) {
    for (int e = 0; e < 3; ++e) {
      const int nb = mesh.neighbor(c, e);
      if (nb < 0) continue;
      const auto ed = mesh.edge(c, e);
      bool found = false;
      for (int f = 0; f < 3; ++f) {
        if (mesh.neighbor(nb, f) != c) continue;
        const auto other = mesh.edge(nb, f);
        found = (other[0] - ed[1]).norm() < 1e-15 && (other[1] - ed[0]).norm() < 1e-15;
      }
      EXPECT_TRUE(found) << c << " " << e;
    }
  }
}

TEST(Mesh, BarycentricsReproducePoint) {
  const auto mesh = build_mesh(3);
  const Vec2 p(0.3, -0.45);
  const int c = mesh.locate(p);
  const auto l = mesh.barycentric(c, p);
  const auto v = mesh.triangle_vertices(c);
  EXPECT_NEAR(l[0] + l[1] + l[2], 1.0, 1e-15);
  const Vec2 q = l[0] * v[0] + l[1] * v[1] + l[2] * v[2];
  EXPECT_NEAR((q - p).norm(), 0.0, 1e-15);
  for (double x : l) EXPECT_GE(x, 0.0);
  EXPECT_NEAR(mesh.triangle_area(c), 0.5 * (2.0 / 3) * (2.0 / 3), 1e-15);
}

TEST(Space, DescriptorJsonRoundTrip) {
  SpaceDescriptor d;
  d.kind = SpaceKind::Monomial;
  d.max_total = 7;
  d.domain = {-2, 2, -1, 1};
  EXPECT_EQ(SpaceDescriptor::from_json(d.to_json()), d);
  EXPECT_THROW(SpaceDescriptor::from_json("{\"kind\":\"spline\"}"), ConfigurationError);
  EXPECT_THROW(SpaceDescriptor::from_json("not json"), ConfigurationError);
}

TEST(Space, DofCounts) {
  EXPECT_EQ(FormSpace::lagrange(10, 1).dof_count(), 121u);
  EXPECT_EQ(FormSpace::lagrange(10, 3).dof_count(), 961u);
  EXPECT_EQ(FormSpace::monomial(10).dof_count(), 55u);
}

class LagrangeDegree : public ::testing::TestWithParam<int> {};

TEST_P(LagrangeDegree, PartitionOfUnityAndPolynomialReproduction) {
  const int d = GetParam();
  const auto space = FormSpace::lagrange(3, d);
  auto poly = [d](const Vec2& p) { return std::pow(p.x() + 0.3, d) - 2.0 * std::pow(p.y(), d) + p.x() * p.y(); };
  const Vector c = space.interpolate(poly);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BasisEval ev;
  for (int k = 0; k < 50; ++k) {
    const Vec2 p(u(rng), u(rng));
    space.evaluate(space.locate(p), p, ev, true);
    double s = 0.0, gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < ev.values.size(); ++i) {
      s += ev.values[i];
      gx += ev.dx[i];
      gy += ev.dy[i];
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(gx, 0.0, 1e-10);
    EXPECT_NEAR(gy, 0.0, 1e-10);
    if (d >= 2) EXPECT_NEAR(space.evaluate_field(c, p), poly(p), 1e-12);
  }
}

TEST_P(LagrangeDegree, MassSumsToAreaStiffnessKillsConstants) {
  const auto space = FormSpace::lagrange(4, GetParam());
  const auto G = assemble_gram(space, 0.5);
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(space.dof_count()));
  EXPECT_NEAR(ones.dot(G.mass() * ones), 4.0, 1e-12);
  EXPECT_NEAR((G.stiffness() * ones).norm(), 0.0, 1e-11);
  // x is in every space: int |grad x|^2 = area
  const Vector x = space.interpolate([](const Vec2& p) { return p.x(); });
  EXPECT_NEAR(x.dot(G.stiffness() * x), 4.0, 1e-11);
  EXPECT_NEAR(x.dot(G.matrix() * x), 4.0 / 3.0 + 0.25 * 4.0, 1e-11);
}

INSTANTIATE_TEST_SUITE_P(Degrees, LagrangeDegree, ::testing::Values(1, 2, 3, 4));

TEST(Space, P1StencilOnInteriorVertex) {
  const auto space = FormSpace::lagrange(4, 1);
  const auto G = assemble_gram(space, 1.0);
  const double h = 0.5;
  // vertex (2,2) touches six triangles of area h^2/2
  const int v = 2 * 5 + 2;
  EXPECT_NEAR(G.mass().coeff(v, v), 6.0 * (h * h / 2.0) / 6.0, 1e-14);
  EXPECT_NEAR(G.stiffness().coeff(v, v), 4.0, 1e-13);
  EXPECT_NEAR(G.stiffness().coeff(v, v + 1), -1.0, 1e-13);
  EXPECT_NEAR(G.stiffness().coeff(v, v + 6), 0.0, 1e-13);
}

TEST(Space, MonomialGramMatchesTensorQuadrature) {
  const auto space = FormSpace::monomial(5);
  const double sigma = 0.3;
  const auto G = assemble_gram(space, sigma);
  const auto gl = gauss_legendre(8);
  const auto n = space.dof_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto ea = space.monomial_exponents(a);
      const auto eb = space.monomial_exponents(b);
      double s = 0.0;
      for (const auto& qx : gl) {
        for (const auto& qy : gl) {
          const double x = 2.0 * qx.x - 1.0, y = 2.0 * qy.x - 1.0, w = 4.0 * qx.w * qy.w;
          auto val = [&](const std::array<int, 2>& e) { return std::pow(x, e[0]) * std::pow(y, e[1]); };
          auto ddx = [&](const std::array<int, 2>& e) {
            return e[0] ? e[0] * std::pow(x, e[0] - 1) * std::pow(y, e[1]) : 0.0;
          };
          auto ddy = [&](const std::array<int, 2>& e) {
            return e[1] ? e[1] * std::pow(x, e[0]) * std::pow(y, e[1] - 1) : 0.0;
          };
          s += w * (val(ea) * val(eb) + sigma * sigma * (ddx(ea) * ddx(eb) + ddy(ea) * ddy(eb)));
        }
      }
      EXPECT_NEAR(G.matrix().coeff(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), s, 1e-12);
    }
  }
}

TEST(Gram, HandSolvedTwoByTwo) {
  SparseMatrix g(2, 2);
  g.insert(0, 0) = 4.0;
  g.insert(0, 1) = 1.0;
  g.insert(1, 0) = 1.0;
  g.insert(1, 1) = 3.0;
  const auto G = gram_from_matrix(g, SpaceDescriptor{});
  const Vector x = G.solve(Vector::Map(std::array<double, 2>{1.0, 2.0}.data(), 2));
  EXPECT_NEAR(x[0], 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(x[1], 7.0 / 11.0, 1e-15);
  const Vector f = Vector::Map(std::array<double, 2>{1.0, 2.0}.data(), 2);
  EXPECT_NEAR(G.half_solve(f).squaredNorm(), f.dot(x), 1e-14);
  const Vector u = Vector::Map(std::array<double, 2>{0.5, -1.5}.data(), 2);
  EXPECT_NEAR(G.root(u).squaredNorm(), u.dot(g * u), 1e-14);
}

TEST(Gram, RejectsIndefiniteMatrix) {
  SparseMatrix g(2, 2);
  g.insert(0, 0) = 1.0;
  g.insert(0, 1) = 2.0;
  g.insert(1, 0) = 2.0;
  g.insert(1, 1) = 1.0;
  EXPECT_THROW(gram_from_matrix(g, SpaceDescriptor{}), AssemblyFailure);
}

TEST(Gram, RepresenterSolveMatchesDenseRecursion) {
  const auto space = FormSpace::lagrange(3, 2);
  const auto G = assemble_gram(space, 0.4);
  const Matrix Gd(G.matrix());
  const Matrix Md(G.mass());
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  Vector f(static_cast<Eigen::Index>(G.size()));
  for (auto& v : f) v = nd(rng);
  const Vector b1 = Gd.llt().solve(f);
  const Vector b2 = Gd.llt().solve(Md * b1);
  EXPECT_LT((G.representer_solve(f, 1) - b1).norm(), 1e-12 * b1.norm());
  EXPECT_LT((G.representer_solve(f, 2) - b2).norm(), 1e-12 * b2.norm());
  EXPECT_LT((G.solve_power(f, 2) - Gd.llt().solve(Gd.llt().solve(f))).norm(), 1e-10);
  EXPECT_NEAR(G.mass_root(b1).squaredNorm(), b1.dot(Md * b1), 1e-12);
}

TEST(Gram, CoordinateText) {
  SparseMatrix g(2, 2);
  g.insert(0, 0) = 2.0;
  g.insert(1, 0) = -1.0;
  g.insert(0, 1) = -1.0;
  g.insert(1, 1) = 2.0;
  const auto t = to_coordinate_text(g);
  EXPECT_NE(t.find("2 1 -1"), std::string::npos);
}
