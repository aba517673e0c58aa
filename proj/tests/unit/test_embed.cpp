#include "shapecur/embed.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace shapecur;

TEST(Embed, PcaOfPlanarDataIsIsometric) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  Matrix X(12, 5);
  // rank-2 data embedded in R^5
  Matrix basis(2, 5);
  for (auto& v : basis.reshaped()) v = nd(rng);
  for (Eigen::Index i = 0; i < 12; ++i) X.row(i) = Eigen::RowVector2d(nd(rng), 3.0 * nd(rng)) * basis;
  const auto e = pca(X, 2);
  EXPECT_LT(mean_distance_error(pairwise_distances(X), e.coords), 1e-10);
  EXPECT_GE(e.variance[0], e.variance[1]);
  EXPECT_NEAR(e.coords.col(0).mean(), 0.0, 1e-12);
  EXPECT_THROW(pca(X, 12), ConfigurationError);
}

TEST(Embed, MdsRecoversRealizableConfiguration) {
  Matrix Y(6, 2);
  Y << 0, 0, 1, 0, 0, 2, 1, 1, -1, 0.5, 0.3, -0.8;
  const Matrix D = pairwise_distances(Y);
  Embedding init;
  init.coords = Y + 0.1 * Matrix::Ones(6, 2).cwiseProduct(Matrix::Random(6, 2));
  const auto e = mds_stress(D, init);
  EXPECT_LE(e.stress, 1e-8);
  EXPECT_LT((pairwise_distances(e.coords) - D).cwiseAbs().maxCoeff(), 1e-4);
  for (std::size_t k = 1; k < e.stress_history.size(); ++k) {
    EXPECT_LT(e.stress_history[k], e.stress_history[k - 1]);
  }
}

TEST(Embed, MdsValidatesDistances) {
  Matrix D = Matrix::Zero(3, 3);
  D(0, 1) = 1.0;
  Embedding init;
  init.coords = Matrix::Zero(3, 2);
  EXPECT_THROW(mds_stress(D, init), ValidationError);
  D(1, 0) = 1.0;
  D(2, 2) = 0.5;
  EXPECT_THROW(mds_stress(D, init), ValidationError);
}

TEST(Embed, ClassSeparation) {
  Matrix c(6, 2);
  c << 0, 0, 0.1, 0.2, 1, 1, 1.1, 0.9, 0, 1, 0.1, 1.1;
  const auto r = class_separation(c, {0, 0, 1, 1, 2, 2});
  EXPECT_EQ(r.pairs.size(), 3u);
  EXPECT_DOUBLE_EQ(r.min_accuracy, 1.0);
  // XOR pattern: no line separates the two classes
  Matrix x(4, 2);
  x << 0, 0, 1, 1, 0, 1, 1, 0;
  EXPECT_DOUBLE_EQ(class_separation(x, {0, 0, 1, 1}).min_accuracy, 0.75);
  EXPECT_TRUE(class_separation(x, {0, 0, 0, 0}).degenerate);
  EXPECT_THROW(class_separation(x, {0, 1}), ConfigurationError);
}
