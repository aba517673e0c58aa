#pragma once

#include "shapecur/core.hpp"

#include <string>
#include <vector>

namespace shapecur {

/// Shapes as rows of whitened current coordinates.
struct ShapeDataset {
  std::vector<std::string> labels;
  std::vector<int> classes;  // may be empty
  Matrix whitened;
};

enum class EmbedMethod { PCA, MDS };

struct Embedding {
  Matrix coords;
  EmbedMethod method = EmbedMethod::PCA;
  double stress = 0.0;                 // sum_{i<j} (d_ij - |y_i - y_j|)^2
  double mean_error = 0.0;             // mean_{i<j} |d_ij - |y_i - y_j||
  std::vector<double> variance;        // PCA: variance along each axis
  std::vector<double> stress_history;  // MDS: stress per accepted iterate
  int iterations = 0;
};

/// Euclidean distances between rows.
Matrix pairwise_distances(const Matrix& X);

double embedding_stress(const Matrix& dist, const Matrix& coords);
double mean_distance_error(const Matrix& dist, const Matrix& coords);

/// Projection of the centered rows onto the top k principal axes. The sign of
/// each axis makes its largest-magnitude loading positive.
Embedding pca(const Matrix& X, int k);
Embedding pca(const ShapeDataset& data, int k);

/// Stress-minimizing embedding (damped Gauss-Newton with step rejection)
/// started from `init`. Throws ValidationError for a non-symmetric matrix or
/// nonzero diagonal.
Embedding mds_stress(const Matrix& dist, const Embedding& init, int max_iters = 500, double tol = 1e-10);

struct PairSeparation {
  int class_a;
  int class_b;
  double accuracy;  // best linear split, in [0.5, 1]
};

struct SeparationReport {
  std::vector<PairSeparation> pairs;
  double min_accuracy = 1.0;
  bool degenerate = false;  // fewer than two classes
};

/// Best linear separator for every pair of classes on the given coordinates.
SeparationReport class_separation(const Matrix& coords, const std::vector<int>& tags);

}  // namespace shapecur
