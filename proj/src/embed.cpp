#include "shapecur/embed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace shapecur {

Matrix pairwise_distances(const Matrix& X) {
  const Eigen::Index n = X.rows();
  Matrix D = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      D(i, j) = D(j, i) = (X.row(i) - X.row(j)).norm();
    }
  }
  return D;
}

double embedding_stress(const Matrix& dist, const Matrix& coords) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < dist.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < dist.rows(); ++j) {
      const double r = dist(i, j) - (coords.row(i) - coords.row(j)).norm();
      s += r * r;
    }
  }
  return s;
}

double mean_distance_error(const Matrix& dist, const Matrix& coords) {
  double s = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < dist.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < dist.rows(); ++j) {
      s += std::abs(dist(i, j) - (coords.row(i) - coords.row(j)).norm());
      ++count;
    }
  }
  return count ? s / static_cast<double>(count) : 0.0;
}

Embedding pca(const Matrix& X, int k) {
  const Eigen::Index n = X.rows();
  if (n < 2) throw ValidationError("PCA needs at least two shapes");
  if (k < 1 || k > n - 1 || k > X.cols()) throw ConfigurationError("PCA dimension out of range");
  const Matrix Xc = X.rowwise() - X.colwise().mean();
  // eigenvectors of the n x n Gram matrix give the scores directly
  const Matrix K = Xc * Xc.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  if (es.info() != Eigen::Success) throw NumericError("PCA eigendecomposition failed");

  Embedding out;
  out.method = EmbedMethod::PCA;
  out.coords = Matrix::Zero(n, k);
  for (int a = 0; a < k; ++a) {
    const Eigen::Index idx = n - 1 - a;
    const double lambda = std::max(es.eigenvalues()[idx], 0.0);
    Vector u = es.eigenvectors().col(idx);
    if (lambda > 0.0) {
      const Vector loading = Xc.transpose() * u;
      Eigen::Index arg = 0;
      loading.cwiseAbs().maxCoeff(&arg);
      if (loading[arg] < 0.0) u = -u;
    }
    out.coords.col(a) = std::sqrt(lambda) * u;
    out.variance.push_back(lambda / static_cast<double>(n - 1));
  }
  return out;
}

Embedding pca(const ShapeDataset& data, int k) { return pca(data.whitened, k); }

namespace {

void validate_distances(const Matrix& D) {
  if (D.rows() != D.cols()) throw ValidationError("distance matrix must be square");
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    if (D(i, i) != 0.0) throw ValidationError("distance matrix must have a zero diagonal");
    for (Eigen::Index j = i + 1; j < D.rows(); ++j) {
      if (std::abs(D(i, j) - D(j, i)) > 1e-12 * (1.0 + std::abs(D(i, j)))) {
        throw ValidationError("distance matrix must be symmetric");
      }
    }
  }
}

}  // namespace

Embedding mds_stress(const Matrix& dist, const Embedding& init, int max_iters, double tol) {
  validate_distances(dist);
  const Eigen::Index n = dist.rows();
  if (init.coords.rows() != n) throw ConfigurationError("initial embedding has wrong size");
  const Eigen::Index k = init.coords.cols();
  const Eigen::Index m = n * k;

  Matrix Y = init.coords;
  double stress = embedding_stress(dist, Y);
  Embedding out;
  out.method = EmbedMethod::MDS;
  out.stress_history.push_back(stress);

  double mu = -1.0;
  int it = 0;
  for (; it < max_iters && stress > 1e-30; ++it) {
    Matrix H = Matrix::Zero(m, m);
    Vector g = Vector::Zero(m);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Vector diff = (Y.row(i) - Y.row(j)).transpose();
        const double len = diff.norm();
        if (len == 0.0) continue;
        const Vector u = diff / len;
        const double r = dist(i, j) - len;
        // dr/dy_i = -u, dr/dy_j = +u
        for (Eigen::Index a = 0; a < k; ++a) {
          g[i * k + a] += -u[a] * r;
          g[j * k + a] += u[a] * r;
          for (Eigen::Index b = 0; b < k; ++b) {
            const double v = u[a] * u[b];
            H(i * k + a, i * k + b) += v;
            H(j * k + a, j * k + b) += v;
            H(i * k + a, j * k + b) -= v;
            H(j * k + a, i * k + b) -= v;
          }
        }
      }
    }
    if (mu < 0.0) mu = 1e-3 * std::max(H.diagonal().mean(), 1e-300);

    bool accepted = false;
    double next = stress;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Matrix A = H;
      A.diagonal().array() += mu;
      const Vector step = -A.ldlt().solve(g);
      Matrix Yn = Y;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index a = 0; a < k; ++a) Yn(i, a) += step[i * k + a];
      }
      next = embedding_stress(dist, Yn);
      if (next < stress) {
        Y = Yn;
        mu = std::max(mu / 3.0, 1e-15);
        accepted = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) break;
    const double rel = (stress - next) / stress;
    stress = next;
    out.stress_history.push_back(stress);
    if (rel < tol) {
      ++it;
      break;
    }
  }
  out.coords = Y;
  out.stress = stress;
  out.mean_error = mean_distance_error(dist, Y);
  out.iterations = it;
  return out;
}

namespace {

// Best accuracy of a threshold on 1D values separating labels a / b.
double best_threshold(std::vector<std::pair<double, bool>> v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  const std::size_t n = v.size();
  std::size_t total_a = 0;
  for (const auto& x : v) total_a += x.second ? 1 : 0;
  const std::size_t total_b = n - total_a;
  std::size_t left_a = 0, left_b = 0;
  // split before index 0: everything right
  std::size_t best = std::max(total_a, total_b);
  for (std::size_t i = 0; i < n; ++i) {
    (v[i].second ? left_a : left_b) += 1;
    if (i + 1 < n && v[i + 1].first == v[i].first) continue;
    const std::size_t a_left = left_a + (total_b - left_b);
    const std::size_t b_left = left_b + (total_a - left_a);
    best = std::max({best, a_left, b_left});
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

double pair_accuracy(const std::vector<Vec2>& pts, const std::vector<bool>& is_a) {
  std::vector<double> angles{0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec2 d = pts[j] - pts[i];
      if (d.norm() == 0.0) continue;
      double t = std::atan2(d.y(), d.x()) + 0.5 * std::numbers::pi;
      t = std::fmod(t, std::numbers::pi);
      if (t < 0.0) t += std::numbers::pi;
      angles.push_back(t);
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.push_back(angles.front() + std::numbers::pi);
  double best = 0.0;
  std::vector<std::pair<double, bool>> proj(pts.size());
  for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
    for (double t : {angles[k], 0.5 * (angles[k] + angles[k + 1])}) {
      const Vec2 dir(std::cos(t), std::sin(t));
      for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = {pts[i].dot(dir), is_a[i]};
      best = std::max(best, best_threshold(proj));
      if (best == 1.0) return best;
    }
  }
  return best;
}

}  // namespace

SeparationReport class_separation(const Matrix& coords, const std::vector<int>& tags) {
  if (static_cast<std::size_t>(coords.rows()) != tags.size()) {
    throw ConfigurationError("one class tag per embedded shape is required");
  }
  if (coords.cols() < 1 || coords.cols() > 2) throw ConfigurationError("separation needs 1D or 2D coordinates");
  std::map<int, std::vector<Eigen::Index>> members;
  for (std::size_t i = 0; i < tags.size(); ++i) members[tags[i]].push_back(static_cast<Eigen::Index>(i));

  SeparationReport rep;
  if (members.size() < 2) {
    rep.degenerate = true;
    return rep;
  }
  for (auto a = members.begin(); a != members.end(); ++a) {
    for (auto b = std::next(a); b != members.end(); ++b) {
      std::vector<Vec2> pts;
      std::vector<bool> is_a;
      for (auto i : a->second) {
        pts.emplace_back(coords(i, 0), coords.cols() > 1 ? coords(i, 1) : 0.0);
        is_a.push_back(true);
      }
      for (auto i : b->second) {
        pts.emplace_back(coords(i, 0), coords.cols() > 1 ? coords(i, 1) : 0.0);
        is_a.push_back(false);
      }
      const double acc = pair_accuracy(pts, is_a);
      rep.pairs.push_back({a->first, b->first, acc});
      rep.min_accuracy = std::min(rep.min_accuracy, acc);
    }
  }
  return rep;
}

}  // namespace shapecur
