#include "rolecluster/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rolecluster/rng.hpp"

namespace rolecluster {

namespace {

constexpr double kEigengapFloor = 1e-10;
constexpr int kRestarts = 10;
constexpr int kMaxLloydIterations = 300;
constexpr double kRelativeInertiaTol = 1e-6;

}  // namespace

Matrix normalized_laplacian(const Matrix& w) {
  const Eigen::Index n = w.rows();
  if (w.cols() != n) {
    throw InputError("laplacian expects a square matrix");
  }
  Vector degrees = w.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degrees(i) > 0.0)) {
      throw InputError("zero degree at row " + std::to_string(i));
    }
  }
  const Vector dinv_sqrt = degrees.cwiseSqrt().cwiseInverse();
  Matrix l = Matrix::Identity(n, n) - dinv_sqrt.asDiagonal() * w * dinv_sqrt.asDiagonal();
  // Scaling can leave asymmetry at the last ulp; mirror the upper triangle.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 0.5 * (l(i, j) + l(j, i));
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return l;
}

LaplacianSpectrum eigendecompose(const Matrix& l) {
  const Eigen::Index n = l.rows();
  if (l.cols() != n) {
    throw InputError("eigendecompose expects a square matrix");
  }
  const double asym = (l - l.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) {
    throw InputError("eigendecompose expects a symmetric matrix (max asymmetry " +
                     std::to_string(asym) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (l + l.transpose()));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition", "symmetric eigensolver did not converge");
  }

  LaplacianSpectrum spectrum;
  spectrum.eigenvalues = solver.eigenvalues();  // ascending
  spectrum.eigenvectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (spectrum.eigenvalues(i) < 0.0 && spectrum.eigenvalues(i) >= -1e-8) {
      spectrum.eigenvalues(i) = 0.0;
    }
    // Sign convention: first component above noise is positive.
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = spectrum.eigenvectors(r, i);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) spectrum.eigenvectors.col(i) = -spectrum.eigenvectors.col(i);
        break;
      }
    }
  }
  return spectrum;
}

double eigengap_ratio(const LaplacianSpectrum& spectrum, int k) {
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  if (k < 1 || k >= n) {
    throw InputError("eigengap ratio needs 1 <= k <= N-1, got k=" + std::to_string(k));
  }
  // 1-based lambda_k is eigenvalues[k-1].
  return spectrum.eigenvalues(k) / std::max(spectrum.eigenvalues(k - 1), kEigengapFloor);
}

int estimate_num_speakers(const LaplacianSpectrum& spectrum, const IntRange& k_range) {
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  const int lo = std::max(2, k_range.lo);
  const int hi = std::min(n - 1, k_range.hi);
  if (lo > hi) {
    throw InputError("empty speaker-count range after clamping to [2," + std::to_string(n - 1) +
                     "]");
  }
  int best_k = lo;
  double best_ratio = -1.0;
  for (int k = lo; k <= hi; ++k) {
    const double ratio = eigengap_ratio(spectrum, k);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_k = k;
    }
  }
  return best_k;
}

SpectralEmbedding spectral_embed(const LaplacianSpectrum& spectrum, int k) {
  const Eigen::Index n = spectrum.eigenvectors.rows();
  if (k < 1 || k > n) {
    throw InputError("embedding dimension k=" + std::to_string(k) + " out of [1," +
                     std::to_string(n) + "]");
  }
  SpectralEmbedding embedding;
  embedding.rows = spectrum.eigenvectors.leftCols(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = embedding.rows.row(i).norm();
    if (norm < 1e-12) {
      embedding.rows.row(i).setZero();
      ++embedding.zero_rows;
    } else {
      embedding.rows.row(i) /= norm;
    }
  }
  return embedding;
}

namespace {

struct KmeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

double squared_distance(const Matrix& points, int i, const Matrix& centroids, int c) {
  return (points.row(i) - centroids.row(c)).squaredNorm();
}

Matrix kmeanspp_init(const Matrix& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  Matrix centroids(k, points.cols());
  const int first = rng.uniform_int(0, n - 1);
  centroids.row(0) = points.row(first);

  std::vector<double> dist2(n);
  for (int i = 0; i < n; ++i) dist2[i] = squared_distance(points, i, centroids, 0);

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : dist2) total += d;
    int pick;
    if (total <= 0.0) {
      pick = rng.uniform_int(0, n - 1);  // all points coincide with a centroid
    } else {
      const double u = rng.uniform() * total;
      double cumulative = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        cumulative += dist2[i];
        if (cumulative > u) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(c) = points.row(pick);
    for (int i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], squared_distance(points, i, centroids, c));
    }
  }
  return centroids;
}

KmeansRun lloyd(const Matrix& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  Matrix centroids = kmeanspp_init(points, k, rng);

  KmeansRun run;
  run.labels.assign(n, 0);
  double previous_inertia = std::numeric_limits<double>::infinity();

  for (int iteration = 0; iteration < kMaxLloydIterations; ++iteration) {
    // Assign to the nearest centroid, lowest index on ties.
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_distance(points, i, centroids, 0);
      for (int c = 1; c < k; ++c) {
        const double d = squared_distance(points, i, centroids, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      run.labels[i] = best;
      inertia += best_d;
    }

    // Re-seed empty clusters with the worst-fit point of a populated one.
    std::vector<int> counts(k, 0);
    for (int label : run.labels) ++counts[label];
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int worst = -1;
      double worst_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[run.labels[i]] < 2) continue;
        const double d = squared_distance(points, i, centroids, run.labels[i]);
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      if (worst < 0) continue;  // k > distinct points; leave the cluster empty
      --counts[run.labels[worst]];
      run.labels[worst] = c;
      counts[c] = 1;
    }

    Matrix sums = Matrix::Zero(k, points.cols());
    for (int i = 0; i < n; ++i) sums.row(run.labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) centroids.row(c) = sums.row(c) / counts[c];
    }

    if (previous_inertia - inertia <= kRelativeInertiaTol * std::max(previous_inertia, 1e-300) &&
        std::isfinite(previous_inertia)) {
      run.inertia = inertia;
      break;
    }
    previous_inertia = inertia;
    run.inertia = inertia;
  }

  // Final inertia for the final centroids.
  double inertia = 0.0;
  for (int i = 0; i < n; ++i) {
    double best_d = squared_distance(points, i, centroids, run.labels[i]);
    inertia += best_d;
  }
  run.inertia = inertia;
  return run;
}

}  // namespace

ClusterAssignment kmeans(const Matrix& points, int k, std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  if (k < 1) {
    throw InputError("k must be at least 1");
  }
  if (k > n) {
    throw InputError("k=" + std::to_string(k) + " exceeds the number of points " +
                     std::to_string(n));
  }

  KmeansRun best;
  for (int restart = 0; restart < kRestarts; ++restart) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    KmeansRun run = lloyd(points, k, rng);
    if (run.inertia < best.inertia) {
      best = std::move(run);
    }
  }

  // Stable label ids: clusters numbered by first appearance.
  std::vector<int> remap(k, -1);
  int next = 0;
  ClusterAssignment assignment;
  assignment.k = k;
  assignment.inertia = best.inertia;
  assignment.labels.reserve(n);
  for (int label : best.labels) {
    if (remap[label] < 0) remap[label] = next++;
    assignment.labels.push_back(remap[label]);
  }
  return assignment;
}

}  // namespace rolecluster
