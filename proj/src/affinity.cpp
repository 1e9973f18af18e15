#include "rolecluster/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rolecluster/spectral.hpp"

namespace rolecluster {

void validate_affinity(const Matrix& w) {
  if (w.rows() != w.cols()) {
    throw InternalError("affinity matrix is not square");
  }
  const Eigen::Index n = w.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i, i) != 1.0) {
      throw InternalError("affinity diagonal entry " + std::to_string(i) + " is not 1");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = w(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InternalError("affinity entry out of [0,1] at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      }
      if (w(i, j) != w(j, i)) {
        throw InternalError("affinity matrix is not exactly symmetric at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
      }
    }
  }
}

Matrix cosine_affinity(const std::vector<Embedding>& embeddings) {
  const int n = static_cast<int>(embeddings.size());
  if (n < 2) {
    throw InputError("cosine affinity needs at least 2 embeddings, got " + std::to_string(n));
  }
  const Eigen::Index dim = embeddings.front().values.size();
  for (const auto& e : embeddings) {
    if (e.values.size() != dim) {
      throw InputError("embedding dimension mismatch: segment " +
                       std::to_string(e.segment_index) + " has dimension " +
                       std::to_string(e.values.size()) + ", expected " + std::to_string(dim));
    }
    if (e.values.norm() < 1e-12) {
      throw InputError("zero-norm embedding at segment " + std::to_string(e.segment_index));
    }
  }

  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double denom = embeddings[i].values.norm() * embeddings[j].values.norm();
      double c = embeddings[i].values.dot(embeddings[j].values) / denom;
      c = std::clamp(c, -1.0, 1.0);
      const double v = 0.5 * (1.0 + c);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return w;
}

Matrix p_threshold(const Matrix& w, int p, double tau) {
  if (w.rows() != w.cols()) {
    throw InputError("p_threshold expects a square matrix");
  }
  if (p < 0 || p > 100) {
    throw InputError("p must be in [0, 100], got " + std::to_string(p));
  }
  if (!(tau > 0.0)) {
    throw InputError("tau must be positive");
  }
  const int n = static_cast<int>(w.rows());
  // ceil((100 - p) / 100 * N) in exact integer arithmetic
  const int keep = static_cast<int>(((100 - p) * static_cast<long long>(n) + 99) / 100);

  Matrix out(n, n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    // Largest first; among equals the diagonal wins, then the lower column.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (w(i, a) != w(i, b)) return w(i, a) > w(i, b);
      if ((a == i) != (b == i)) return a == i;
      return a < b;
    });
    for (int r = 0; r < n; ++r) {
      const int j = order[r];
      out(i, j) = r < keep ? 1.0 : w(i, j) * tau;
    }
  }
  return out;
}

Matrix symmetrize(const Matrix& wp) {
  if (wp.rows() != wp.cols()) {
    throw InputError("symmetrize expects a square matrix");
  }
  const Eigen::Index n = wp.rows();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = wp(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 0.5 * (wp(i, j) + wp(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

AutoTuneResult auto_tune_p(const Matrix& w, double tau, const IntRange& p_range,
                           std::optional<int> k_hint, const IntRange& k_range) {
  const std::vector<int> candidates = p_range.values();
  if (candidates.empty()) {
    throw InputError("empty p range");
  }
  const int n = static_cast<int>(w.rows());

  AutoTuneResult best;
  double best_ratio = -1.0;
  for (const int p : candidates) {
    Matrix refined = symmetrize(p_threshold(w, p, tau));
    const LaplacianSpectrum spectrum = eigendecompose(normalized_laplacian(refined));
    int k;
    if (k_hint) {
      k = std::min(*k_hint, n - 1);  // the ratio needs lambda_{k+1}
    } else {
      k = estimate_num_speakers(spectrum, k_range);
    }
    const double ratio = eigengap_ratio(spectrum, k);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best.p = p;
      best.refined = std::move(refined);
    }
  }
  return best;
}

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  if (step <= 0) {
    throw InputError("range step must be positive");
  }
  for (int v = lo; v <= hi; v += step) {
    out.push_back(v);
  }
  return out;
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kNone: return "none";
    case Scenario::kClOnly: return "cl";
    case Scenario::kMlOnly: return "ml";
    case Scenario::kBoth: return "both";
  }
  throw InternalError("unknown scenario");
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "none") return Scenario::kNone;
  if (name == "cl") return Scenario::kClOnly;
  if (name == "ml") return Scenario::kMlOnly;
  if (name == "both") return Scenario::kBoth;
  throw InputError("unknown scenario '" + name + "' (expected none|cl|ml|both)");
}

}  // namespace rolecluster
