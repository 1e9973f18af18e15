#ifndef ROLECLUSTER_SPECTRAL_HPP
#define ROLECLUSTER_SPECTRAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

/// L = I - D^-1/2 W D^-1/2, exactly symmetrized.
Matrix normalized_laplacian(const Matrix& w);

struct LaplacianSpectrum {
  Vector eigenvalues;   // ascending; values in [-1e-8, 0) clamped to 0
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]; unit norm;
                        // first component larger than 1e-12 in magnitude is positive
};

LaplacianSpectrum eigendecompose(const Matrix& l);

/// argmax_k eigenvalues[k+1] / max(eigenvalues[k], 1e-10) over k_range clamped
/// to [2, N-1]; ties go to the smaller k. Indices are 1-based as in
/// lambda_1 <= ... <= lambda_N.
int estimate_num_speakers(const LaplacianSpectrum& spectrum, const IntRange& k_range);

/// Eigengap ratio lambda_{k+1} / max(lambda_k, 1e-10) for a 1-based k.
double eigengap_ratio(const LaplacianSpectrum& spectrum, int k);

struct SpectralEmbedding {
  Matrix rows;        // N x k, rows normalized to unit norm
  int zero_rows = 0;  // rows with norm < 1e-12, left as zero
};

/// Rows of the k smallest-eigenvalue eigenvectors, row-normalized.
SpectralEmbedding spectral_embed(const LaplacianSpectrum& spectrum, int k);

struct ClusterAssignment {
  std::vector<int> labels;  // one label in [0, k) per point
  int k = 1;
  double inertia = 0.0;
};

/// Seeded k-means: distance-squared-weighted init, 10 restarts, at most 300
/// Lloyd iterations each, convergence at relative inertia change < 1e-6.
/// Returns the lowest-inertia restart (ties go to the lower restart index);
/// labels are renumbered in order of first appearance.
ClusterAssignment kmeans(const Matrix& points, int k, std::uint64_t seed);

}  // namespace rolecluster

#endif  // ROLECLUSTER_SPECTRAL_HPP
