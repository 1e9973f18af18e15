#ifndef ROLECLUSTER_AFFINITY_HPP
#define ROLECLUSTER_AFFINITY_HPP

#include <optional>
#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

/// Throws InternalError unless w is square, exactly symmetric, has entries in
/// [0, 1] and a unit diagonal.
void validate_affinity(const Matrix& w);

/// Raw affinity from unit-norm embeddings: entries (1 + cos) / 2, diagonal 1.
Matrix cosine_affinity(const std::vector<Embedding>& embeddings);

/// Per-row soft threshold: the ceil((100-p)/100 * N) largest entries in each
/// row are set to 1 and the rest are scaled by tau. Ties prefer the diagonal,
/// then the lower column index, so a unit diagonal is always kept. The result
/// may be asymmetric.
Matrix p_threshold(const Matrix& w, int p, double tau);

/// W = (Wp + Wp^T) / 2, exactly symmetric by construction.
Matrix symmetrize(const Matrix& wp);

struct AutoTuneResult {
  int p = 0;
  Matrix refined;
};

/// Picks the p in p_range whose refined matrix maximizes the Laplacian
/// eigengap ratio at k (k_hint when given, otherwise per-candidate eigengap
/// estimate over k_range). Ties go to the smaller p.
AutoTuneResult auto_tune_p(const Matrix& w, double tau, const IntRange& p_range,
                           std::optional<int> k_hint, const IntRange& k_range);

}  // namespace rolecluster

#endif  // ROLECLUSTER_AFFINITY_HPP
