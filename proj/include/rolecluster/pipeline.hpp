#ifndef ROLECLUSTER_PIPELINE_HPP
#define ROLECLUSTER_PIPELINE_HPP

#include <optional>
#include <vector>

#include "rolecluster/spectral.hpp"
#include "rolecluster/types.hpp"

namespace rolecluster {

struct ClusterOutcome {
  ClusterAssignment assignment;
  int chosen_p = 0;
  int chosen_k = 0;
  int active_constraints = 0;  // constrained pairs in the merged Z
  int degenerate_rows = 0;     // zero rows in the spectral embedding
};

/// Full two-step pipeline: cosine affinity, role constraints (merged with
/// extra_constraints when given), E2CP propagation, affinity update,
/// p-threshold refinement, normalized Laplacian, eigengap speaker count
/// (unless k is fixed), spectral embedding, k-means. Errors name their stage.
ClusterOutcome cluster_session(const std::vector<Embedding>& embeddings,
                               const std::vector<RolePrediction>& predictions,
                               const ClusteringConfig& config,
                               const std::optional<Matrix>& extra_constraints = std::nullopt);

}  // namespace rolecluster

#endif  // ROLECLUSTER_PIPELINE_HPP
