#ifndef ROLECLUSTER_DATASET_HPP
#define ROLECLUSTER_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rolecluster/io.hpp"
#include "rolecluster/synthesis.hpp"

namespace rolecluster {

/// A dataset directory as written by the synth command:
///   <root>/dataset_manifest.json
///   <root>/sessions/<session_id>/segments.jsonl
///   <root>/sessions/<session_id>/embeddings.csv
///   <root>/sessions/<session_id>/reference.rttm
struct Dataset {
  std::filesystem::path root;
  SynthConfig config;              // generator settings recorded in the manifest
  std::vector<SessionBundle> sessions;  // sorted by session_id
};

Dataset load_dataset(const std::filesystem::path& root);

/// Generates and writes `n_sessions` bundles plus the dataset manifest.
/// Session seeds derive from config.seed and the session index, so the layout
/// is reproducible for any jobs count. Returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& root, const SynthConfig& config,
                                    int n_sessions, int jobs);

}  // namespace rolecluster

#endif  // ROLECLUSTER_DATASET_HPP
