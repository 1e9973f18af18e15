#ifndef ROLECLUSTER_IO_HPP
#define ROLECLUSTER_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rolecluster/constraints.hpp"
#include "rolecluster/evaluation.hpp"
#include "rolecluster/types.hpp"

namespace rolecluster {

struct SessionBundle {
  std::string session_id;
  std::vector<Segment> segments;
  std::vector<Embedding> embeddings;
  std::vector<RolePrediction> predictions;  // derived from segments carrying a role
  std::optional<LabeledTimeline> reference;
};

// --- segments JSONL ---------------------------------------------------------
// One object per line:
//   {"session_id": str, "segment_id": str, "start_s": float, "end_s": float,
//    "speaker_id": str?, "role": str?, "role_confidence": float?, "word_count": int?}
// Unknown keys are ignored.

std::vector<Segment> read_segments_jsonl(const std::filesystem::path& path,
                                         std::string* session_id_out = nullptr);
void write_segments_jsonl(const std::filesystem::path& path, const std::string& session_id,
                          const std::vector<Segment>& segments);

// --- embeddings CSV ---------------------------------------------------------
// Header "segment_id,v0,...,v{d-1}", one row per segment in segment order.
// Vectors are normalized to unit norm on ingestion.

std::vector<Embedding> read_embeddings_csv(const std::filesystem::path& path,
                                           std::vector<std::string>* segment_ids_out = nullptr);
void write_embeddings_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& segment_ids,
                          const std::vector<Embedding>& embeddings);

// --- RTTM -------------------------------------------------------------------
// SPEAKER <file-id> 1 <tbeg> <tdur> <NA> <NA> <speaker> <NA> <NA>
// Unknown line types are skipped with a warning on stderr.

LabeledTimeline read_rttm(const std::filesystem::path& path, std::string* file_id_out = nullptr);
void write_rttm(const std::filesystem::path& path, const std::string& file_id,
                const LabeledTimeline& timeline);

// --- explicit constraints CSV -----------------------------------------------
// Header optional; rows "segment_i,segment_j,kind" with kind in {ML, CL}.

std::vector<PairConstraint> read_constraints_csv(const std::filesystem::path& path);

// --- bundles ----------------------------------------------------------------

/// Loads segments + embeddings (+ reference when present), validates that the
/// files agree, and derives predictions from segments carrying a role.
SessionBundle read_session_bundle(const std::filesystem::path& segments_path,
                                  const std::filesystem::path& embeddings_path,
                                  const std::optional<std::filesystem::path>& rttm_path = {});

/// Predictions for segments that carry a role. A missing confidence counts as
/// 1.0 (an asserted role), a missing word count as 0 words.
std::vector<RolePrediction> predictions_from_segments(const std::vector<Segment>& segments);

/// Reference timeline from segments with an oracle speaker. Empty optional
/// when no segment has one.
std::optional<LabeledTimeline> reference_from_segments(const std::vector<Segment>& segments);

// --- digests ----------------------------------------------------------------

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace rolecluster

#endif  // ROLECLUSTER_IO_HPP
