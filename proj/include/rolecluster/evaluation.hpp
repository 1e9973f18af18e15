#ifndef ROLECLUSTER_EVALUATION_HPP
#define ROLECLUSTER_EVALUATION_HPP

#include <map>
#include <string>
#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

struct TimelineSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string label;
};

/// Time-stamped speaker segments. Overlapping or touching same-label segments
/// are merged on construction.
class LabeledTimeline {
 public:
  LabeledTimeline() = default;
  explicit LabeledTimeline(std::vector<TimelineSegment> segments);

  const std::vector<TimelineSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  std::vector<std::string> labels() const;  // sorted, unique
  double total_speech_s() const;            // sum over per-label merged segments

 private:
  std::vector<TimelineSegment> segments_;  // sorted by (start, end, label)
};

/// One-to-one partial mapping from hypothesis labels to reference labels
/// maximizing the total overlapped duration. Zero-overlap pairs stay unmapped.
std::map<std::string, std::string> optimal_speaker_mapping(const LabeledTimeline& ref,
                                                           const LabeledTimeline& hyp);

/// Collarless-by-default DER via a sweep over boundary events. A positive
/// collar excludes +-collar_s around every reference boundary from scoring.
DerReport compute_der(const LabeledTimeline& ref, const LabeledTimeline& hyp,
                      double collar_s = 0.0);

}  // namespace rolecluster

#endif  // ROLECLUSTER_EVALUATION_HPP
