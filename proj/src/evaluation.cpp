#include "rolecluster/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "rolecluster/assignment.hpp"

namespace rolecluster {

LabeledTimeline::LabeledTimeline(std::vector<TimelineSegment> segments) {
  for (const auto& s : segments) {
    if (!(s.end_s > s.start_s)) {
      throw InputError("timeline segment must have end > start (got [" +
                       std::to_string(s.start_s) + "," + std::to_string(s.end_s) + "))");
    }
    if (s.label.empty()) {
      throw InputError("timeline segment with an empty label");
    }
  }
  std::sort(segments.begin(), segments.end(), [](const TimelineSegment& a, const TimelineSegment& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.start_s != b.start_s) return a.start_s < b.start_s;
    return a.end_s < b.end_s;
  });
  // Coalesce overlapping or touching same-label segments.
  for (const auto& s : segments) {
    if (!segments_.empty() && segments_.back().label == s.label &&
        s.start_s <= segments_.back().end_s) {
      segments_.back().end_s = std::max(segments_.back().end_s, s.end_s);
    } else {
      segments_.push_back(s);
    }
  }
  std::sort(segments_.begin(), segments_.end(), [](const TimelineSegment& a, const TimelineSegment& b) {
    if (a.start_s != b.start_s) return a.start_s < b.start_s;
    if (a.end_s != b.end_s) return a.end_s < b.end_s;
    return a.label < b.label;
  });
}

std::vector<std::string> LabeledTimeline::labels() const {
  std::set<std::string> unique;
  for (const auto& s : segments_) unique.insert(s.label);
  return {unique.begin(), unique.end()};
}

double LabeledTimeline::total_speech_s() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.end_s - s.start_s;
  return total;
}

namespace {

double overlap_s(const TimelineSegment& a, const TimelineSegment& b) {
  return std::max(0.0, std::min(a.end_s, b.end_s) - std::max(a.start_s, b.start_s));
}

}  // namespace

std::map<std::string, std::string> optimal_speaker_mapping(const LabeledTimeline& ref,
                                                           const LabeledTimeline& hyp) {
  if (ref.empty() || hyp.empty()) {
    throw InputError("speaker mapping needs non-empty reference and hypothesis timelines");
  }
  const std::vector<std::string> ref_labels = ref.labels();
  const std::vector<std::string> hyp_labels = hyp.labels();

  Matrix overlap = Matrix::Zero(hyp_labels.size(), ref_labels.size());
  for (const auto& hs : hyp.segments()) {
    const auto h = std::lower_bound(hyp_labels.begin(), hyp_labels.end(), hs.label) -
                   hyp_labels.begin();
    for (const auto& rs : ref.segments()) {
      const auto r = std::lower_bound(ref_labels.begin(), ref_labels.end(), rs.label) -
                     ref_labels.begin();
      overlap(h, r) += overlap_s(hs, rs);
    }
  }

  const std::vector<int> matched = max_weight_assignment(overlap);
  std::map<std::string, std::string> mapping;
  for (std::size_t h = 0; h < hyp_labels.size(); ++h) {
    if (matched[h] >= 0) mapping[hyp_labels[h]] = ref_labels[matched[h]];
  }
  return mapping;
}

DerReport compute_der(const LabeledTimeline& ref, const LabeledTimeline& hyp, double collar_s) {
  if (ref.empty()) {
    throw InputError("reference timeline is empty");
  }
  if (collar_s < 0.0) {
    throw InputError("collar must be non-negative");
  }

  std::map<std::string, std::string> hyp_to_ref;
  if (!hyp.empty()) {
    hyp_to_ref = optimal_speaker_mapping(ref, hyp);
  }

  // Collar exclusion zones around reference boundaries, merged.
  std::vector<std::pair<double, double>> zones;
  if (collar_s > 0.0) {
    std::vector<double> ref_bounds;
    for (const auto& s : ref.segments()) {
      ref_bounds.push_back(s.start_s);
      ref_bounds.push_back(s.end_s);
    }
    std::sort(ref_bounds.begin(), ref_bounds.end());
    for (const double b : ref_bounds) {
      if (!zones.empty() && b - collar_s <= zones.back().second) {
        zones.back().second = b + collar_s;
      } else {
        zones.emplace_back(b - collar_s, b + collar_s);
      }
    }
  }

  std::set<double> boundary_set;
  for (const auto& s : ref.segments()) {
    boundary_set.insert(s.start_s);
    boundary_set.insert(s.end_s);
  }
  for (const auto& s : hyp.segments()) {
    boundary_set.insert(s.start_s);
    boundary_set.insert(s.end_s);
  }
  for (const auto& z : zones) {
    boundary_set.insert(z.first);
    boundary_set.insert(z.second);
  }
  const std::vector<double> boundaries(boundary_set.begin(), boundary_set.end());

  DerReport report;
  for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
    const double t0 = boundaries[b];
    const double t1 = boundaries[b + 1];
    const double mid = 0.5 * (t0 + t1);
    const double dur = t1 - t0;

    bool excluded = false;
    for (const auto& z : zones) {
      if (mid >= z.first && mid < z.second) {
        excluded = true;
        break;
      }
    }
    if (excluded) continue;

    std::unordered_set<std::string> active_ref;
    for (const auto& s : ref.segments()) {
      if (s.start_s <= mid && mid < s.end_s) active_ref.insert(s.label);
    }
    int n_hyp = 0;
    int n_correct = 0;
    for (const auto& s : hyp.segments()) {
      if (!(s.start_s <= mid && mid < s.end_s)) continue;
      ++n_hyp;
      const auto mapped = hyp_to_ref.find(s.label);
      if (mapped != hyp_to_ref.end() && active_ref.count(mapped->second) > 0) ++n_correct;
    }
    const int n_ref = static_cast<int>(active_ref.size());

    report.scored_s += dur * n_ref;
    report.missed_s += dur * std::max(0, n_ref - n_hyp);
    report.false_alarm_s += dur * std::max(0, n_hyp - n_ref);
    report.confusion_s += dur * (std::min(n_ref, n_hyp) - n_correct);
  }

  if (!(report.scored_s > 0.0)) {
    throw InputError("no scored reference speech left (collar too large?)");
  }
  report.der = (report.false_alarm_s + report.missed_s + report.confusion_s) / report.scored_s;
  return report;
}

}  // namespace rolecluster
