#ifndef ROLECLUSTER_SYNTHESIS_HPP
#define ROLECLUSTER_SYNTHESIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

enum class RoleScheme { kOneToOne, kHostVsRest };

std::string to_string(RoleScheme scheme);
RoleScheme role_scheme_from_string(const std::string& name);

struct SynthConfig {
  int n_speakers = 2;
  int segments_per_speaker = 10;
  int dim = 16;
  double noise_sigma = 0.1;
  RoleScheme role_scheme = RoleScheme::kOneToOne;
  double classifier_accuracy_floor = 0.5;
  std::uint64_t seed = 0;
};

struct SynthSession {
  std::string session_id;
  std::vector<Segment> segments;    // timing, oracle speaker, word_count
  std::vector<Embedding> embeddings;
  std::vector<std::string> oracle_roles;  // per segment, by role scheme
};

/// Speaker name used by generated sessions: spk0, spk1, ...
std::string synth_speaker_name(int speaker);

/// True role of a generated speaker under a scheme (role<i>, or host/non_host).
std::string oracle_role(RoleScheme scheme, int speaker);
std::string oracle_role_for(RoleScheme scheme, const std::string& speaker_id);

/// Seeded synthetic session: speaker centroids on the unit sphere with
/// pairwise cosine <= 0.3 (rejection-sampled), per-segment embeddings
/// normalize(centroid + N(0, noise_sigma^2 I)), sequential millisecond-grid
/// timings with durations uniform in [3, 15] s, word counts uniform in
/// [1, 45], round-robin speaker order.
SynthSession generate_session(const SynthConfig& config, const std::string& session_id = "session");

/// Reliability-model classifier: per segment draws r ~ U[accuracy_floor, 1],
/// emits the true role with probability r (the other role otherwise) and
/// reports confidence r. Requires a binary role scheme.
std::vector<RolePrediction> simulate_role_classifier(const SynthSession& session,
                                                     double accuracy_floor, std::uint64_t seed);

/// Z built from floor(fraction * |eligible pairs|) pairs sampled uniformly
/// without replacement, with oracle roles deciding ML/CL under the scenario.
Matrix sample_oracle_constraints(const SynthSession& session, double fraction,
                                 Scenario scenario, std::uint64_t seed);

}  // namespace rolecluster

#endif  // ROLECLUSTER_SYNTHESIS_HPP
