#include "rolecluster/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rolecluster/rng.hpp"

namespace rolecluster {

namespace {

constexpr double kMaxCentroidCosine = 0.3;
constexpr int kMaxRejectionAttempts = 10000;
constexpr int kMinDurationMs = 3000;
constexpr int kMaxDurationMs = 15000;
constexpr int kMinWords = 1;
constexpr int kMaxWords = 45;

void validate(const SynthConfig& config) {
  if (config.n_speakers < 2) throw InputError("n_speakers must be at least 2");
  if (config.segments_per_speaker < 1) throw InputError("segments_per_speaker must be at least 1");
  if (config.dim < 2) throw InputError("dim must be at least 2");
  if (config.noise_sigma < 0.0) throw InputError("noise_sigma must be non-negative");
  if (config.classifier_accuracy_floor < 0.5 || config.classifier_accuracy_floor > 1.0) {
    throw InputError("classifier_accuracy_floor must be in [0.5, 1]");
  }
}

Vector random_unit_vector(int dim, Rng& rng) {
  Vector v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = rng.gaussian();
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

}  // namespace

std::string to_string(RoleScheme scheme) {
  return scheme == RoleScheme::kOneToOne ? "one-to-one" : "host-vs-rest";
}

RoleScheme role_scheme_from_string(const std::string& name) {
  if (name == "one-to-one") return RoleScheme::kOneToOne;
  if (name == "host-vs-rest") return RoleScheme::kHostVsRest;
  throw InputError("unknown role scheme '" + name + "' (expected one-to-one|host-vs-rest)");
}

std::string synth_speaker_name(int speaker) { return "spk" + std::to_string(speaker); }

std::string oracle_role(RoleScheme scheme, int speaker) {
  if (scheme == RoleScheme::kOneToOne) return "role" + std::to_string(speaker);
  return speaker == 0 ? "host" : "non_host";
}

std::string oracle_role_for(RoleScheme scheme, const std::string& speaker_id) {
  if (speaker_id.rfind("spk", 0) != 0) {
    throw InputError("speaker id '" + speaker_id + "' does not follow the spk<i> convention");
  }
  return oracle_role(scheme, std::stoi(speaker_id.substr(3)));
}

SynthSession generate_session(const SynthConfig& config, const std::string& session_id) {
  validate(config);
  Rng rng(config.seed);

  std::vector<Vector> centroids;
  centroids.reserve(config.n_speakers);
  int attempts = 0;
  while (static_cast<int>(centroids.size()) < config.n_speakers) {
    if (++attempts > kMaxRejectionAttempts) {
      throw InputError("could not place " + std::to_string(config.n_speakers) +
                       " speaker centroids with pairwise cosine <= " +
                       std::to_string(kMaxCentroidCosine) + " in dimension " +
                       std::to_string(config.dim));
    }
    Vector candidate = random_unit_vector(config.dim, rng);
    const bool separated = std::all_of(centroids.begin(), centroids.end(), [&](const Vector& c) {
      return candidate.dot(c) <= kMaxCentroidCosine;
    });
    if (separated) centroids.push_back(std::move(candidate));
  }

  SynthSession session;
  session.session_id = session_id;
  const int n_segments = config.n_speakers * config.segments_per_speaker;
  session.segments.reserve(n_segments);
  session.embeddings.reserve(n_segments);
  session.oracle_roles.reserve(n_segments);

  long long clock_ms = 0;
  for (int i = 0; i < n_segments; ++i) {
    const int speaker = i % config.n_speakers;

    Segment segment;
    segment.segment_id = "seg" + std::string(4 - std::min<std::size_t>(4, std::to_string(i).size()), '0') +
                         std::to_string(i);
    const int duration_ms = rng.uniform_int(kMinDurationMs, kMaxDurationMs);
    segment.start_s = static_cast<double>(clock_ms) / 1000.0;
    clock_ms += duration_ms;
    segment.end_s = static_cast<double>(clock_ms) / 1000.0;
    segment.speaker_id = synth_speaker_name(speaker);
    segment.word_count = rng.uniform_int(kMinWords, kMaxWords);
    session.segments.push_back(std::move(segment));

    Vector e = centroids[speaker];
    if (config.noise_sigma > 0.0) {
      for (int d = 0; d < config.dim; ++d) e(d) += config.noise_sigma * rng.gaussian();
    }
    const double norm = e.norm();
    if (norm < 1e-12) {
      // Vanishingly unlikely; keep the draw stream deterministic by reusing the centroid.
      e = centroids[speaker];
    } else {
      e /= norm;
    }
    session.embeddings.push_back(Embedding{i, std::move(e)});

    session.oracle_roles.push_back(oracle_role(config.role_scheme, speaker));
  }
  return session;
}

std::vector<RolePrediction> simulate_role_classifier(const SynthSession& session,
                                                     double accuracy_floor, std::uint64_t seed) {
  if (accuracy_floor < 0.5 || accuracy_floor > 1.0) {
    throw InputError("accuracy_floor must be in [0.5, 1]");
  }
  std::set<std::string> roles(session.oracle_roles.begin(), session.oracle_roles.end());
  if (roles.size() != 2) {
    throw InputError("the simulated classifier supports exactly 2 roles, session has " +
                     std::to_string(roles.size()));
  }

  Rng rng(seed);
  std::vector<RolePrediction> predictions;
  predictions.reserve(session.segments.size());
  for (std::size_t i = 0; i < session.segments.size(); ++i) {
    const std::string& truth = session.oracle_roles[i];
    const std::string& other = *roles.begin() == truth ? *std::next(roles.begin()) : *roles.begin();
    const double reliability = rng.uniform(accuracy_floor, 1.0);
    const bool correct = rng.uniform() < reliability;
    RolePrediction p;
    p.segment_index = static_cast<int>(i);
    p.role = correct ? truth : other;
    p.confidence = reliability;
    p.word_count = session.segments[i].word_count.value_or(0);
    predictions.push_back(std::move(p));
  }
  return predictions;
}

Matrix sample_oracle_constraints(const SynthSession& session, double fraction, Scenario scenario,
                                 std::uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw InputError("fraction must be in [0,1]");
  }
  const int n = static_cast<int>(session.segments.size());
  const bool want_cl = scenario == Scenario::kClOnly || scenario == Scenario::kBoth;
  const bool want_ml = scenario == Scenario::kMlOnly || scenario == Scenario::kBoth;

  std::vector<std::pair<int, int>> eligible;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_role = session.oracle_roles[i] == session.oracle_roles[j];
      if ((same_role && want_ml) || (!same_role && want_cl)) eligible.emplace_back(i, j);
    }
  }

  const int take = static_cast<int>(std::floor(fraction * static_cast<double>(eligible.size())));
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` slots are a uniform sample.
  for (int s = 0; s < take; ++s) {
    const int pick = rng.uniform_int(s, static_cast<int>(eligible.size()) - 1);
    std::swap(eligible[s], eligible[pick]);
  }

  Matrix z = Matrix::Zero(n, n);
  for (int s = 0; s < take; ++s) {
    const auto [i, j] = eligible[s];
    const double value = session.oracle_roles[i] == session.oracle_roles[j] ? 1.0 : -1.0;
    z(i, j) = value;
    z(j, i) = value;
  }
  return z;
}

}  // namespace rolecluster
