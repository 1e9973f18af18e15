#ifndef ROLECLUSTER_TYPES_HPP
#define ROLECLUSTER_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rolecluster {

inline constexpr const char* kToolkitVersion = "0.1.0";

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bad user input (files, flags, argument ranges). Mapped to exit code 2 by the CLI.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed. Carries the pipeline stage name; exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// A contract the library itself guarantees was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One speaker-homogeneous speech chunk.
struct Segment {
  std::string segment_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<std::string> speaker_id;  // oracle speaker, when known
  std::optional<std::string> role;        // predicted role
  std::optional<double> role_confidence;
  std::optional<int> word_count;
};

/// Unit-norm speaker representation of one segment.
struct Embedding {
  int segment_index = 0;
  Vector values;
};

struct RolePrediction {
  int segment_index = 0;
  std::string role;
  double confidence = 0.0;
  int word_count = 0;
};

enum class Scenario { kNone, kClOnly, kMlOnly, kBoth };

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);

struct PropagationParams {
  double alpha = 0.5;
  double confidence_threshold = 0.98;
  int min_words = 5;
};

/// Inclusive integer range with a step, e.g. {40, 95, 5} -> 40,45,...,95.
struct IntRange {
  int lo = 0;
  int hi = 0;
  int step = 1;

  std::vector<int> values() const;
};

struct ClusteringConfig {
  Scenario scenario = Scenario::kNone;
  double alpha = 0.5;
  double tau = 0.01;
  std::optional<int> fixed_p;
  IntRange p_range{40, 95, 5};
  std::optional<int> fixed_k;
  IntRange k_range{2, 50, 1};
  double confidence_threshold = 0.98;
  int min_words = 5;
  std::uint64_t seed = 0;
};

struct DerReport {
  double false_alarm_s = 0.0;
  double missed_s = 0.0;
  double confusion_s = 0.0;
  double scored_s = 0.0;
  double der = 0.0;
};

}  // namespace rolecluster

#endif  // ROLECLUSTER_TYPES_HPP
