#ifndef ROLECLUSTER_SWEEP_HPP
#define ROLECLUSTER_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "rolecluster/dataset.hpp"
#include "rolecluster/types.hpp"

namespace rolecluster {

enum class SweepMode { kOracleFraction, kAlpha, kConfThreshold };

SweepMode sweep_mode_from_string(const std::string& name);

struct SweepOptions {
  SweepMode mode = SweepMode::kOracleFraction;
  std::vector<double> grid;
  ClusteringConfig base;            // alpha/tau/p/k/gates shared by all grid points
  Scenario scenario = Scenario::kBoth;  // constraint scenario for sampling/gating
  double fraction = 1.0;            // oracle-constraint fraction for alpha mode
  int jobs = 1;
};

struct SweepRow {
  double mode_value = 0.0;
  double alpha = 0.0;
  double mean_der = 0.0;
  double std_der = 0.0;
  int n_sessions = 0;
  double mean_constraints = 0.0;
  std::optional<double> accuracy;  // conf-threshold mode only
  std::optional<int> support;      // conf-threshold mode only
};

/// Runs the full pipeline over every session for every grid point and scores
/// DER against each session's reference. Deterministic for any jobs count.
std::vector<SweepRow> run_sweep(const Dataset& dataset, const SweepOptions& options);

/// CSV with header mode_value,alpha,mean_der,std_der,n_sessions,mean_constraints
/// (+ accuracy,support in conf-threshold mode), '.' decimals, '\n' endings.
std::string sweep_csv(const std::vector<SweepRow>& rows, SweepMode mode);

/// Grid spec: comma-separated values ("0,0.25,1") or "lo:hi:step" inclusive.
std::vector<double> parse_grid_spec(const std::string& spec);

}  // namespace rolecluster

#endif  // ROLECLUSTER_SWEEP_HPP
