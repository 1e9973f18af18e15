#include "rolecluster/pipeline.hpp"

#include <string>
#include <utility>

#include "rolecluster/affinity.hpp"
#include "rolecluster/constraints.hpp"

namespace rolecluster {

namespace {

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NumericalError&) {
    throw;
  } catch (const InputError& e) {
    throw InputError(std::string(stage) + ": " + e.what());
  } catch (const std::exception& e) {
    throw NumericalError(stage, e.what());
  }
}

}  // namespace

ClusterOutcome cluster_session(const std::vector<Embedding>& embeddings,
                               const std::vector<RolePrediction>& predictions,
                               const ClusteringConfig& config,
                               const std::optional<Matrix>& extra_constraints) {
  const int n = static_cast<int>(embeddings.size());

  const Matrix w_hat = run_stage("affinity", [&] { return cosine_affinity(embeddings); });

  PropagationParams params{config.alpha, config.confidence_threshold, config.min_words};
  Matrix z = run_stage("constraints", [&] {
    Matrix role_z = build_role_constraints(predictions, n, config.scenario, params);
    return extra_constraints ? merge_constraint_matrices(role_z, *extra_constraints)
                             : std::move(role_z);
  });

  ClusterOutcome outcome;
  outcome.active_constraints = count_constrained_pairs(z);

  const Matrix f_star =
      run_stage("propagation", [&] { return propagate_e2cp(z, w_hat, config.alpha); });
  const Matrix w_constrained =
      run_stage("constraint-update", [&] { return apply_constraint_update(w_hat, f_star); });

  Matrix refined;
  run_stage("refinement", [&] {
    if (config.fixed_p) {
      outcome.chosen_p = *config.fixed_p;
      refined = symmetrize(p_threshold(w_constrained, *config.fixed_p, config.tau));
    } else {
      AutoTuneResult tuned =
          auto_tune_p(w_constrained, config.tau, config.p_range, config.fixed_k, config.k_range);
      outcome.chosen_p = tuned.p;
      refined = std::move(tuned.refined);
    }
    validate_affinity(refined);
    return 0;
  });

  const Matrix laplacian =
      run_stage("laplacian", [&] { return normalized_laplacian(refined); });
  const LaplacianSpectrum spectrum =
      run_stage("eigendecomposition", [&] { return eigendecompose(laplacian); });

  outcome.chosen_k = run_stage("speaker-count", [&] {
    return config.fixed_k ? *config.fixed_k : estimate_num_speakers(spectrum, config.k_range);
  });
  if (outcome.chosen_k < 1 || outcome.chosen_k > n) {
    throw InputError(std::string("speaker-count: k=") + std::to_string(outcome.chosen_k) +
                     " out of [1," + std::to_string(n) + "]");
  }

  const SpectralEmbedding embedding =
      run_stage("embedding", [&] { return spectral_embed(spectrum, outcome.chosen_k); });
  outcome.degenerate_rows = embedding.zero_rows;

  run_stage("kmeans", [&] {
    if (embedding.zero_rows == 0) {
      outcome.assignment = kmeans(embedding.rows, outcome.chosen_k, config.seed);
      return 0;
    }
    // Zero rows carry no spectral signal: fit on the live rows, then attach
    // each zero row to the nearest centroid.
    std::vector<int> live;
    for (int i = 0; i < n; ++i) {
      if (embedding.rows.row(i).norm() >= 1e-12) live.push_back(i);
    }
    if (static_cast<int>(live.size()) < outcome.chosen_k) {
      throw NumericalError("kmeans", "fewer non-degenerate rows than clusters");
    }
    Matrix live_points(live.size(), embedding.rows.cols());
    for (std::size_t r = 0; r < live.size(); ++r) live_points.row(r) = embedding.rows.row(live[r]);
    ClusterAssignment fit = kmeans(live_points, outcome.chosen_k, config.seed);

    Matrix centroids = Matrix::Zero(outcome.chosen_k, embedding.rows.cols());
    std::vector<int> counts(outcome.chosen_k, 0);
    for (std::size_t r = 0; r < live.size(); ++r) {
      centroids.row(fit.labels[r]) += live_points.row(r);
      ++counts[fit.labels[r]];
    }
    for (int c = 0; c < outcome.chosen_k; ++c) {
      if (counts[c] > 0) centroids.row(c) /= counts[c];
    }

    outcome.assignment.k = outcome.chosen_k;
    outcome.assignment.inertia = fit.inertia;
    outcome.assignment.labels.assign(n, 0);
    for (std::size_t r = 0; r < live.size(); ++r) outcome.assignment.labels[live[r]] = fit.labels[r];
    for (int i = 0; i < n; ++i) {
      if (embedding.rows.row(i).norm() >= 1e-12) continue;
      int best = 0;
      double best_d = (embedding.rows.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < outcome.chosen_k; ++c) {
        const double d = (embedding.rows.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      outcome.assignment.labels[i] = best;
    }
    return 0;
  });

  return outcome;
}

}  // namespace rolecluster
