#ifndef ROLECLUSTER_CONSTRAINTS_HPP
#define ROLECLUSTER_CONSTRAINTS_HPP

#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

enum class ConstraintKind { kMustLink, kCannotLink };

/// One explicit pairwise constraint, e.g. a row of a constraints CSV.
struct PairConstraint {
  int i = 0;
  int j = 0;
  ConstraintKind kind = ConstraintKind::kMustLink;
};

/// Builds the n x n constraint matrix Z from confidence-gated role
/// predictions. A segment is eligible iff confidence >= threshold and
/// word_count >= min_words; eligible pairs get -1 (roles differ, CL scenarios)
/// or +1 (roles equal, ML scenarios). Z is symmetric with a zero diagonal.
Matrix build_role_constraints(const std::vector<RolePrediction>& predictions, int n,
                              Scenario scenario, const PropagationParams& params);

/// Z matrix from an explicit pair list. Conflicting duplicates are rejected.
Matrix constraints_from_pairs(const std::vector<PairConstraint>& pairs, int n);

/// Entrywise merge of two constraint matrices. A nonzero entry wins over a
/// zero; opposing nonzero entries are an input error.
Matrix merge_constraint_matrices(const Matrix& a, const Matrix& b);

/// Propagates Z over the session graph:
///   F* = (1-alpha)^2 (I - alpha*Lbar)^-1 Z (I - alpha*Lbar)^-1,
/// with Lbar = Dbar^-1/2 What Dbar^-1/2, computed as two linear solves and
/// clamped entrywise to [-1, 1]. alpha = 1 yields the zero matrix.
Matrix propagate_e2cp(const Matrix& z, const Matrix& w_hat, double alpha);

/// Folds propagated constraints into the affinity:
///   W_ij = 1 - (1 - F*_ij)(1 - What_ij)  when F*_ij >= 0,
///   W_ij = (1 + F*_ij) * What_ij         otherwise,
/// then re-symmetrizes and resets the diagonal to 1.
Matrix apply_constraint_update(const Matrix& w_hat, const Matrix& f_star);

/// Number of constrained pairs (nonzero strict-upper-triangle entries).
int count_constrained_pairs(const Matrix& z);

}  // namespace rolecluster

#endif  // ROLECLUSTER_CONSTRAINTS_HPP
