#include "rolecluster/constraints.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <set>
#include <sstream>
#include <string>

namespace rolecluster {

namespace {

bool eligible(const RolePrediction& prediction, const PropagationParams& params) {
  return prediction.confidence >= params.confidence_threshold &&
         prediction.word_count >= params.min_words;
}

}  // namespace

Matrix build_role_constraints(const std::vector<RolePrediction>& predictions, int n,
                              Scenario scenario, const PropagationParams& params) {
  std::set<int> seen;
  for (const auto& p : predictions) {
    if (p.segment_index < 0 || p.segment_index >= n) {
      throw InputError("role prediction for segment " + std::to_string(p.segment_index) +
                       " is out of range [0," + std::to_string(n) + ")");
    }
    if (!seen.insert(p.segment_index).second) {
      throw InputError("duplicate role prediction for segment " +
                       std::to_string(p.segment_index));
    }
    if (p.confidence < 0.0 || p.confidence > 1.0) {
      throw InputError("confidence out of [0,1] for segment " + std::to_string(p.segment_index));
    }
    if (p.confidence > 0.0 && p.role.empty()) {
      throw InputError("empty role with positive confidence for segment " +
                       std::to_string(p.segment_index));
    }
  }

  Matrix z = Matrix::Zero(n, n);
  if (scenario == Scenario::kNone) {
    return z;
  }
  const bool want_cl = scenario == Scenario::kClOnly || scenario == Scenario::kBoth;
  const bool want_ml = scenario == Scenario::kMlOnly || scenario == Scenario::kBoth;

  for (std::size_t a = 0; a < predictions.size(); ++a) {
    if (!eligible(predictions[a], params)) continue;
    for (std::size_t b = a + 1; b < predictions.size(); ++b) {
      if (!eligible(predictions[b], params)) continue;
      const int i = predictions[a].segment_index;
      const int j = predictions[b].segment_index;
      if (i == j) continue;
      const bool same_role = predictions[a].role == predictions[b].role;
      double value = 0.0;
      if (same_role && want_ml) value = 1.0;
      if (!same_role && want_cl) value = -1.0;
      z(i, j) = value;
      z(j, i) = value;
    }
  }
  return z;
}

Matrix constraints_from_pairs(const std::vector<PairConstraint>& pairs, int n) {
  Matrix z = Matrix::Zero(n, n);
  for (const auto& c : pairs) {
    if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n) {
      throw InputError("constraint (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                       ") is out of range [0," + std::to_string(n) + ")");
    }
    if (c.i == c.j) {
      throw InputError("self constraint on segment " + std::to_string(c.i));
    }
    const double value = c.kind == ConstraintKind::kMustLink ? 1.0 : -1.0;
    const double existing = z(c.i, c.j);
    if (existing != 0.0 && existing != value) {
      throw InputError("conflicting ML/CL constraints for pair (" + std::to_string(c.i) + "," +
                       std::to_string(c.j) + ")");
    }
    z(c.i, c.j) = value;
    z(c.j, c.i) = value;
  }
  return z;
}

Matrix merge_constraint_matrices(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("constraint matrices differ in size");
  }
  Matrix out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (b(i, j) == 0.0) continue;
      if (out(i, j) != 0.0 && out(i, j) != b(i, j)) {
        throw InputError("conflicting ML/CL constraints for pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      out(i, j) = b(i, j);
    }
  }
  return out;
}

Matrix propagate_e2cp(const Matrix& z, const Matrix& w_hat, double alpha) {
  const Eigen::Index n = w_hat.rows();
  if (w_hat.cols() != n || z.rows() != n || z.cols() != n) {
    throw InputError("constraint and affinity matrices must share one size");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw InputError("alpha must be in [0,1], got " + std::to_string(alpha));
  }
  if (alpha == 1.0) {
    return Matrix::Zero(n, n);  // propagation fully discounts the constraints
  }

  Vector degrees = w_hat.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degrees(i) > 0.0)) {
      throw InputError("zero degree at row " + std::to_string(i));
    }
  }
  const Vector dinv_sqrt = degrees.cwiseSqrt().cwiseInverse();
  const Matrix lbar = dinv_sqrt.asDiagonal() * w_hat * dinv_sqrt.asDiagonal();

  Matrix system = Matrix::Identity(n, n) - alpha * lbar;
  Eigen::LDLT<Matrix> solver(system);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "linear solve for constraint propagation failed (alpha=" << alpha
        << ", rcond=" << solver.rcond() << ")";
    throw NumericalError("propagation", msg.str());
  }

  // (I - aL)^-1 Z (I - aL)^-1 as two solves; the system matrix is symmetric.
  const Matrix half = solver.solve(z);
  Matrix f_star = solver.solve(half.transpose()).transpose();
  f_star *= (1.0 - alpha) * (1.0 - alpha);
  return f_star.cwiseMax(-1.0).cwiseMin(1.0);
}

Matrix apply_constraint_update(const Matrix& w_hat, const Matrix& f_star) {
  const Eigen::Index n = w_hat.rows();
  if (w_hat.cols() != n || f_star.rows() != n || f_star.cols() != n) {
    throw InputError("affinity and propagated-constraint matrices must share one size");
  }
  Matrix updated(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double f = f_star(i, j);
      if (f < -1.0 || f > 1.0) {
        throw InternalError("propagated constraint out of [-1,1] at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      }
      const double w = w_hat(i, j);
      updated(i, j) = f >= 0.0 ? 1.0 - (1.0 - f) * (1.0 - w) : (1.0 + f) * w;
    }
  }
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 0.5 * (updated(i, j) + updated(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

int count_constrained_pairs(const Matrix& z) {
  int count = 0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < z.cols(); ++j) {
      if (z(i, j) != 0.0) ++count;
    }
  }
  return count;
}

}  // namespace rolecluster
