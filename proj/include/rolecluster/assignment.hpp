#ifndef ROLECLUSTER_ASSIGNMENT_HPP
#define ROLECLUSTER_ASSIGNMENT_HPP

#include <vector>

#include "rolecluster/types.hpp"

namespace rolecluster {

/// Maximum-weight one-to-one assignment of rows to columns of a non-negative
/// weight matrix (rectangular allowed). Returns, per row, the assigned column
/// or -1. Unassigned pairs with zero weight are left unmatched.
std::vector<int> max_weight_assignment(const Matrix& weights);

}  // namespace rolecluster

#endif  // ROLECLUSTER_ASSIGNMENT_HPP
