#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chirality/linalg.hpp"

namespace chiral {

// Some x with A x ≥ b (x unrestricted), or nullopt if none exists. Exact
// phase-one simplex with Bland's rule.
std::optional<std::vector<Scalar>> find_feasible(const DenseMatrix& a, std::span<const Scalar> b);

// Some x with every entry of A x strictly positive.
std::optional<std::vector<Scalar>> strictly_positive_solution(const DenseMatrix& a);

}  // namespace chiral
