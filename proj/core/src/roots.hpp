#pragma once

#include <span>
#include <vector>

#include "chirality/scalar.hpp"

namespace chiral::detail {

// Coefficients are ordered from the constant term upward.
Scalar evaluate(std::span<const Scalar> poly, const Scalar& x);

// A real root r with lo ≤ r ≤ hi; lo == hi when the root is rational.
struct RootBracket {
  Scalar lo;
  Scalar hi;
};

// Real roots of a polynomial of degree ≤ 2, isolated exactly.
std::vector<RootBracket> real_roots_upto_quadratic(std::span<const Scalar> poly);

// Rational roots of a polynomial of degree ≤ 3 (numerical search, exact confirmation).
std::vector<Scalar> rational_roots_cubic(std::span<const Scalar> poly);

// Rational of least height in the open interval (lo, hi).
Scalar simplest_between(const Scalar& lo, const Scalar& hi);

}  // namespace chiral::detail
