#include "chirality/feasibility.hpp"

#include "chirality/errors.hpp"

namespace chiral {

std::optional<std::vector<Scalar>> find_feasible(const DenseMatrix& a, std::span<const Scalar> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionError("right-hand side size mismatch");
  if (m == 0) return std::vector<Scalar>(n, Scalar(0));

  // columns: x⁺ (n), x⁻ (n), surplus (m), artificial (m), rhs
  const std::size_t art0 = 2 * n + m;
  const std::size_t width = 2 * n + 2 * m;
  DenseMatrix t(m, width + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    Scalar flip = b[i].sign() < 0 ? Scalar(-1) : Scalar(1);
    for (std::size_t j = 0; j < width + 1; ++j) t(i, j) = 0;
    for (std::size_t j = 0; j < n; ++j) {
      t(i, j) = a(i, j) * flip;
      t(i, n + j) = -a(i, j) * flip;
    }
    t(i, 2 * n + i) = -flip;
    t(i, art0 + i) = 1;
    t(i, width) = b[i] * flip;
    basis[i] = art0 + i;
  }
  std::vector<Scalar> cost(width, Scalar(0));
  for (std::size_t j = 0; j < art0; ++j)
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t(i, j);

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Scalar best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter).sign() <= 0) continue;
      Scalar ratio = t(i, width) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot occur in phase one
    Scalar inv = Scalar(1) / t(leave, enter);
    for (std::size_t j = 0; j <= width; ++j) t(leave, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t(i, enter).is_zero()) continue;
      Scalar f = t(i, enter);
      for (std::size_t j = 0; j <= width; ++j) t(i, j) -= f * t(leave, j);
    }
    Scalar f = cost[enter];
    for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t(leave, j);
    basis[leave] = enter;
  }

  std::vector<Scalar> value(width, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) value[basis[i]] = t(i, width);
  for (std::size_t i = 0; i < m; ++i)
    if (value[art0 + i].sign() > 0) return std::nullopt;
  std::vector<Scalar> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = value[j] - value[n + j];
  // guard against float drift
  for (std::size_t i = 0; i < m; ++i) {
    Scalar lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += a(i, j) * x[j];
    if (lhs < b[i] && lhs.is_exact()) return std::nullopt;
  }
  return x;
}

std::optional<std::vector<Scalar>> strictly_positive_solution(const DenseMatrix& a) {
  std::vector<Scalar> ones(a.rows(), Scalar(1));
  return find_feasible(a, ones);
}

}  // namespace chiral
