#include "chirality/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "chirality/errors.hpp"

namespace chiral {

Scalar det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Scalar det(const Mat4& m) {
  Scalar total = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    if (m(0, c).is_zero()) continue;
    Mat3 minor;
    for (std::size_t r = 1; r < 4; ++r) {
      std::size_t mc = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        if (k == c) continue;
        minor(r - 1, mc++) = m(r, k);
      }
    }
    Scalar term = m(0, c) * det(minor);
    if (c % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

Mat3 skew(const Vec3& t) {
  return Mat3::from_rows({{0, -t[2], t[1]}, {t[2], 0, -t[0]}, {-t[1], t[0], 0}});
}

Mat3 adjugate(const Mat3& m) {
  // adj = cofactor matrixᵀ; entry (r, c) is the (c, r) cofactor
  Mat3 adj;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      std::size_t r0 = (c + 1) % 3, r1 = (c + 2) % 3;
      std::size_t c0 = (r + 1) % 3, c1 = (r + 2) % 3;
      adj(r, c) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  return adj;
}

Mat3 inverse(const Mat3& m) {
  Scalar d = det(m);
  if (d.is_zero()) throw NumericError("singular 3x3 matrix");
  return adjugate(m) * (Scalar(1) / d);
}

void DenseMatrix::append_row(std::span<const Scalar> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DimensionError("row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Scalar> DenseMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

DenseMatrix::Echelon DenseMatrix::rref() const {
  Echelon e{*this, {}};
  DenseMatrix& m = e.reduced;
  bool exact = std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x.is_exact(); });
  double tol = 0.0;
  if (!exact) {
    double biggest = 0.0;
    for (const Scalar& x : data_) biggest = std::max(biggest, std::fabs(x.to_double()));
    tol = biggest * 1e-10 * static_cast<double>(std::max(rows_, cols_));
  }
  auto negligible = [&](const Scalar& x) {
    return exact ? x.is_zero() : std::fabs(x.to_double()) <= tol;
  };

  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::size_t pick = rows_;
    if (exact) {
      for (std::size_t r = lead; r < rows_; ++r)
        if (!m(r, c).is_zero()) {
          pick = r;
          break;
        }
    } else {
      double best = tol;
      for (std::size_t r = lead; r < rows_; ++r) {
        double v = std::fabs(m(r, c).to_double());
        if (v > best) {
          best = v;
          pick = r;
        }
      }
    }
    if (pick == rows_) {
      for (std::size_t r = lead; r < rows_; ++r)
        if (!exact && negligible(m(r, c))) m(r, c) = Scalar::floating(0.0);
      continue;
    }
    if (pick != lead)
      for (std::size_t k = 0; k < cols_; ++k) std::swap(m(pick, k), m(lead, k));
    Scalar inv = Scalar(1) / m(lead, c);
    for (std::size_t k = c; k < cols_; ++k) m(lead, k) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead || m(r, c).is_zero()) continue;
      Scalar f = m(r, c);
      for (std::size_t k = c; k < cols_; ++k) m(r, k) -= f * m(lead, k);
    }
    e.pivots.push_back(c);
    ++lead;
  }
  return e;
}

std::size_t DenseMatrix::rank() const { return rref().pivots.size(); }

std::vector<std::vector<Scalar>> DenseMatrix::nullspace() const {
  Echelon e = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(cols_, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Scalar> solve_square(const DenseMatrix& a, std::span<const Scalar> b) {
  std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve_square expects a square system");
  DenseMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  DenseMatrix::Echelon e = aug.rref();
  if (e.pivots.size() != n || e.pivots.back() != n - 1) throw NumericError("singular linear system");
  std::vector<Scalar> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = e.reduced(r, n);
  return x;
}

}  // namespace chiral
