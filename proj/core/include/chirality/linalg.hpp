#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "chirality/scalar.hpp"

namespace chiral {

template <std::size_t N>
struct Vec {
  std::array<Scalar, N> c{};

  Vec() = default;
  Vec(std::initializer_list<Scalar> values) {
    std::size_t i = 0;
    for (const Scalar& v : values) c[i++] = v;
  }

  Scalar& operator[](std::size_t i) { return c[i]; }
  const Scalar& operator[](std::size_t i) const { return c[i]; }
  static constexpr std::size_t size() { return N; }

  bool is_zero() const {
    for (const Scalar& x : c)
      if (!x.is_zero()) return false;
    return true;
  }

  Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(const Scalar& s) {
    for (Scalar& x : c) x *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const Scalar& s) { return a *= s; }
  friend Vec operator*(const Scalar& s, Vec a) { return a *= s; }
  Vec operator-() const {
    Vec r = *this;
    for (Scalar& x : r.c) x = -x;
    return r;
  }
  friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
};

using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

template <std::size_t N>
Scalar dot(const Vec<N>& a, const Vec<N>& b) {
  Scalar s = a[0] * b[0];
  for (std::size_t i = 1; i < N; ++i) s += a[i] * b[i];
  return s;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Equal up to a nonzero scale (all 2x2 minors vanish).
template <std::size_t N>
bool proportional(const Vec<N>& a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

/// Row-major fixed-size matrix.
template <std::size_t R, std::size_t C>
struct Mat {
  std::array<Scalar, R * C> a{};

  Scalar& operator()(std::size_t r, std::size_t c) { return a[r * C + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a[r * C + c]; }
  static constexpr std::size_t rows() { return R; }
  static constexpr std::size_t cols() { return C; }

  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < R && i < C; ++i) m(i, i) = 1;
    return m;
  }
  static Mat from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    Mat m;
    std::size_t r = 0;
    for (const auto& row : rows) {
      std::size_t c = 0;
      for (const Scalar& x : row) m(r, c++) = x;
      ++r;
    }
    return m;
  }
  static Mat from_flat(std::span<const Scalar> flat) {
    Mat m;
    for (std::size_t i = 0; i < R * C; ++i) m.a[i] = flat[i];
    return m;
  }

  Vec<C> row(std::size_t r) const {
    Vec<C> v;
    for (std::size_t c = 0; c < C; ++c) v[c] = (*this)(r, c);
    return v;
  }
  Vec<R> col(std::size_t c) const {
    Vec<R> v;
    for (std::size_t r = 0; r < R; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_row(std::size_t r, const Vec<C>& v) {
    for (std::size_t c = 0; c < C; ++c) (*this)(r, c) = v[c];
  }
  void set_col(std::size_t c, const Vec<R>& v) {
    for (std::size_t r = 0; r < R; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    for (const Scalar& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  Mat<C, R> transpose() const {
    Mat<C, R> t;
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < R * C; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < R * C; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(const Scalar& s) {
    for (Scalar& x : a) x *= s;
    return *this;
  }
  friend Mat operator+(Mat x, const Mat& y) { return x += y; }
  friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
  friend Mat operator*(Mat x, const Scalar& s) { return x *= s; }
  friend Mat operator*(const Scalar& s, Mat x) { return x *= s; }
  Mat operator-() const { return *this * Scalar(-1); }
  friend bool operator==(const Mat& x, const Mat& y) { return x.a == y.a; }
};

using Mat3 = Mat<3, 3>;
using Mat34 = Mat<3, 4>;
using Mat4 = Mat<4, 4>;

template <std::size_t R, std::size_t K, std::size_t C>
Mat<R, C> operator*(const Mat<R, K>& x, const Mat<K, C>& y) {
  Mat<R, C> m;
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) {
      Scalar s = x(r, 0) * y(0, c);
      for (std::size_t k = 1; k < K; ++k) s += x(r, k) * y(k, c);
      m(r, c) = s;
    }
  return m;
}

template <std::size_t R, std::size_t C>
Vec<R> operator*(const Mat<R, C>& m, const Vec<C>& v) {
  Vec<R> out;
  for (std::size_t r = 0; r < R; ++r) {
    Scalar s = m(r, 0) * v[0];
    for (std::size_t c = 1; c < C; ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

// vᵀ·M
template <std::size_t R, std::size_t C>
Vec<C> left_mul(const Vec<R>& v, const Mat<R, C>& m) {
  Vec<C> out;
  for (std::size_t c = 0; c < C; ++c) {
    Scalar s = v[0] * m(0, c);
    for (std::size_t r = 1; r < R; ++r) s += v[r] * m(r, c);
    out[c] = s;
  }
  return out;
}

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = a[r] * b[c];
  return m;
}

// Frobenius pairing ⟨X, Y⟩ = Tr(XᵀY).
template <std::size_t R, std::size_t C>
Scalar frobenius(const Mat<R, C>& x, const Mat<R, C>& y) {
  Scalar s = x.a[0] * y.a[0];
  for (std::size_t i = 1; i < R * C; ++i) s += x.a[i] * y.a[i];
  return s;
}

template <std::size_t R, std::size_t C>
bool proportional(const Mat<R, C>& x, const Mat<R, C>& y) {
  Vec<R * C> a, b;
  for (std::size_t i = 0; i < R * C; ++i) {
    a[i] = x.a[i];
    b[i] = y.a[i];
  }
  return proportional(a, b);
}

Scalar det(const Mat3& m);
Scalar det(const Mat4& m);
Mat3 skew(const Vec3& t);
Mat3 adjugate(const Mat3& m);
Mat3 inverse(const Mat3& m);  // throws NumericError when singular

// Variable-size matrix used for elimination.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(std::span<const Scalar> row);
  std::vector<Scalar> row(std::size_t r) const;

  struct Echelon;
  // Reduced row echelon form. In float mode pivots below a relative
  // threshold count as zero.
  Echelon rref() const;
  std::size_t rank() const;
  // Basis of {x : M x = 0}; one vector per free column with a 1 in it.
  std::vector<std::vector<Scalar>> nullspace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct DenseMatrix::Echelon {
  DenseMatrix reduced;
  std::vector<std::size_t> pivots;
};

// Solve A x = b for square nonsingular A. Throws NumericError when singular.
std::vector<Scalar> solve_square(const DenseMatrix& a, std::span<const Scalar> b);

template <std::size_t N>
std::string to_string(const Vec<N>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace chiral
