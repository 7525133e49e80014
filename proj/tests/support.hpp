#pragma once

// Independent oracles for the tests. Everything in namespace oracle works on
// plain mpq_class values and never calls into the library.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "chirality/decide.hpp"
#include "chirality/geometry.hpp"
#include "chirality/io.hpp"

namespace oracle {

using Q = mpq_class;
using V3 = std::array<Q, 3>;
using V4 = std::array<Q, 4>;
using M3 = std::array<V3, 3>;  // rows

inline int sgn(const Q& x) { return ::sgn(x); }

inline Q det3(const V3& a, const V3& b, const V3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1]);
}

inline Q det3(const M3& m) { return det3(m[0], m[1], m[2]); }

// Columns a, b, c, d.
inline Q det4(const V4& a, const V4& b, const V4& c, const V4& d) {
  std::array<V4, 4> cols{a, b, c, d};
  Q total = 0;
  int sign = 1;
  for (std::size_t row = 0; row < 4; ++row) {
    std::array<V3, 3> minor;
    for (std::size_t c = 0; c < 3; ++c) {
      std::size_t r2 = 0;
      for (std::size_t r = 0; r < 4; ++r)
        if (r != row) minor[c][r2++] = cols[c][r];
    }
    total += sign * cols[3][row] * det3(minor[0], minor[1], minor[2]);
    sign = -sign;
  }
  // cofactor signs along the last column are (−1)^(row+3)
  return -total;
}

inline V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Q dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline V3 mul(const M3& m, const V3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

inline V3 column(const M3& m, std::size_t c) { return {m[0][c], m[1][c], m[2][c]}; }

inline bool is_zero(const V3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

inline Q D(const V3& ui, const V3& uj, const V3& u, const V3& vi, const V3& vj, const V3& v) {
  return det3(ui, uj, u) * det3(vi, vj, v);
}

// Some generator of the left kernel of a rank-two matrix, sign arbitrary.
inline V3 left_kernel(const M3& x) {
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) {
      V3 t = cross(column(x, a), column(x, b));
      if (!is_zero(t)) return t;
    }
  return {0, 0, 0};
}

inline Q g(const M3& x, const V3& t, const V3& u, const V3& v) { return dot(cross(t, v), mul(x, u)); }

// sign(g_i g_j), which does not depend on the choice of t.
inline int product_sign(const M3& x, const V3& ui, const V3& vi, const V3& uj, const V3& vj) {
  V3 t = left_kernel(x);
  return sgn(g(x, t, ui, vi)) * sgn(g(x, t, uj, vj));
}

// Rank by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Q>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Q f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

inline std::vector<Q> epipolar_row(const V3& u, const V3& v) {
  std::vector<Q> row(9);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) row[3 * r + c] = v[r] * u[c];
  return row;
}

/// Camera [G | t] with depth sign(det G)·(Aq)₃·q₄.
struct Cam {
  M3 g;
  V3 t;
  V3 project(const V4& q) const {
    V3 out;
    for (std::size_t r = 0; r < 3; ++r) out[r] = g[r][0] * q[0] + g[r][1] * q[1] + g[r][2] * q[2] + t[r] * q[3];
    return out;
  }
  int depth(const V4& q) const { return sgn(det3(g)) * sgn(project(q)[2]) * sgn(q[3]); }
};

}  // namespace oracle

namespace testing_support {

using chiral::HPoint2;
using chiral::PairSet;
using chiral::PointPair;
using chiral::Scalar;

inline Scalar S(const mpq_class& q) { return Scalar(q); }
inline mpq_class Q(const Scalar& s) { return s.rational(); }

inline oracle::V3 V(const HPoint2& p) { return {Q(p[0]), Q(p[1]), Q(p[2])}; }
inline oracle::V3 V(const chiral::Vec3& p) { return {Q(p[0]), Q(p[1]), Q(p[2])}; }
inline oracle::M3 M(const chiral::Mat3& m) {
  oracle::M3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = Q(m(r, c));
  return out;
}

inline HPoint2 P(const oracle::V3& v) { return HPoint2(S(v[0]), S(v[1]), S(v[2])); }

// {ux, uy, vx, vy} rows of affine coordinates.
inline PairSet affine_pairs(std::initializer_list<std::array<long, 4>> rows) {
  std::vector<PointPair> pairs;
  for (const auto& r : rows) pairs.push_back({HPoint2::affine(r[0], r[1]), HPoint2::affine(r[2], r[3])});
  return PairSet(std::move(pairs));
}

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CHIRALITY_TEST_DATA) / name;
}

inline PairSet load(const std::string& name) { return chiral::read_input_file(data_path(name)).pairs; }

inline PairSet nonchiral_five() { return affine_pairs({{0, 0, 2, 1}, {0, 4, 2, 3}, {4, 0, 4, 0}, {2, 1, 0, 4}, {2, 3, 1, 1}}); }
inline PairSet chiral_five() { return affine_pairs({{0, 0, 2, 1}, {0, 4, 2, 3}, {4, 0, 4, 0}, {2, 1, 0, 4}, {2, 3, 4, 4}}); }
inline PairSet running() {
  return affine_pairs({{0, 1, 3, 0}, {0, 0, 5, 0}, {1, 1, -1, -2}, {1, 2, -3, -2}, {2, -1, 1, 4}});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  mpq_class rational(long span, long den) {
    mpq_class q(integer(-span * den, span * den), integer(1, den));
    q.canonicalize();
    return q;
  }
  oracle::V3 vec(long span, long den = 1) { return {rational(span, den), rational(span, den), rational(span, den)}; }
  oracle::M3 mat(long span, long den = 1) { return {vec(span, den), vec(span, den), vec(span, den)}; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Affine pair set from random small integers; resamples until valid.
inline PairSet random_pairs(Rng& rng, std::size_t k, long span = 6) {
  for (;;) {
    std::vector<PointPair> pairs;
    for (std::size_t i = 0; i < k; ++i)
      pairs.push_back({HPoint2::affine(rng.integer(-span, span), rng.integer(-span, span)),
                       HPoint2::affine(rng.integer(-span, span), rng.integer(-span, span))});
    try {
      return PairSet(std::move(pairs));
    } catch (const chiral::Error&) {
    }
  }
}

// Affine points on the line through a with direction d, at distinct integer steps.
inline std::vector<HPoint2> points_on_line(Rng& rng, std::size_t count, long span = 6) {
  long ax = rng.integer(-span, span), ay = rng.integer(-span, span);
  long dx = 0, dy = 0;
  while (dx == 0 && dy == 0) {
    dx = rng.integer(-2, 2);
    dy = rng.integer(-2, 2);
  }
  std::vector<long> steps;
  while (steps.size() < count) {
    long s = rng.integer(-5, 5);
    if (std::find(steps.begin(), steps.end(), s) == steps.end()) steps.push_back(s);
  }
  std::vector<HPoint2> out;
  for (long s : steps) out.push_back(HPoint2::affine(ax + s * dx, ay + s * dy));
  return out;
}

/// A chiral scene: two finite cameras and points in front of both.
struct Scene {
  oracle::Cam first;
  oracle::Cam second;
  std::vector<oracle::V4> points;
  PairSet pairs;
};

inline Scene random_scene(Rng& rng, std::size_t k) {
  for (;;) {
    Scene s;
    s.first = {{oracle::V3{1, 0, 0}, oracle::V3{0, 1, 0}, oracle::V3{0, 0, 1}}, {0, 0, 0}};
    s.second = {rng.mat(4), rng.vec(4)};
    if (oracle::det3(s.second.g) == 0) continue;
    std::vector<PointPair> pairs;
    int attempts = 0;
    while (s.points.size() < k && ++attempts < 2000) {
      oracle::V4 q{rng.rational(5, 3), rng.rational(5, 3), rng.rational(5, 3), 1};
      if (s.first.depth(q) <= 0 || s.second.depth(q) <= 0) continue;
      oracle::V3 u = s.first.project(q), v = s.second.project(q);
      u = {u[0] / u[2], u[1] / u[2], 1};
      v = {v[0] / v[2], v[1] / v[2], 1};
      s.points.push_back(q);
      pairs.push_back({P(u), P(v)});
    }
    if (s.points.size() < k) continue;
    try {
      s.pairs = PairSet(std::move(pairs));
      return s;
    } catch (const chiral::Error&) {
    }
  }
}

// Independent check of a witness: exact reprojection up to scale and
// positive depth of every point in both cameras.
inline bool oracle_verifies(const chiral::Reconstruction& r, const PairSet& pairs) {
  auto cam = [](const chiral::Camera& c) {
    oracle::Cam out;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) out.g[i][j] = Q(c.matrix()(i, j));
      out.t[i] = Q(c.matrix()(i, 3));
    }
    return out;
  };
  oracle::Cam a = cam(r.first), b = cam(r.second);
  if (oracle::det3(a.g) == 0 || oracle::det3(b.g) == 0) return false;
  if (r.points.size() != pairs.size()) return false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    oracle::V4 q{Q(r.points[i].h[0]), Q(r.points[i].h[1]), Q(r.points[i].h[2]), Q(r.points[i].h[3])};
    oracle::V3 pu = a.project(q), pv = b.project(q);
    oracle::V3 u = V(pairs.u(i)), v = V(pairs.v(i));
    if (!oracle::is_zero(oracle::cross(pu, u)) || !oracle::is_zero(oracle::cross(pv, v))) return false;
    if (oracle::is_zero(pu) || oracle::is_zero(pv)) return false;
    if (a.depth(q) <= 0 || b.depth(q) <= 0) return false;
  }
  return true;
}

}  // namespace testing_support
