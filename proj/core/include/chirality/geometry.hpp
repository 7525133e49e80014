#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chirality/linalg.hpp"

namespace chiral {

/// Homogeneous point of the projective plane.
struct HPoint2 {
  Vec3 h;

  HPoint2() = default;
  explicit HPoint2(Vec3 coords) : h(std::move(coords)) {}
  HPoint2(Scalar x, Scalar y, Scalar w) : h{std::move(x), std::move(y), std::move(w)} {}
  static HPoint2 affine(Scalar x, Scalar y) { return {std::move(x), std::move(y), Scalar(1)}; }

  const Scalar& operator[](std::size_t i) const { return h[i]; }
  friend bool operator==(const HPoint2& a, const HPoint2& b) { return a.h == b.h; }
};

// a ∼ b
inline bool same_point(const HPoint2& a, const HPoint2& b) { return proportional(a.h, b.h); }

struct HPoint3 {
  Vec4 h;

  HPoint3() = default;
  explicit HPoint3(Vec4 coords) : h(std::move(coords)) {}
  bool is_finite() const { return !h[3].is_zero(); }
  friend bool operator==(const HPoint3& a, const HPoint3& b) { return a.h == b.h; }
};

inline bool same_point(const HPoint3& a, const HPoint3& b) { return proportional(a.h, b.h); }

/// Projective camera A = [G | t].
class Camera {
 public:
  Camera() = default;
  explicit Camera(Mat34 a);  // throws RankError when rank(A) < 3
  static Camera from_parts(const Mat3& g, const Vec3& t);

  const Mat34& matrix() const { return a_; }
  Mat3 left_block() const;
  Vec3 last_column() const { return a_.col(3); }
  bool is_finite() const { return !det(left_block()).is_zero(); }

  // Cramer's-rule generator of the kernel; equals det(G)·(−G⁻¹t, 1) for finite cameras.
  Vec4 center() const;
  // det(G) times the third row of A.
  Vec4 principal_ray() const;

  Vec3 project(const HPoint3& q) const { return a_ * q.h; }

 private:
  Mat34 a_;
};

int depth_sign(const HPoint3& q, const Camera& camera);

Scalar det3(const HPoint2& a, const HPoint2& b, const HPoint2& c);
int rank_of_points(std::span<const HPoint2> points);

struct ConeCoefficients {
  Scalar first;
  Scalar second;
};
// w = λ₁a + λ₂b with λ₁, λ₂ ≥ 0, when it exists.
std::optional<ConeCoefficients> cone_member(const Vec3& w, const Vec3& a, const Vec3& b);

struct PointPair {
  HPoint2 u;
  HPoint2 v;
};

/// Ordered point pairs (u_i, v_i); validated on construction.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::vector<PointPair> pairs);
  static PairSet from_affine(std::span<const std::pair<std::pair<Scalar, Scalar>, std::pair<Scalar, Scalar>>> pairs);

  std::size_t size() const { return pairs_.size(); }
  const PointPair& operator[](std::size_t i) const { return pairs_[i]; }
  const HPoint2& u(std::size_t i) const { return pairs_[i].u; }
  const HPoint2& v(std::size_t i) const { return pairs_[i].v; }
  const std::vector<PointPair>& pairs() const { return pairs_; }

  std::vector<HPoint2> u_points() const;
  std::vector<HPoint2> v_points() const;
  PairSet subset(std::span<const std::size_t> indices) const;
  PairSet without(std::size_t index) const;
  // Exchange the two images.
  PairSet swapped() const;

 private:
  std::vector<PointPair> pairs_;
};

}  // namespace chiral
