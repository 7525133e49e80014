#include "chirality/geometry.hpp"

#include "chirality/errors.hpp"

namespace chiral {

Camera::Camera(Mat34 a) : a_(std::move(a)) {
  DenseMatrix m(3, 4);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = a_(r, c);
  if (m.rank() != 3) throw RankError("camera matrix must have rank 3");
}

Camera Camera::from_parts(const Mat3& g, const Vec3& t) {
  Mat34 a;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = g(r, c);
    a(r, 3) = t[r];
  }
  return Camera(a);
}

Mat3 Camera::left_block() const {
  Mat3 g;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) g(r, c) = a_(r, c);
  return g;
}

Vec4 Camera::center() const {
  Vec4 c;
  for (std::size_t drop = 0; drop < 4; ++drop) {
    Mat3 minor;
    for (std::size_t r = 0; r < 3; ++r) {
      std::size_t mc = 0;
      for (std::size_t k = 0; k < 4; ++k)
        if (k != drop) minor(r, mc++) = a_(r, k);
    }
    // sign chosen so that the last entry is det(G)
    Scalar d = det(minor);
    c[drop] = ((3 - drop) % 2 == 0) ? d : -d;
  }
  return c;
}

Vec4 Camera::principal_ray() const {
  Scalar d = det(left_block());
  Vec4 n;
  for (std::size_t k = 0; k < 4; ++k) n[k] = d * a_(2, k);
  return n;
}

int depth_sign(const HPoint3& q, const Camera& camera) {
  if (!q.is_finite()) throw InfinitePoint("depth of a point at infinity");
  if (!camera.is_finite()) throw InfiniteCamera("depth for an infinite camera");
  return dot(camera.principal_ray(), q.h).sign() * q.h[3].sign();
}

Scalar det3(const HPoint2& a, const HPoint2& b, const HPoint2& c) { return dot(cross(a.h, b.h), c.h); }

int rank_of_points(std::span<const HPoint2> points) {
  DenseMatrix m(3, points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t r = 0; r < 3; ++r) m(r, j) = points[j].h[r];
  return static_cast<int>(m.rank());
}

std::optional<ConeCoefficients> cone_member(const Vec3& w, const Vec3& a, const Vec3& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidInput("cone generators are both zero");
  DenseMatrix m(3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    m(r, 0) = a[r];
    m(r, 1) = b[r];
    m(r, 2) = w[r];
  }
  DenseMatrix::Echelon e = m.rref();
  // inconsistent system: pivot in the augmented column
  for (std::size_t p : e.pivots)
    if (p == 2) return std::nullopt;
  Scalar l1 = 0, l2 = 0;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == 0) l1 = e.reduced(i, 2);
    if (e.pivots[i] == 1) l2 = e.reduced(i, 2);
  }
  if (e.pivots.size() == 1 && e.pivots[0] == 0 && !(e.reduced(0, 1).is_zero())) {
    // a ∥ b: w = l1·a with free λ₂; look for a nonnegative split
    Scalar ratio = e.reduced(0, 1);  // b = ratio·a
    if (l1.sign() >= 0) return ConeCoefficients{l1, 0};
    if (ratio.sign() < 0) return ConeCoefficients{0, l1 / ratio};
    return std::nullopt;
  }
  if (l1.sign() < 0 || l2.sign() < 0) return std::nullopt;
  return ConeCoefficients{l1, l2};
}

PairSet::PairSet(std::vector<PointPair> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].u.h[2] != Scalar(1) || pairs_[i].v.h[2] != Scalar(1))
      throw InvalidInput("data points must have last coordinate 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (same_point(pairs_[i].u, pairs_[j].u))
        throw InvalidInput("u points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
      if (same_point(pairs_[i].v, pairs_[j].v))
        throw InvalidInput("v points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
    }
  }
}

PairSet PairSet::from_affine(
    std::span<const std::pair<std::pair<Scalar, Scalar>, std::pair<Scalar, Scalar>>> pairs) {
  std::vector<PointPair> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs)
    out.push_back({HPoint2::affine(u.first, u.second), HPoint2::affine(v.first, v.second)});
  return PairSet(std::move(out));
}

std::vector<HPoint2> PairSet::u_points() const {
  std::vector<HPoint2> out;
  for (const PointPair& p : pairs_) out.push_back(p.u);
  return out;
}

std::vector<HPoint2> PairSet::v_points() const {
  std::vector<HPoint2> out;
  for (const PointPair& p : pairs_) out.push_back(p.v);
  return out;
}

PairSet PairSet::subset(std::span<const std::size_t> indices) const {
  std::vector<PointPair> out;
  for (std::size_t i : indices) out.push_back(pairs_.at(i));
  return PairSet(std::move(out));
}

PairSet PairSet::without(std::size_t index) const {
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    if (i != index) out.push_back(pairs_[i]);
  return PairSet(std::move(out));
}

PairSet PairSet::swapped() const {
  std::vector<PointPair> out;
  for (const PointPair& p : pairs_) out.push_back({p.v, p.u});
  return PairSet(std::move(out));
}

}  // namespace chiral
