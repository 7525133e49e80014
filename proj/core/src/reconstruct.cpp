#include "chirality/reconstruct.hpp"

#include <array>

#include "chirality/chirality.hpp"
#include "chirality/errors.hpp"
#include "chirality/feasibility.hpp"

namespace chiral {
namespace {

const Vec4 kInfinityPlane{0, 0, 0, 1};

Mat4 inverse4(const Mat4& h) {
  DenseMatrix aug(4, 8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      aug(r, c) = h(r, c);
      aug(r, 4 + c) = Scalar(r == c ? 1 : 0);
    }
  DenseMatrix::Echelon e = aug.rref();
  if (e.pivots.size() != 4 || e.pivots[3] != 3) throw NumericError("singular 4x4 matrix");
  Mat4 inv;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) inv(r, c) = e.reduced(r, 4 + c);
  return inv;
}

void fill_depths(Reconstruction& r) {
  r.depth1.clear();
  r.depth2.clear();
  for (const HPoint3& q : r.points) {
    bool finite = q.is_finite() && r.first.is_finite() && r.second.is_finite();
    r.depth1.push_back(finite ? depth_sign(q, r.first) : 0);
    r.depth2.push_back(finite ? depth_sign(q, r.second) : 0);
  }
}

}  // namespace

Factorization factor_fundamental(const FundamentalCandidate& x) {
  const Vec3& t = x.left_kernel();
  Mat3 g0 = -(skew(t) * x.matrix()) * (Scalar(1) / dot(t, t));
  const std::array<Vec3, 4> extra{x.right_kernel(), Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  for (const Vec3& a : extra) {
    Mat3 g = g0 + outer(t, a);
    if (!det(g).is_zero()) return {g, t};
  }
  throw RankError("could not complete the factorization to an invertible G");
}

Triangulation triangulate(const Camera& first, const Camera& second, const PointPair& pair, int baseline_sign) {
  DenseMatrix m(6, 6);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      m(r, c) = first.matrix()(r, c);
      m(3 + r, c) = second.matrix()(r, c);
    }
    m(r, 4) = -pair.u.h[r];
    m(r, 5) = 0;
    m(3 + r, 4) = 0;
    m(3 + r, 5) = -pair.v.h[r];
  }
  auto null = m.nullspace();
  if (null.size() == 1) {
    const auto& s = null[0];
    Triangulation out{HPoint3(Vec4{s[0], s[1], s[2], s[3]}), s[4], s[5], false};
    if (out.w1.is_zero() || out.w2.is_zero()) throw IrregularPair("pair is not regular for these cameras");
    return out;
  }
  if (null.size() != 2) throw IrregularPair("triangulation system has no usable solution");

  // epipole pair: pick c₁ + βc₂ on the baseline
  Vec4 c1 = first.center();
  Vec4 c2 = second.center();
  int base = dot(first.principal_ray(), c2).sign() * dot(second.principal_ray(), c1).sign();
  if (base == 0 || baseline_sign == 0) throw IrregularPair("no baseline point with the requested depth sign");
  for (int denom = 1; denom <= 4; ++denom) {
    Scalar beta = Scalar(base * baseline_sign, denom);
    HPoint3 q(c1 + c2 * beta);
    if (!q.is_finite()) continue;
    Vec3 p1 = first.project(q);
    Vec3 p2 = second.project(q);
    Triangulation out{q, p1[2] / pair.u.h[2], p2[2] / pair.v.h[2], true};
    if (out.w1.is_zero() || out.w2.is_zero()) continue;
    return out;
  }
  throw IrregularPair("no finite baseline point found");
}

ChiralCertificate verify_chiral(const Reconstruction& r) {
  ChiralCertificate cert;
  cert.passed = true;
  if (!r.first.is_finite() || !r.second.is_finite()) {
    cert.passed = false;
    cert.violation = "camera is not finite";
    return cert;
  }
  if (proportional(r.first.center(), r.second.center())) {
    cert.passed = false;
    cert.violation = "camera centers coincide";
    return cert;
  }
  Vec4 n1 = r.first.principal_ray();
  Vec4 n2 = r.second.principal_ray();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const Vec4& q = r.points[i].h;
    int inf = dot(kInfinityPlane, q).sign();
    int s1 = dot(n1, q).sign();
    int s2 = dot(n2, q).sign();
    PointProducts p{inf * s1, inf * s2, s1 * s2};
    cert.points.push_back(p);
    if (cert.passed) {
      const char* which = p.inf_first < 0    ? "(n_inf.q)(n1.q)"
                          : p.inf_second < 0 ? "(n_inf.q)(n2.q)"
                          : p.first_second < 0 ? "(n1.q)(n2.q)"
                                               : nullptr;
      if (which) {
        cert.passed = false;
        cert.violation = std::string("point ") + std::to_string(i + 1) + ": " + which + " < 0";
      }
    }
  }
  return cert;
}

bool reprojection_exact(const Reconstruction& r, const PairSet& pairs) {
  if (r.points.size() != pairs.size()) return false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (r.w1[i].is_zero() || r.w2[i].is_zero()) return false;
    if (!(r.first.project(r.points[i]) == pairs.u(i).h * r.w1[i])) return false;
    if (!(r.second.project(r.points[i]) == pairs.v(i).h * r.w2[i])) return false;
  }
  return true;
}

Reconstruction transform(const Reconstruction& r, const Mat4& h, const PairSet& pairs) {
  Mat4 inv = inverse4(h);
  Reconstruction out;
  out.first = Camera(r.first.matrix() * inv);
  out.second = Camera(r.second.matrix() * inv);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    HPoint3 q(h * r.points[i].h);
    out.points.push_back(q);
    out.w1.push_back(out.first.project(q)[2] / pairs.u(i).h[2]);
    out.w2.push_back(out.second.project(q)[2] / pairs.v(i).h[2]);
  }
  fill_depths(out);
  return out;
}

Mat4 chiral_upgrade(const Reconstruction& r) {
  Vec4 n1 = r.first.principal_ray();
  Vec4 n2 = r.second.principal_ray();
  int sigma = 0;
  std::vector<Vec4> oriented;
  for (const HPoint3& q : r.points) {
    int s1 = dot(n1, q.h).sign();
    int s2 = dot(n2, q.h).sign();
    int s = s1 * s2;
    if (s != 0) {
      if (sigma != 0 && s != sigma) throw UpgradeInfeasible("depth products (n1.q)(n2.q) have mixed signs");
      sigma = s;
    }
    if (s1 != 0) {
      oriented.push_back(q.h * Scalar(s1));
    } else if (s2 != 0) {
      oriented.push_back(q.h * Scalar(s2));
    }
  }

  const Vec4 c1 = r.first.center();
  const Vec4 c2 = r.second.center();
  const Vec4 e4{0, 0, 0, 1};
  // A point set with consistent depth products is separated from both
  // centers by some plane; the orientation of the centers relative to it
  // is one of eight cases, all tried exactly.
  for (int s : {1, -1})
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        DenseMatrix a(0, 4);
        for (const Vec4& q : oriented) a.append_row(q.c);
        a.append_row((c1 * Scalar(e1)).c);
        a.append_row((c2 * Scalar(e2)).c);
        a.append_row((e4 * Scalar(s)).c);
        auto h = strictly_positive_solution(a);
        if (!h) continue;
        Mat4 m = Mat4::identity();
        for (std::size_t c = 0; c < 4; ++c) m(3, c) = (*h)[c];
        Reconstruction probe;
        probe.first = Camera(r.first.matrix() * inverse4(m));
        probe.second = Camera(r.second.matrix() * inverse4(m));
        for (const HPoint3& q : r.points) probe.points.push_back(HPoint3(m * q.h));
        if (verify_chiral(probe).passed) return m;
      }
  throw UpgradeInfeasible("no separating plane yields a chiral reconstruction");
}

Reconstruction reconstruct_from_X(const PairSet& pairs, const FundamentalCandidate& x) {
  ChiralSignTable table = sign_table(x, pairs);
  if (!table.feasible) throw NotFeasible("X is not in the chiral epipolar region");
  Factorization f = factor_fundamental(x);
  Reconstruction r;
  r.first = Camera::from_parts(Mat3::identity(), Vec3{0, 0, 0});
  r.second = Camera::from_parts(f.g, f.t);

  Vec4 n1 = r.first.principal_ray();
  Vec4 n2 = r.second.principal_ray();
  std::vector<std::optional<Triangulation>> tri(pairs.size());
  int positive = 0, negative = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if ((x.matrix() * pairs.u(i).h).is_zero()) continue;  // epipole pair, placed below
    tri[i] = triangulate(r.first, r.second, pairs[i]);
    int s = dot(n1, tri[i]->q.h).sign() * dot(n2, tri[i]->q.h).sign();
    if (s > 0) ++positive;
    if (s < 0) ++negative;
  }
  int sigma = negative > positive ? -1 : 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!tri[i]) tri[i] = triangulate(r.first, r.second, pairs[i], sigma);
    r.points.push_back(tri[i]->q);
    r.w1.push_back(tri[i]->w1);
    r.w2.push_back(tri[i]->w2);
  }
  fill_depths(r);
  Reconstruction upgraded = transform(r, chiral_upgrade(r), pairs);
  ChiralCertificate cert = verify_chiral(upgraded);
  if (!cert.passed) throw NotFeasible("upgraded reconstruction failed verification: " + cert.violation);
  if (upgraded.first.matrix()(0, 0).is_exact() && !reprojection_exact(upgraded, pairs))
    throw NotFeasible("reprojection is not exact");
  return upgraded;
}

}  // namespace chiral
