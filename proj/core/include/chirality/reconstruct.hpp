#pragma once

#include <string>
#include <vector>

#include "chirality/epipolar.hpp"

namespace chiral {

struct Reconstruction {
  Camera first;   // [I | 0]
  Camera second;  // [G | t]
  std::vector<HPoint3> points;
  std::vector<Scalar> w1;  // first.project(q_i) = w1_i u_i
  std::vector<Scalar> w2;
  std::vector<int> depth1;  // depth sign in each camera, 0 for points at infinity
  std::vector<int> depth2;
};

struct PointProducts {
  int inf_first = 0;    // sign (n∞ᵀq)(n₁ᵀq)
  int inf_second = 0;   // sign (n∞ᵀq)(n₂ᵀq)
  int first_second = 0; // sign (n₁ᵀq)(n₂ᵀq)
};

struct ChiralCertificate {
  std::vector<PointProducts> points;
  bool passed = false;
  std::string violation;  // empty when passed
};

struct Factorization {
  Mat3 g;
  Vec3 t;
};

Factorization factor_fundamental(const FundamentalCandidate& x);

struct Triangulation {
  HPoint3 q;
  Scalar w1;
  Scalar w2;
  bool on_baseline = false;
};

// For an epipole pair the result is a baseline point whose depth product
// (n₁ᵀq)(n₂ᵀq) has sign baseline_sign.
Triangulation triangulate(const Camera& first, const Camera& second, const PointPair& pair, int baseline_sign = 1);

Mat4 chiral_upgrade(const Reconstruction& r);
Reconstruction transform(const Reconstruction& r, const Mat4& h, const PairSet& pairs);
ChiralCertificate verify_chiral(const Reconstruction& r);
bool reprojection_exact(const Reconstruction& r, const PairSet& pairs);

Reconstruction reconstruct_from_X(const PairSet& pairs, const FundamentalCandidate& x);

}  // namespace chiral
