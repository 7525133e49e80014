#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chirality/geometry.hpp"

namespace chiral {

// Flattening is row-major: entry (r, c) of X sits at 3r + c.
std::array<Scalar, 9> flatten(const Mat3& x);
Mat3 unflatten(std::span<const Scalar> flat);

// Row of the epipolar equation vᵀXu = 0 in flattened coordinates.
std::array<Scalar, 9> epipolar_row(const PointPair& pair);

struct LPBasis {
  std::vector<Mat3> basis;
  int codim = 0;
  int projective_dim() const { return static_cast<int>(basis.size()) - 1; }
};

LPBasis lp_basis(const PairSet& pairs);

/// Linear conditions on X, solved inside the span of the epipolar equations.
class LinearSystem {
 public:
  explicit LinearSystem(const PairSet& pairs);
  LinearSystem& right_kernel(const Vec3& e);  // X e = 0
  LinearSystem& left_kernel(const Vec3& e);   // eᵀ X = 0
  LinearSystem& row(const std::array<Scalar, 9>& r);
  std::vector<Mat3> solve() const;

 private:
  DenseMatrix m_;
};

Mat3 adjoint3(const Mat3& x);
int matrix_rank(const Mat3& x);

struct Kernels {
  Vec3 left;   // t
  Vec3 right;  // e₁ = adj(X)·t
};
Kernels kernels(const Mat3& x);

/// A rank-two matrix with its signed kernel pair.
class FundamentalCandidate {
 public:
  explicit FundamentalCandidate(Mat3 x);  // throws RankError unless rank 2

  const Mat3& matrix() const { return x_; }
  const Vec3& left_kernel() const { return k_.left; }
  const Vec3& right_kernel() const { return k_.right; }

 private:
  Mat3 x_;
  Kernels k_;
};

bool is_regular(const FundamentalCandidate& x, const PointPair& pair);
bool is_p_regular(const FundamentalCandidate& x, const PairSet& pairs);

enum class WallSide { kU, kV };

struct WallPencil {
  std::size_t index = 0;
  WallSide side = WallSide::kU;
  Mat3 first;
  Mat3 second;
  Mat3 at(const Scalar& s, const Scalar& sigma) const { return first * s + second * sigma; }
};

WallPencil wall_pencil(const PairSet& pairs, std::size_t index, WallSide side);

struct Corner {
  std::size_t i = 0;
  std::size_t j = 0;
  FundamentalCandidate x;
};

Corner corner(const PairSet& pairs, std::size_t i, std::size_t j);
// Same corner from the homography H with H u_i = v_j and H u_l ∼ v_l.
Mat3 corner_via_homography(const PairSet& pairs, std::size_t i, std::size_t j);

// Exact homography through four correspondences in general position.
std::optional<Mat3> homography_from_points(std::span<const HPoint2> from, std::span<const HPoint2> to);

bool smooth_point_check(const FundamentalCandidate& x, const PairSet& pairs);

struct GenericityReport {
  bool passed = false;
  char failed_condition = 0;  // 'a'..'d' when failed
  std::string detail;
  std::vector<Corner> corners;  // filled when condition (c) was reached
};

GenericityReport genericity_check(const PairSet& pairs);
bool irreducibility_hint_k4(const PairSet& pairs);

}  // namespace chiral
