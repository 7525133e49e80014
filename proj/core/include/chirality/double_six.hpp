#pragma once

#include <array>
#include <string>
#include <vector>

#include "chirality/epipolar.hpp"

namespace chiral {

/// M(z) = z₀M₀ + z₁M₁ + z₂M₂ + z₃M₃ spanning L_P, so that the epipolar
/// cubic is det M(z) = 0.
class DeterminantalRep {
 public:
  explicit DeterminantalRep(std::array<Mat3, 4> basis);

  const std::array<Mat3, 4>& basis() const { return basis_; }
  Mat3 at(const Vec4& z) const;
  Scalar cubic(const Vec4& z) const { return det(at(z)); }
  // Coordinates of a matrix of L_P in this basis.
  Vec4 coords(const Mat3& x) const;

 private:
  std::array<Mat3, 4> basis_;
  std::array<std::size_t, 4> free_{};
};

DeterminantalRep determinantal_rep(const PairSet& pairs);

/// Plane conic xᵀSx = 0 with coefficients of x², xy, y², xz, yz, z².
struct Conic {
  std::array<Scalar, 6> coeff;
  std::string label;

  Mat3 matrix() const;  // symmetric S
  Scalar operator()(const Vec3& p) const;
};

// The unique conic through the given points; DegeneratePencil otherwise.
Conic conic_through(std::span<const Vec3> points);

// Image of a wall under the adjoint: the left kernels along W_{u_i} (side
// kU, a conic in the second image) or the right kernels along W^{v_i}
// (side kV, first image).
Conic wall_conic(const PairSet& pairs, std::size_t index, WallSide side);

HPoint2 fourth_intersection(const Conic& a, const Conic& b, const std::array<Vec3, 3>& known);

struct SixthPair {
  HPoint2 u;
  HPoint2 v;
  bool in_span_rank_one = false;  // v₀u₀ᵀ ∈ span{v_iu_iᵀ}
};

SixthPair sixth_point_pair(const PairSet& pairs);

// The five pairs preceded by the sixth pair, so that index 0 is the sixth.
PairSet with_sixth_pair(const PairSet& pairs);

struct SurfaceLine {
  enum class Kind { kUWall, kVWall, kResidual };
  Kind kind = Kind::kUWall;
  std::size_t i = 0;  // indices into the six pairs
  std::size_t j = 0;
  Vec4 first;  // two points spanning the line, in M(z) coordinates
  Vec4 second;

  std::string label() const;
};

bool lines_meet(const SurfaceLine& a, const SurfaceLine& b);
bool same_line(const SurfaceLine& a, const SurfaceLine& b);
bool lies_on_surface(const DeterminantalRep& rep, const SurfaceLine& line);

SurfaceLine wall_line(const PairSet& six, const DeterminantalRep& rep, std::size_t index, WallSide side);

// Third line of the tritangent plane through W_{u_i} and W^{v_j}.
SurfaceLine residual_line(const PairSet& six, const DeterminantalRep& rep, std::size_t i, std::size_t j);

struct DoubleSix {
  std::array<SurfaceLine, 6> u_walls;
  std::array<SurfaceLine, 6> v_walls;
  std::vector<SurfaceLine> residual;  // W_i^j for i < j
  std::vector<std::vector<bool>> incidence;  // over all 27 lines, in the order above
};

DoubleSix schlafli_verify(const PairSet& pairs);

struct BoundaryEntry {
  std::size_t point = 0;             // data index of the vertex u_i (or v_j)
  std::vector<std::size_t> conics;   // data indices l of the conics bounding the region there
};

struct RegionReport {
  std::vector<std::pair<std::size_t, std::size_t>> passing_corners;
  std::vector<Conic> first_image;   // C_l, images of the v-walls
  std::vector<Conic> second_image;  // C^l, images of the u-walls
  std::vector<BoundaryEntry> first_boundary;
  std::vector<BoundaryEntry> second_boundary;
  bool empty() const { return passing_corners.empty(); }
};

// Boundary of the chiral region of epipoles: at u_i the conics C_j of the
// passing corners (i, j), at v_j the conics C^i.
RegionReport region_boundary_report(const PairSet& pairs);

// The same boundary found geometrically: exact chirality probes on both
// sides of every wall-conic arc leaving each data point. WallSide::kV probes
// the first image (conics C_l), kU the second (conics C^l).
std::vector<BoundaryEntry> probe_boundary_conics(const PairSet& pairs, WallSide image);

// Whether the unique X ∈ L_P with X e₁ = 0 lies strictly inside the chiral region.
bool chiral_at_epipole(const PairSet& pairs, const Vec3& e1);

}  // namespace chiral
