#include "chirality/epipolar.hpp"

#include <cmath>

#include "chirality/errors.hpp"

namespace chiral {

std::array<Scalar, 9> flatten(const Mat3& x) {
  std::array<Scalar, 9> f;
  for (std::size_t i = 0; i < 9; ++i) f[i] = x.a[i];
  return f;
}

Mat3 unflatten(std::span<const Scalar> flat) {
  if (flat.size() != 9) throw DimensionError("expected 9 entries");
  return Mat3::from_flat(flat);
}

std::array<Scalar, 9> epipolar_row(const PointPair& pair) { return flatten(outer(pair.v.h, pair.u.h)); }

LPBasis lp_basis(const PairSet& pairs) {
  DenseMatrix m(0, 9);
  for (const PointPair& p : pairs.pairs()) m.append_row(epipolar_row(p));
  LPBasis out;
  out.codim = static_cast<int>(m.rank());
  for (const auto& v : m.nullspace()) out.basis.push_back(unflatten(v));
  return out;
}

LinearSystem::LinearSystem(const PairSet& pairs) : m_(0, 9) {
  for (const PointPair& p : pairs.pairs()) m_.append_row(epipolar_row(p));
}

LinearSystem& LinearSystem::right_kernel(const Vec3& e) {
  for (std::size_t r = 0; r < 3; ++r) {
    std::array<Scalar, 9> row;
    for (std::size_t c = 0; c < 3; ++c) row[3 * r + c] = e[c];
    m_.append_row(row);
  }
  return *this;
}

LinearSystem& LinearSystem::left_kernel(const Vec3& e) {
  for (std::size_t c = 0; c < 3; ++c) {
    std::array<Scalar, 9> row;
    for (std::size_t r = 0; r < 3; ++r) row[3 * r + c] = e[r];
    m_.append_row(row);
  }
  return *this;
}

LinearSystem& LinearSystem::row(const std::array<Scalar, 9>& r) {
  m_.append_row(r);
  return *this;
}

std::vector<Mat3> LinearSystem::solve() const {
  std::vector<Mat3> out;
  for (const auto& v : m_.nullspace()) out.push_back(unflatten(v));
  return out;
}

Mat3 adjoint3(const Mat3& x) { return adjugate(x); }

int matrix_rank(const Mat3& x) {
  DenseMatrix m(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = x(r, c);
  return static_cast<int>(m.rank());
}

Kernels kernels(const Mat3& x) {
  if (matrix_rank(x) != 2) throw RankError("kernels need a rank-two matrix");
  Mat3 adj = adjoint3(x);
  bool exact = true;
  double biggest = 0.0;
  for (const Scalar& s : adj.a) {
    exact = exact && s.is_exact();
    biggest = std::max(biggest, std::fabs(s.to_double()));
  }
  for (std::size_t r = 0; r < 3; ++r) {
    Vec3 t = adj.row(r);
    bool nonzero = false;
    for (std::size_t c = 0; c < 3; ++c)
      nonzero = nonzero || (exact ? !t[c].is_zero() : std::fabs(t[c].to_double()) > 1e-9 * biggest);
    if (!nonzero) continue;
    Vec3 e1 = adj * t;
    if (e1.is_zero()) throw RankError("adj(X)·t vanished");
    return {t, e1};
  }
  throw RankError("adjugate vanished");
}

FundamentalCandidate::FundamentalCandidate(Mat3 x) : x_(std::move(x)), k_(kernels(x_)) {}

bool is_regular(const FundamentalCandidate& x, const PointPair& pair) {
  const Mat3& m = x.matrix();
  Scalar residual = dot(pair.v.h, m * pair.u.h);
  bool violated = !residual.is_zero();
  if (violated && !residual.is_exact()) {
    double scale = std::sqrt(frobenius(m, m).to_double() * dot(pair.u.h, pair.u.h).to_double() * dot(pair.v.h, pair.v.h).to_double());
    violated = std::abs(residual.to_double()) > 1e-9 * scale;
  }
  if (violated) throw EpipolarViolation("pair violates its epipolar equation");
  bool right = (m * pair.u.h).is_zero();
  bool left = left_mul(pair.v.h, m).is_zero();
  return right == left;
}

bool is_p_regular(const FundamentalCandidate& x, const PairSet& pairs) {
  for (const PointPair& p : pairs.pairs())
    if (!is_regular(x, p)) return false;
  return true;
}

WallPencil wall_pencil(const PairSet& pairs, std::size_t index, WallSide side) {
  LinearSystem sys(pairs);
  if (side == WallSide::kU) {
    sys.right_kernel(pairs.u(index).h);
  } else {
    sys.left_kernel(pairs.v(index).h);
  }
  std::vector<Mat3> sol = sys.solve();
  if (sol.size() != 2)
    throw DegenerateWall("wall " + std::to_string(index + 1) + " has dimension " + std::to_string(sol.size()));
  return {index, side, sol[0], sol[1]};
}

Corner corner(const PairSet& pairs, std::size_t i, std::size_t j) {
  if (i == j) throw DegenerateCorner("corner needs i != j");
  std::vector<Mat3> sol = LinearSystem(pairs).right_kernel(pairs.u(i).h).left_kernel(pairs.v(j).h).solve();
  if (sol.size() != 1)
    throw DegenerateCorner("corner (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") solution space has dimension " + std::to_string(sol.size()));
  if (matrix_rank(sol[0]) != 2) throw DegenerateCorner("corner matrix is not rank two");
  return {i, j, FundamentalCandidate(sol[0])};
}

std::optional<Mat3> homography_from_points(std::span<const HPoint2> from, std::span<const HPoint2> to) {
  if (from.size() != 4 || to.size() != 4) throw DimensionError("homography needs four correspondences");
  DenseMatrix m(0, 9);
  for (std::size_t k = 0; k < 4; ++k) {
    const Vec3& x = from[k].h;
    const Vec3& y = to[k].h;
    // y × (H x) = 0; component r couples rows r+1 and r+2 of H
    for (std::size_t r = 0; r < 3; ++r) {
      std::size_t a = (r + 1) % 3, b = (r + 2) % 3;
      std::array<Scalar, 9> row;
      for (std::size_t c = 0; c < 3; ++c) {
        row[3 * b + c] = y[a] * x[c];
        row[3 * a + c] = -y[b] * x[c];
      }
      m.append_row(row);
    }
  }
  auto null = m.nullspace();
  if (null.size() != 1) return std::nullopt;
  Mat3 h = unflatten(null[0]);
  if (det(h).is_zero()) return std::nullopt;
  return h;
}

Mat3 corner_via_homography(const PairSet& pairs, std::size_t i, std::size_t j) {
  std::vector<HPoint2> from{pairs.u(i)};
  std::vector<HPoint2> to{pairs.v(j)};
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    if (l == i || l == j) continue;
    from.push_back(pairs.u(l));
    to.push_back(pairs.v(l));
  }
  if (from.size() != 4) throw DimensionError("homography route needs five pairs");
  auto h = homography_from_points(from, to);
  if (!h) throw DegenerateCorner("no homography for corner");
  // scale H so that H u_i = v_j exactly
  Vec3 image = *h * pairs.u(i).h;
  Scalar scale = pairs.v(j).h[2] / image[2];
  return skew(pairs.v(j).h) * (*h * scale);
}

bool smooth_point_check(const FundamentalCandidate& x, const PairSet& pairs) {
  DenseMatrix m(0, 9);
  for (const PointPair& p : pairs.pairs()) m.append_row(epipolar_row(p));
  std::size_t base = m.rank();
  m.append_row(flatten(outer(x.left_kernel(), x.right_kernel())));
  return m.rank() > base;
}

GenericityReport genericity_check(const PairSet& pairs) {
  GenericityReport rep;
  if (pairs.size() != 5) throw DimensionError("genericity check is defined for five pairs");
  if (lp_basis(pairs).codim != 5) {
    rep.failed_condition = 'a';
    rep.detail = "data matrices do not have rank 5";
    return rep;
  }
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b)
      for (std::size_t c = b + 1; c < 5; ++c) {
        bool ucol = det3(pairs.u(a), pairs.u(b), pairs.u(c)).is_zero();
        bool vcol = det3(pairs.v(a), pairs.v(b), pairs.v(c)).is_zero();
        if (ucol || vcol) {
          rep.failed_condition = 'b';
          rep.detail = std::string(ucol ? "u" : "v") + " points " + std::to_string(a + 1) + "," +
                       std::to_string(b + 1) + "," + std::to_string(c + 1) + " are collinear";
          return rep;
        }
      }
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      try {
        rep.corners.push_back(corner(pairs, i, j));
      } catch (const Error& e) {
        rep.failed_condition = 'c';
        rep.detail = e.what();
        return rep;
      }
    }
  for (std::size_t a = 0; a < rep.corners.size(); ++a)
    for (std::size_t b = a + 1; b < rep.corners.size(); ++b)
      if (proportional(rep.corners[a].x.matrix(), rep.corners[b].x.matrix())) {
        rep.failed_condition = 'c';
        rep.detail = "two corners coincide";
        return rep;
      }
  for (const Corner& c : rep.corners)
    if (!smooth_point_check(c.x, pairs)) {
      rep.failed_condition = 'd';
      rep.detail = "corner (" + std::to_string(c.i + 1) + "," + std::to_string(c.j + 1) + ") is not smooth";
      return rep;
    }
  rep.passed = true;
  return rep;
}

bool irreducibility_hint_k4(const PairSet& pairs) {
  if (pairs.size() != 4) throw DimensionError("irreducibility hint is defined for four pairs");
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      for (std::size_t c = b + 1; c < 4; ++c)
        if (det3(pairs.u(a), pairs.u(b), pairs.u(c)).is_zero() && det3(pairs.v(a), pairs.v(b), pairs.v(c)).is_zero())
          return false;
  return true;
}

}  // namespace chiral
