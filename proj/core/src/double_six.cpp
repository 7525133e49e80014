#include "chirality/double_six.hpp"

#include <algorithm>

#include "chirality/chirality.hpp"
#include "chirality/errors.hpp"

namespace chiral {
namespace {

std::string index_label(std::size_t i) { return std::to_string(i); }

int rank4(std::initializer_list<Vec4> rows) {
  DenseMatrix m(0, 4);
  for (const Vec4& r : rows) m.append_row(r.c);
  return static_cast<int>(m.rank());
}

HPoint2 normalized(const Vec3& p) {
  if (p[2].is_zero()) throw DegenerateInput("sixth point lies at infinity");
  return HPoint2(Vec3{p[0] / p[2], p[1] / p[2], 1});
}

// The line other than p×q in the member of the pencil a + λb that contains p×q.
Vec3 residual_conic_line(const Conic& a, const Conic& b, const Vec3& p, const Vec3& q) {
  Vec3 mid = p + q;
  Scalar fa = a(mid);
  Scalar fb = b(mid);
  Mat3 s = fb.is_zero() ? b.matrix() : a.matrix() * fb - b.matrix() * fa;
  if (s.is_zero()) throw DegenerateConics("both conics contain the line through two common points");
  auto form = [&](const Vec3& x) { return dot(x, s * x); };
  const Vec3 line = cross(p, q);
  const std::array<Vec3, 10> probes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                                     {0, 1, 1}, {1, 1, 1}, {1, 2, 3}, {3, -1, 2}, {-2, 5, 1}}};
  DenseMatrix rows(0, 3);
  std::vector<Scalar> rhs;
  std::vector<Vec3> spare;
  for (const Vec3& x : probes) {
    Scalar lx = dot(line, x);
    if (lx.is_zero()) continue;
    DenseMatrix trial = rows;
    trial.append_row(x.c);
    if (rows.rows() < 3 && trial.rank() == rows.rows() + 1) {
      rows = trial;
      rhs.push_back(form(x) / lx);
    } else {
      spare.push_back(x);
    }
  }
  std::vector<Scalar> sol = solve_square(rows, rhs);
  Vec3 other{sol[0], sol[1], sol[2]};
  for (const Vec3& x : spare)
    if (form(x) != dot(line, x) * dot(other, x)) throw DegenerateConics("pencil member does not split into lines");
  return other;
}

// The unique X ∈ L_P with X e₁ = 0, when unique.
std::optional<Mat3> matrix_with_epipole(const PairSet& pairs, const Vec3& e1) {
  auto sol = LinearSystem(pairs).right_kernel(e1).solve();
  if (sol.size() != 1) return std::nullopt;
  return sol[0];
}

std::vector<std::size_t> probe_vertex(const PairSet& pairs, std::size_t i, const std::vector<Conic>& conics) {
  std::vector<std::size_t> out;
  const Vec3& ui = pairs.u(i).h;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (j == i) continue;
    const Mat3 s = conics[j].matrix();
    const Vec3 tangent = s * ui;
    const Vec3 along = primitive(Vec3{-tangent[1], tangent[0], 0});
    const Vec3 across = primitive(Vec3{tangent[0], tangent[1], 0});
    bool boundary = false;
    for (int a : {10, 14}) {
      bool here = false;
      for (int branch : {1, -1}) {
        Vec3 w = along + across * (pow2(-a) * Scalar(branch));
        Scalar curv = dot(w, s * w);
        if (curv.is_zero()) continue;
        Scalar lambda = -(dot(tangent, w) * Scalar(2)) / curv;
        Vec3 p = ui + w * lambda;
        Vec3 grad = s * p;
        Scalar scale = std::max(abs(grad[0]), abs(grad[1]));
        Vec3 normal{grad[0] / scale, grad[1] / scale, 0};
        Scalar delta = abs(lambda) * pow2(-a);
        if (chiral_at_epipole(pairs, p + normal * delta) != chiral_at_epipole(pairs, p - normal * delta)) here = true;
      }
      boundary = here;
    }
    if (boundary) out.push_back(j);
  }
  return out;
}

}  // namespace

DeterminantalRep::DeterminantalRep(std::array<Mat3, 4> basis) : basis_(std::move(basis)) {
  for (std::size_t k = 0; k < 4; ++k) {
    bool found = false;
    for (std::size_t c = 0; c < 9 && !found; ++c) {
      if (basis_[k].a[c] != Scalar(1)) continue;
      bool unit = true;
      for (std::size_t m = 0; m < 4; ++m)
        if (m != k && !basis_[m].a[c].is_zero()) unit = false;
      if (unit) {
        free_[k] = c;
        found = true;
      }
    }
    if (!found) throw DimensionError("basis is not in reduced echelon form");
  }
}

Mat3 DeterminantalRep::at(const Vec4& z) const {
  Mat3 x = basis_[0] * z[0];
  for (std::size_t k = 1; k < 4; ++k) x += basis_[k] * z[k];
  return x;
}

Vec4 DeterminantalRep::coords(const Mat3& x) const {
  Vec4 z{x.a[free_[0]], x.a[free_[1]], x.a[free_[2]], x.a[free_[3]]};
  if (at(z) != x) throw DimensionError("matrix is not in the span of the representation");
  return z;
}

DeterminantalRep determinantal_rep(const PairSet& pairs) {
  LPBasis lp = lp_basis(pairs);
  if (lp.basis.size() != 4)
    throw DimensionError("L_P has projective dimension " + std::to_string(lp.projective_dim()) + ", expected 3");
  return DeterminantalRep({lp.basis[0], lp.basis[1], lp.basis[2], lp.basis[3]});
}

Mat3 Conic::matrix() const {
  const Scalar half(1, 2);
  return Mat3::from_rows({{coeff[0], coeff[1] * half, coeff[3] * half},
                          {coeff[1] * half, coeff[2], coeff[4] * half},
                          {coeff[3] * half, coeff[4] * half, coeff[5]}});
}

Scalar Conic::operator()(const Vec3& p) const {
  return coeff[0] * p[0] * p[0] + coeff[1] * p[0] * p[1] + coeff[2] * p[1] * p[1] + coeff[3] * p[0] * p[2] +
         coeff[4] * p[1] * p[2] + coeff[5] * p[2] * p[2];
}

Conic conic_through(std::span<const Vec3> points) {
  DenseMatrix veronese(0, 6);
  for (const Vec3& p : points)
    veronese.append_row(std::array<Scalar, 6>{p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0] * p[2], p[1] * p[2], p[2] * p[2]});
  auto kernel = veronese.nullspace();
  if (kernel.size() != 1)
    throw DegeneratePencil("points determine a " + std::to_string(kernel.size()) + "-dimensional family of conics");
  Conic c;
  std::copy(kernel[0].begin(), kernel[0].end(), c.coeff.begin());
  return c;
}

Conic wall_conic(const PairSet& pairs, std::size_t index, WallSide side) {
  WallPencil pencil = wall_pencil(pairs, index, side);
  std::vector<Vec3> kernels_seen;
  for (int k = -3; k <= 4; ++k) {
    Mat3 x = pencil.at(Scalar(1), Scalar(k));
    if (matrix_rank(x) != 2) continue;
    Kernels ker = kernels(x);
    kernels_seen.push_back(side == WallSide::kU ? ker.left : ker.right);
  }
  Conic c = conic_through(kernels_seen);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (j == index) continue;
    const Vec3& p = side == WallSide::kU ? pairs.v(j).h : pairs.u(j).h;
    if (!c(p).is_zero()) throw DegeneratePencil("wall conic misses data point " + index_label(j + 1));
  }
  c.label = (side == WallSide::kU ? "C^" : "C_") + index_label(index + 1);
  return c;
}

HPoint2 fourth_intersection(const Conic& a, const Conic& b, const std::array<Vec3, 3>& known) {
  for (const Vec3& p : known)
    if (!a(p).is_zero() || !b(p).is_zero()) throw DegenerateConics("known point is not on both conics");
  if (proportional(a.matrix(), b.matrix())) throw DegenerateConics("conics coincide");
  Vec3 through_third = residual_conic_line(a, b, known[0], known[1]);
  Vec3 through_second = residual_conic_line(a, b, known[0], known[2]);
  Vec3 p = cross(through_third, through_second);
  if (p.is_zero()) throw DegenerateConics("residual lines coincide");
  if (!a(p).is_zero() || !b(p).is_zero()) throw DegenerateConics("fourth point fails to lie on both conics");
  for (const Vec3& k : known)
    if (proportional(k, p)) throw DegenerateConics("conics are tangent at a known point");
  return HPoint2(primitive(p));
}

SixthPair sixth_point_pair(const PairSet& pairs) {
  if (pairs.size() != 5) throw DimensionError("the sixth point pair is defined for five pairs");
  const std::array<Vec3, 3> common_v{pairs.v(2).h, pairs.v(3).h, pairs.v(4).h};
  const std::array<Vec3, 3> common_u{pairs.u(2).h, pairs.u(3).h, pairs.u(4).h};
  SixthPair out;
  out.v = fourth_intersection(wall_conic(pairs, 0, WallSide::kU), wall_conic(pairs, 1, WallSide::kU), common_v);
  out.u = fourth_intersection(wall_conic(pairs, 0, WallSide::kV), wall_conic(pairs, 1, WallSide::kV), common_u);
  DenseMatrix rows(0, 9);
  for (const PointPair& p : pairs.pairs()) rows.append_row(epipolar_row(p));
  const std::size_t base = rows.rank();
  rows.append_row(epipolar_row(PointPair{out.u, out.v}));
  out.in_span_rank_one = rows.rank() == base;
  return out;
}

PairSet with_sixth_pair(const PairSet& pairs) {
  SixthPair s = sixth_point_pair(pairs);
  std::vector<PointPair> six{{normalized(s.u.h), normalized(s.v.h)}};
  for (const PointPair& p : pairs.pairs()) six.push_back(p);
  return PairSet(std::move(six));
}

std::string SurfaceLine::label() const {
  switch (kind) {
    case Kind::kUWall:
      return "W_u" + index_label(i);
    case Kind::kVWall:
      return "W^v" + index_label(i);
    case Kind::kResidual:
      return "W_" + index_label(i) + "^" + index_label(j);
  }
  return {};
}

bool lines_meet(const SurfaceLine& a, const SurfaceLine& b) { return rank4({a.first, a.second, b.first, b.second}) <= 3; }

bool same_line(const SurfaceLine& a, const SurfaceLine& b) { return rank4({a.first, a.second, b.first, b.second}) == 2; }

bool lies_on_surface(const DeterminantalRep& rep, const SurfaceLine& line) {
  for (const Vec4& z : {line.first, line.second, line.first + line.second, line.first - line.second})
    if (!rep.cubic(z).is_zero()) return false;
  return true;
}

SurfaceLine wall_line(const PairSet& six, const DeterminantalRep& rep, std::size_t index, WallSide side) {
  LinearSystem sys(six);
  if (side == WallSide::kU) {
    sys.right_kernel(six.u(index).h);
  } else {
    sys.left_kernel(six.v(index).h);
  }
  auto sol = sys.solve();
  if (sol.size() != 2) throw DegenerateWall("wall " + index_label(index) + " is not a line on the surface");
  SurfaceLine line;
  line.kind = side == WallSide::kU ? SurfaceLine::Kind::kUWall : SurfaceLine::Kind::kVWall;
  line.i = line.j = index;
  line.first = rep.coords(sol[0]);
  line.second = rep.coords(sol[1]);
  return line;
}

SurfaceLine residual_line(const PairSet& six, const DeterminantalRep& rep, std::size_t i, std::size_t j) {
  if (i == j) throw InvalidInput("residual line needs two different indices");
  auto corner_sol = LinearSystem(six).right_kernel(six.u(i).h).left_kernel(six.v(j).h).solve();
  if (corner_sol.size() != 1) throw FactorizationError("walls do not meet in a single point");
  const Vec4 c = rep.coords(corner_sol[0]);
  auto off_corner = [&](const SurfaceLine& l) { return rank4({c, l.first}) == 2 ? l.first : l.second; };
  const Vec4 a = off_corner(wall_line(six, rep, i, WallSide::kU));
  const Vec4 b = off_corner(wall_line(six, rep, j, WallSide::kV));

  // In plane coordinates (x, y, w) ↦ xc + ya + wb the restricted cubic is
  // y·w·ℓ(x, y, w); recover ℓ from three values and check the rest.
  auto restricted = [&](const Vec3& p) { return rep.cubic(c * p[0] + a * p[1] + b * p[2]); };
  const std::array<Vec3, 3> fit{{{1, 1, 1}, {0, 1, 1}, {0, 1, 2}}};
  DenseMatrix rows(0, 3);
  std::vector<Scalar> rhs;
  for (const Vec3& p : fit) {
    rows.append_row(p.c);
    rhs.push_back(restricted(p) / (p[1] * p[2]));
  }
  std::vector<Scalar> sol = solve_square(rows, rhs);
  const Vec3 ell{sol[0], sol[1], sol[2]};
  for (const Vec3& p : {Vec3{2, 1, 3}, Vec3{-1, 2, 1}, Vec3{3, -2, 5}, Vec3{1, 3, -2}, Vec3{5, 1, 1}})
    if (restricted(p) != p[1] * p[2] * dot(ell, p))
      throw FactorizationError("restricted cubic does not split off the two walls");
  if (ell.is_zero() || (ell[0].is_zero() && (ell[1].is_zero() || ell[2].is_zero())))
    throw FactorizationError("residual factor repeats a wall");

  DenseMatrix form(0, 3);
  form.append_row(ell.c);
  auto kernel = form.nullspace();
  auto lift = [&](const std::vector<Scalar>& p) { return c * p[0] + a * p[1] + b * p[2]; };
  SurfaceLine line;
  line.kind = SurfaceLine::Kind::kResidual;
  line.i = std::min(i, j);
  line.j = std::max(i, j);
  line.first = lift(kernel[0]);
  line.second = lift(kernel[1]);
  return line;
}

DoubleSix schlafli_verify(const PairSet& pairs) {
  const PairSet six = with_sixth_pair(pairs);
  const DeterminantalRep rep = determinantal_rep(pairs);
  DoubleSix ds;
  for (std::size_t i = 0; i < 6; ++i) {
    ds.u_walls[i] = wall_line(six, rep, i, WallSide::kU);
    ds.v_walls[i] = wall_line(six, rep, i, WallSide::kV);
  }
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      SurfaceLine line = residual_line(six, rep, i, j);
      if (!same_line(line, residual_line(six, rep, j, i)))
        throw IncidenceViolation("tritangent planes through " + line.label() + " disagree");
      ds.residual.push_back(line);
    }

  std::vector<const SurfaceLine*> all;
  for (const auto& l : ds.u_walls) all.push_back(&l);
  for (const auto& l : ds.v_walls) all.push_back(&l);
  for (const auto& l : ds.residual) all.push_back(&l);
  for (const SurfaceLine* l : all)
    if (!lies_on_surface(rep, *l)) throw IncidenceViolation(l->label() + " is not on the surface");
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (same_line(*all[a], *all[b])) throw IncidenceViolation(all[a]->label() + " coincides with " + all[b]->label());

  ds.incidence.assign(all.size(), std::vector<bool>(all.size(), false));
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) ds.incidence[a][b] = ds.incidence[b][a] = lines_meet(*all[a], *all[b]);

  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      bool meet = ds.incidence[i][6 + j];
      if (meet != (i != j))
        throw IncidenceViolation(ds.u_walls[i].label() + " and " + ds.v_walls[j].label() +
                                 (meet ? " meet" : " are skew"));
      if (i < j && (ds.incidence[i][j] || ds.incidence[6 + i][6 + j]))
        throw IncidenceViolation("two walls on the same side meet");
    }
  for (std::size_t a = 0; a < all.size(); ++a) {
    auto n = std::count(ds.incidence[a].begin(), ds.incidence[a].end(), true);
    if (n != 10) throw IncidenceViolation(all[a]->label() + " meets " + std::to_string(n) + " lines instead of 10");
  }
  return ds;
}

bool chiral_at_epipole(const PairSet& pairs, const Vec3& e1) {
  auto x = matrix_with_epipole(pairs, e1);
  if (!x || matrix_rank(*x) != 2) return false;
  try {
    return sign_table(FundamentalCandidate(*x), pairs).strict;
  } catch (const Error&) {
    return false;
  }
}

RegionReport region_boundary_report(const PairSet& pairs) {
  if (pairs.size() != 5) throw DimensionError("region report is defined for five pairs");
  RegionReport rep;
  for (const CornerReport& c : all_corner_tests(pairs))
    if (c.pass) rep.passing_corners.emplace_back(c.i, c.j);
  for (std::size_t l = 0; l < 5; ++l) {
    rep.first_image.push_back(wall_conic(pairs, l, WallSide::kV));
    rep.second_image.push_back(wall_conic(pairs, l, WallSide::kU));
  }
  for (std::size_t p = 0; p < 5; ++p) {
    BoundaryEntry first{p, {}}, second{p, {}};
    for (auto [i, j] : rep.passing_corners) {
      if (i == p) first.conics.push_back(j);
      if (j == p) second.conics.push_back(i);
    }
    std::sort(first.conics.begin(), first.conics.end());
    std::sort(second.conics.begin(), second.conics.end());
    if (!first.conics.empty()) rep.first_boundary.push_back(std::move(first));
    if (!second.conics.empty()) rep.second_boundary.push_back(std::move(second));
  }
  return rep;
}

std::vector<BoundaryEntry> probe_boundary_conics(const PairSet& pairs, WallSide image) {
  if (pairs.size() != 5) throw DimensionError("boundary probe is defined for five pairs");
  const bool first = image == WallSide::kV;
  const PairSet work = first ? pairs : pairs.swapped();
  std::vector<Conic> conics;
  for (std::size_t l = 0; l < 5; ++l) conics.push_back(wall_conic(work, l, WallSide::kV));
  std::vector<BoundaryEntry> out;
  for (std::size_t i = 0; i < 5; ++i) {
    auto here = probe_vertex(work, i, conics);
    if (!here.empty()) out.push_back({i, std::move(here)});
  }
  return out;
}

}  // namespace chiral
