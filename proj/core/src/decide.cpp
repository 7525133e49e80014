#include "chirality/decide.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "chirality/errors.hpp"
#include "chirality/feasibility.hpp"
#include "roots.hpp"

namespace chiral {
namespace {

// Deterministic stream of small rational points used wherever a "generic"
// choice is needed.
std::vector<Vec3> probe_points(std::size_t count) {
  std::mt19937 rng(20240611u);
  std::uniform_int_distribution<int> num(-19, 19);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<Vec3> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(Vec3{Scalar(num(rng), den(rng)), Scalar(num(rng), den(rng)), 1});
  return out;
}

Mat3 primitive_matrix(const Mat3& x) {
  for (const Scalar& s : x.a)
    if (!s.is_exact()) return x;
  mpz_class lcm = 1;
  for (const Scalar& s : x.a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.rational().get_den_mpz_t());
  mpz_class content = 0;
  std::array<mpz_class, 9> ints;
  for (std::size_t i = 0; i < 9; ++i) {
    ints[i] = mpq_class(x.a[i].rational() * lcm).get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (content == 0) return x;
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.a[i] = Scalar(mpq_class(ints[i] / content));
  return out;
}

std::vector<int> v_side_signs(const PairSet& pairs, const Vec3& e2) {
  std::vector<int> s;
  for (auto [i, j] : index_pairs(pairs.size())) s.push_back(det3(pairs.v(i), pairs.v(j), HPoint2(e2)).sign());
  return s;
}

bool all_nonzero(const std::vector<int>& s) {
  return std::none_of(s.begin(), s.end(), [](int x) { return x == 0; });
}

// Both images collinear on the given indices: G sends extreme u's to extreme
// v's, t sits on the v-line outside the cone of the extremes.
Mat3 cone_construction(const PairSet& pairs, const std::vector<std::size_t>& line, std::optional<std::size_t> extra) {
  auto extremes = [&](auto point) {
    Vec3 base = point(line[0]);
    Vec3 dir = point(line[1]) - base;
    std::size_t lo = line[0], hi = line[0];
    Scalar lo_val = 0, hi_val = 0;
    for (std::size_t i : line) {
      Scalar val = dot(point(i) - base, dir);
      if (val < lo_val) {
        lo_val = val;
        lo = i;
      }
      if (val > hi_val) {
        hi_val = val;
        hi = i;
      }
    }
    return std::pair{point(lo), point(hi)};
  };
  auto [ul, ur] = extremes([&](std::size_t i) { return pairs.u(i).h; });
  auto [vl, vr] = extremes([&](std::size_t i) { return pairs.v(i).h; });
  Vec3 u3 = extra ? pairs.u(*extra).h : cross(ul, ur);
  Vec3 v3 = extra ? pairs.v(*extra).h : cross(vl, vr);
  Mat3 mu, mv;
  mu.set_col(0, ul);
  mu.set_col(1, ur);
  mu.set_col(2, u3);
  mv.set_col(0, vl);
  mv.set_col(1, vr);
  mv.set_col(2, v3);
  Mat3 g = mv * inverse(mu);
  Vec3 t = vr * Scalar(2) - vl;
  return skew(t) * g;
}

// Three pairs with non-collinear u's: e₂ off every v-line, e₁ matched to the
// v-side chirotope, X pinned by both kernels.
std::optional<Witness> epipole_construction(const PairSet& three, const std::function<std::optional<Witness>(const Mat3&)>& accept,
                                            int attempts) {
  const auto probes = probe_points(static_cast<std::size_t>(attempts) + 8);
  int tried = 0;
  for (const Vec3& e2 : probes) {
    std::vector<int> sigma = v_side_signs(three, e2);
    if (!all_nonzero(sigma)) continue;
    for (int w = 0; w < 3 && tried < attempts; ++w, ++tried) {
      std::array<Scalar, 3> weights{Scalar(1 + w), Scalar(1), Scalar(1 + 2 * w)};
      HPoint2 e1 = chirotope_match(three.u(0), three.u(1), three.u(2), {sigma[0], sigma[1], sigma[2]}, weights);
      auto basis = LinearSystem(three).right_kernel(e1.h).left_kernel(e2).solve();
      for (const Mat3& x : basis)
        if (auto wit = accept(x)) return wit;
      if (basis.size() > 1)
        if (auto wit = accept(basis[0] + basis[1])) return wit;
    }
    if (tried >= attempts) break;
  }
  return std::nullopt;
}

// Adds synthetic pairs until there are three with non-collinear u's.
PairSet pad_to_three(const PairSet& pairs) {
  std::vector<PointPair> out = pairs.pairs();
  const auto probes = probe_points(64);
  std::size_t next = 0;
  while (out.size() < 3) {
    const Vec3& cand = probes[next++];
    HPoint2 u(cand);
    HPoint2 v(probes[(next * 7 + 3) % probes.size()]);
    bool ok = true;
    for (const PointPair& p : out) ok = ok && !same_point(p.u, u) && !same_point(p.v, v);
    if (out.size() == 2) ok = ok && !det3(out[0].u, out[1].u, u).is_zero();
    if (ok) out.push_back({u, v});
  }
  return PairSet(std::move(out));
}

struct PencilScan {
  std::optional<Witness> witness;
  std::vector<std::vector<int>> interval_signs;
  bool complete = false;
};

// Exact sweep of the pencil {X ∈ L_P : e₂ᵀX = 0} for four pairs. Along the
// pencil sign(g_i g_j) = sign D_ij(adj(X)e₂, e₂), a quadratic in the pencil
// parameter, so one sample per interval between its real roots decides the
// whole pencil.
PencilScan scan_left_pencil(const PairSet& pairs, const Vec3& e2) {
  PencilScan scan;
  auto basis = LinearSystem(pairs).left_kernel(e2).solve();
  if (basis.size() != 2) return scan;
  const Mat3& y0 = basis[0];
  const Mat3& y1 = basis[1];
  auto epi = [&](const Scalar& s) { return adjoint3(y0 + y1 * s) * e2; };
  Vec3 a = epi(Scalar(0)), b = epi(Scalar(1)), c = epi(Scalar(-1));
  std::array<Vec3, 3> coeff{a, (b - c) * Scalar(1, 2), (b + c) * Scalar(1, 2) - a};

  std::vector<std::array<Scalar, 3>> polys;
  for (auto [i, j] : index_pairs(pairs.size())) {
    Vec3 normal = cross(pairs.u(i).h, pairs.u(j).h);
    int vs = det3(pairs.v(i), pairs.v(j), HPoint2(e2)).sign();
    if (vs == 0) return scan;
    std::array<Scalar, 3> p{dot(normal, coeff[0]) * Scalar(vs), dot(normal, coeff[1]) * Scalar(vs),
                            dot(normal, coeff[2]) * Scalar(vs)};
    polys.push_back(p);
  }
  std::vector<Scalar> cuts;
  for (const auto& p : polys)
    for (const detail::RootBracket& r : detail::real_roots_upto_quadratic(p)) {
      cuts.push_back(r.lo);
      if (r.hi != r.lo) cuts.push_back(r.hi);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Scalar> samples;
  if (cuts.empty()) {
    samples.push_back(Scalar(0));
  } else {
    samples.push_back(cuts.front() - Scalar(1));
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) samples.push_back(detail::simplest_between(cuts[k], cuts[k + 1]));
    samples.push_back(cuts.back() + Scalar(1));
  }
  for (const Scalar& s : samples) {
    std::vector<int> signs;
    for (const auto& p : polys) signs.push_back(detail::evaluate(p, s).sign());
    scan.interval_signs.push_back(signs);
    bool same = all_nonzero(signs) && std::all_of(signs.begin(), signs.end(), [&](int x) { return x == signs[0]; });
    if (same && !scan.witness) scan.witness = try_witness(pairs, y0 + y1 * s);
  }
  scan.complete = true;
  return scan;
}

std::optional<Witness> transpose_witness(const PairSet& pairs, const std::optional<Witness>& w) {
  if (!w) return std::nullopt;
  return try_witness(pairs, w->x.matrix().transpose());
}

// k = 4, both images of rank 3 and every triple general on one side: start on
// the wall W^{v_d} and step along the pencil of matrices sharing e₁.
std::optional<Witness> walk_from_v_wall(const PairSet& pairs, int levels) {
  for (std::size_t d = 0; d < 4; ++d) {
    std::vector<std::size_t> rest;
    for (std::size_t l = 0; l < 4; ++l)
      if (l != d) rest.push_back(l);
    if (det3(pairs.u(rest[0]), pairs.u(rest[1]), pairs.u(rest[2])).is_zero()) continue;
    std::array<int, 3> sigma{};
    const std::array<std::pair<int, int>, 3> tri{{{0, 1}, {0, 2}, {1, 2}}};
    bool off_lines = true;
    for (std::size_t k = 0; k < 3; ++k) {
      sigma[k] = det3(pairs.v(rest[tri[k].first]), pairs.v(rest[tri[k].second]), pairs.v(d)).sign();
      off_lines = off_lines && sigma[k] != 0;
    }
    if (!off_lines) continue;
    for (int w = 0; w < 4; ++w) {
      std::array<Scalar, 3> weights{Scalar(1 + w), Scalar(2 + w * w), Scalar(3)};
      HPoint2 e1 = chirotope_match(pairs.u(rest[0]), pairs.u(rest[1]), pairs.u(rest[2]), sigma, weights);
      auto on_wall = LinearSystem(pairs).right_kernel(e1.h).left_kernel(pairs.v(d).h).solve();
      if (on_wall.size() != 1 || matrix_rank(on_wall[0]) != 2) continue;
      const Mat3& x0 = on_wall[0];
      if (!smooth_point_check(FundamentalCandidate(x0), pairs)) continue;
      auto pencil = LinearSystem(pairs).right_kernel(e1.h).solve();
      const Mat3* x1 = nullptr;
      for (const Mat3& m : pencil)
        if (!proportional(m, x0)) {
          x1 = &m;
          break;
        }
      if (!x1) continue;
      for (int level = 0; level < levels; ++level)
        for (int sgn : {1, -1})
          if (auto wit = try_witness(pairs, x0 + *x1 * (pow2(-level) * Scalar(sgn)))) return wit;
    }
  }
  return std::nullopt;
}

// k = 5: near a passing corner (i, j) the surface is parametrized by the
// right epipole e₁ close to u_i; the corner itself is approached along the
// line X_cᵀv_i. The four local quadrants around the corner are probed at
// shrinking scales.
std::optional<Witness> walk_from_corner(const PairSet& pairs, const Corner& c, int levels) {
  const Vec3& ui = pairs.u(c.i).h;
  Vec3 line = left_mul(pairs.v(c.i).h, c.x.matrix());
  Vec3 along = primitive(Vec3{-line[1], line[0], 0});
  Vec3 across = primitive(Vec3{line[0], line[1], 0});
  for (int level = 1; level <= levels; ++level) {
    Scalar tilt = pow2(-level);
    Scalar step = pow2(-2 * level - 2);
    for (int ss : {1, -1})
      for (int ts : {1, -1}) {
        Vec3 e1 = ui + (along + across * (tilt * Scalar(ts))) * (step * Scalar(ss));
        auto sol = LinearSystem(pairs).right_kernel(e1).solve();
        if (sol.size() != 1) continue;
        if (auto wit = try_witness(pairs, sol[0])) return wit;
      }
  }
  return std::nullopt;
}

// Rational points of a plane cubic curve R₂ ∩ L_P (six pairs): every wall
// meets L_P in a rational point, and the chord through two rational points
// meets the curve again in a rational point.
std::optional<Witness> search_chords(const PairSet& pairs, std::size_t max_points) {
  std::vector<Mat3> pool;
  auto add = [&](const Mat3& x) -> std::optional<Witness> {
    if (x.is_zero() || matrix_rank(x) != 2) return std::nullopt;
    for (const Mat3& y : pool)
      if (proportional(x, y)) return std::nullopt;
    pool.push_back(primitive_matrix(x));
    return try_witness(pairs, pool.back());
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (auto sol : {LinearSystem(pairs).right_kernel(pairs.u(i).h).solve(), LinearSystem(pairs).left_kernel(pairs.v(i).h).solve()})
      if (sol.size() == 1)
        if (auto w = add(sol[0])) return w;
  }
  for (std::size_t b = 1; b < pool.size() && pool.size() < max_points; ++b)
    for (std::size_t a = 0; a < b && pool.size() < max_points; ++a) {
      // det(P + sQ) = c₁s + c₂s² since det P = det Q = 0
      const Mat3 p = pool[a], q = pool[b];
      Scalar plus = det(p + q), minus = det(p - q);
      Scalar c2 = (plus + minus) / Scalar(2);
      Scalar c1 = (plus - minus) / Scalar(2);
      if (c2.is_zero() || c1.is_zero()) continue;
      if (auto w = add(p + q * (-c1 / c2))) return w;
    }
  return std::nullopt;
}

// Rational points of R₂ ∩ L_P found by fixing all but one basis coefficient
// to small integers and solving the cubic in the last one.
std::optional<Witness> search_lp_points(const PairSet& pairs, int height) {
  LPBasis lp = lp_basis(pairs);
  const std::size_t n = lp.basis.size();
  if (n == 0) return std::nullopt;
  if (n == 1) return try_witness(pairs, lp.basis[0]);
  const Mat3& last = lp.basis[n - 1];
  if (auto w = try_witness(pairs, last)) return w;
  std::vector<int> coeff(n - 1, -height);
  const std::size_t max_tuples = 20000;
  std::size_t visited = 0;
  for (;;) {
    bool nonzero = std::any_of(coeff.begin(), coeff.end(), [](int x) { return x != 0; });
    int g = 0;
    for (int x : coeff) g = std::gcd(g, std::abs(x));
    if (nonzero && g == 1 && ++visited <= max_tuples) {
      Mat3 base;
      for (std::size_t m = 0; m + 1 < n; ++m) base += lp.basis[m] * Scalar(coeff[m]);
      // det(base + c·last) as a cubic in c, by interpolation at 0, ±1, 2
      std::array<Scalar, 4> at{det(base), det(base + last), det(base - last), det(base + last * Scalar(2))};
      Scalar c0 = at[0];
      Scalar s1 = (at[1] - at[2]) / Scalar(2);       // c1 + c3
      Scalar s2 = (at[1] + at[2]) / Scalar(2) - c0;  // c2
      Scalar c3 = (at[3] - c0 - s1 * Scalar(2) - s2 * Scalar(4)) / Scalar(6);
      std::array<Scalar, 4> poly{c0, s1 - c3, s2, c3};
      for (const Scalar& root : detail::rational_roots_cubic(poly))
        if (auto w = try_witness(pairs, base + last * root)) return w;
    }
    if (visited > max_tuples) break;
    std::size_t pos = 0;
    while (pos < coeff.size() && coeff[pos] == height) coeff[pos++] = -height;
    if (pos == coeff.size()) break;
    ++coeff[pos];
  }
  return std::nullopt;
}

Decision yes(std::string method) {
  Decision d;
  d.status = Status::kYes;
  d.method = std::move(method);
  return d;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::kYes:
      return "yes";
    case Status::kNo:
      return "no";
    case Status::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out.emplace_back(i, j);
  return out;
}

std::optional<Witness> try_witness(const PairSet& pairs, const Mat3& x_in) {
  try {
    if (x_in.is_zero() || matrix_rank(x_in) != 2) return std::nullopt;
    Mat3 x = primitive_matrix(x_in);
    for (const PointPair& p : pairs.pairs())
      if (x.a[0].is_exact() && !dot(p.v.h, x * p.u.h).is_zero()) return std::nullopt;
    FundamentalCandidate fc(x);
    if (!sign_table(fc, pairs).strict) return std::nullopt;
    return Witness{fc, reconstruct_from_X(pairs, fc)};
  } catch (const Error&) {
    return std::nullopt;
  }
}

Decision decide(const PairSet& pairs, const DecideOptions& options) {
  switch (pairs.size()) {
    case 0:
    case 1:
    case 2:
    case 3:
      return decide_k_le_3(pairs, options);
    case 4:
      return decide_k4(pairs, options);
    case 5:
      return decide_k5(pairs, options);
    default:
      return decide_k_ge_6(pairs, options);
  }
}

Decision decide_k_le_3(const PairSet& pairs, const DecideOptions& options) {
  if (pairs.size() > 3) throw DimensionError("decide_k_le_3 expects at most three pairs");
  const auto u = pairs.u_points();
  const auto v = pairs.v_points();
  const bool three = pairs.size() == 3;
  const bool u_line = three && rank_of_points(u) == 2;
  const bool v_line = three && rank_of_points(v) == 2;
  Decision d = yes(u_line && v_line ? "collinear cone construction" : "epipole construction");
  if (!options.want_witness) return d;

  if (u_line && v_line) {
    d.witness = try_witness(pairs, cone_construction(pairs, {0, 1, 2}, std::nullopt));
  } else {
    const bool swap = u_line;  // then V is the non-collinear image
    PairSet work = pairs.size() < 3 ? pad_to_three(pairs) : (swap ? pairs.swapped() : pairs);
    auto accept = [&](const Mat3& x) { return try_witness(pairs, swap ? x.transpose() : x); };
    d.witness = epipole_construction(work, accept, std::max(options.budget, 6));
  }
  if (!d.witness) d.flags.push_back("witness-search-exhausted");
  return d;
}

Decision decide_k4(const PairSet& pairs, const DecideOptions& options) {
  if (pairs.size() != 4) throw DimensionError("decide_k4 expects four pairs");
  const auto us = pairs.u_points();
  const auto vs = pairs.v_points();
  const int ru = rank_of_points(us);
  const int rv = rank_of_points(vs);

  if (ru == rv) {
    if (ru == 2) {
      Decision d = yes("collinear cone construction");
      if (options.want_witness) d.witness = try_witness(pairs, cone_construction(pairs, {0, 1, 2, 3}, std::nullopt));
      if (options.want_witness && !d.witness) d.flags.push_back("witness-search-exhausted");
      return d;
    }
    Decision d;
    if (!irreducibility_hint_k4(pairs)) {
      d = yes("doubly collinear triple construction");
      if (!options.want_witness) return d;
      for (std::size_t extra = 0; extra < 4 && !d.witness; ++extra) {
        std::vector<std::size_t> triple;
        for (std::size_t l = 0; l < 4; ++l)
          if (l != extra) triple.push_back(l);
        if (!det3(pairs.u(triple[0]), pairs.u(triple[1]), pairs.u(triple[2])).is_zero()) continue;
        if (!det3(pairs.v(triple[0]), pairs.v(triple[1]), pairs.v(triple[2])).is_zero()) continue;
        d.witness = try_witness(pairs, cone_construction(pairs, triple, extra));
      }
    } else {
      d = yes("wall walk");
      if (!options.want_witness) return d;
      d.witness = walk_from_v_wall(pairs, std::max(options.budget, 8));
    }
    if (!d.witness) {
      for (const Vec3& e2 : probe_points(static_cast<std::size_t>(std::max(options.budget, 8)))) {
        PencilScan scan = scan_left_pencil(pairs, e2);
        if (scan.witness) {
          d.witness = scan.witness;
          d.method += " + epipole pencil";
          break;
        }
      }
    }
    if (!d.witness) d.flags.push_back("witness-search-exhausted");
    return d;
  }

  // rank mismatch; arrange for the v side to be the collinear one
  const bool swap = rv == 3;
  PairSet work = swap ? pairs.swapped() : pairs;
  std::optional<Vec3> e2;
  for (const Vec3& p : probe_points(32))
    if (!det3(work.v(0), work.v(1), HPoint2(p)).is_zero()) {
      e2 = p;
      break;
    }
  Decision d;
  Certificate cert;
  cert.v_signs = v_side_signs(work, *e2);

  bool some_cell = false;
  for (int flip : {1, -1}) {
    DenseMatrix rows(0, 3);
    std::size_t k = 0;
    for (auto [i, j] : index_pairs(4)) {
      Vec3 normal = cross(work.u(i).h, work.u(j).h) * Scalar(flip * cert.v_signs[k++]);
      rows.append_row(normal.c);
    }
    if (strictly_positive_solution(rows)) some_cell = true;
  }
  if (!some_cell) {
    d.status = Status::kNo;
    cert.kind = "sign-vector";
    cert.summary = "no cell of the arrangement of lines u_iu_j realizes the v-side sign vector up to a global flip";
    d.certificate = cert;
    d.method = "line arrangement";
    return d;
  }
  PencilScan scan = scan_left_pencil(work, *e2);
  if (scan.witness) {
    d = yes("epipole pencil");
    d.witness = swap ? transpose_witness(pairs, scan.witness) : scan.witness;
    if (!d.witness) d.flags.push_back("witness-search-exhausted");
    return d;
  }
  if (!scan.complete) {
    d.status = Status::kUnknown;
    d.reason = "epipole pencil is degenerate";
    return d;
  }
  d.status = Status::kNo;
  d.method = "epipole pencil";
  cert.kind = "epipole-pencil";
  cert.u_signs = scan.interval_signs;
  cert.summary = "no interval of the epipole pencil carries a uniform sign vector";
  d.certificate = cert;
  return d;
}

Decision decide_k5(const PairSet& pairs, const DecideOptions& options) {
  if (pairs.size() != 5) throw DimensionError("decide_k5 expects five pairs");
  Decision d;
  GenericityReport gen = genericity_check(pairs);
  if (!gen.passed) {
    d.status = Status::kUnknown;
    d.reason = std::string("non-generic (") + gen.failed_condition + "): " + gen.detail;
    return d;
  }
  Certificate cert;
  cert.kind = "corner-tests";
  cert.corners = all_corner_tests(pairs);
  std::vector<std::size_t> passing;
  for (std::size_t k = 0; k < cert.corners.size(); ++k)
    if (cert.corners[k].pass) passing.push_back(k);
  if (passing.empty()) {
    d.status = Status::kNo;
    d.method = "corner tests";
    cert.summary = "all 20 corners fail the sign test";
    d.certificate = cert;
    return d;
  }
  d = yes("corner tests");
  cert.summary = std::to_string(passing.size()) + " corners pass the sign test";
  d.certificate = cert;
  if (!options.want_witness) return d;
  for (std::size_t k : passing) {
    const CornerReport& rep = cert.corners[k];
    auto it = std::find_if(gen.corners.begin(), gen.corners.end(),
                           [&](const Corner& c) { return c.i == rep.i && c.j == rep.j; });
    if (auto w = walk_from_corner(pairs, *it, options.budget)) {
      d.witness = w;
      d.method = "corner tests + walk from corner (" + std::to_string(rep.i + 1) + "," + std::to_string(rep.j + 1) + ")";
      return d;
    }
  }
  d.flags.push_back("witness-search-exhausted");
  return d;
}

Decision decide_k_ge_6(const PairSet& pairs, const DecideOptions& options) {
  const std::size_t k = pairs.size();
  if (k < 6) throw DimensionError("decide_k_ge_6 expects at least six pairs");
  std::size_t non_generic = 0;
  std::vector<std::size_t> idx{0, 1, 2, 3, 4};
  DecideOptions quick = options;
  quick.want_witness = false;
  for (;;) {
    Decision sub = decide_k5(pairs.subset(idx), quick);
    if (sub.status == Status::kNo) {
      Decision d;
      d.status = Status::kNo;
      d.method = "five-subset";
      Certificate cert = *sub.certificate;
      cert.kind = "failing-subset";
      cert.subset = idx;
      cert.summary = "a five-pair subset has no chiral reconstruction";
      d.certificate = cert;
      return d;
    }
    if (sub.status == Status::kUnknown) ++non_generic;
    int pos = 4;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - 5 + static_cast<std::size_t>(pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < 5; ++q) idx[q] = idx[q - 1] + 1;
  }
  Decision d;
  if (pairs.u(0).h[0].is_exact()) {
    std::optional<Witness> w;
    if (options.want_witness && lp_basis(pairs).basis.size() == 3)
      w = search_chords(pairs, static_cast<std::size_t>(4 * std::max(options.budget, 10)));
    if (!w && options.want_witness) w = search_lp_points(pairs, std::max(2, options.budget / 8));
    if (w) {
      d = yes("rational point search");
      d.witness = w;
      if (non_generic) d.flags.push_back(std::to_string(non_generic) + " non-generic subsets");
      return d;
    }
  }
  d.status = Status::kUnknown;
  d.reason = "necessary conditions passed; no witness found within budget";
  if (non_generic) d.flags.push_back(std::to_string(non_generic) + " non-generic subsets");
  return d;
}

}  // namespace chiral
