// Acceptance suite: one PASS/FAIL line per criterion, with the failing
// sub-checks listed underneath. Exit status is nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chirality/census.hpp"
#include "chirality/decide.hpp"
#include "chirality/double_six.hpp"
#include "chirality/errors.hpp"
#include "support.hpp"

using namespace chiral;
using namespace testing_support;

namespace {

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  bool passed() const { return failures_.empty(); }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

bool verified(const Decision& d, const PairSet& p) {
  return d.status == Status::kYes && d.witness && sign_table(d.witness->x, p).strict &&
         verify_chiral(d.witness->reconstruction).passed && reprojection_exact(d.witness->reconstruction, p) &&
         oracle_verifies(d.witness->reconstruction, p);
}

std::string show(const std::array<Scalar, 3>& v) {
  return "(" + v[0].str() + ", " + v[1].str() + ", " + v[2].str() + ")";
}

PairSet from_points(const std::vector<HPoint2>& u, const std::vector<HPoint2>& v) {
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < u.size(); ++i) pairs.push_back({u[i], v[i]});
  return PairSet(std::move(pairs));
}

using Row = std::array<long, 3>;

void criterion1(Criterion& c) {
  static const std::map<std::pair<int, int>, Row> table{
      {{1, 2}, {-16, -84, 20}}, {{1, 3}, {-32, -56, 32}}, {{1, 4}, {64, 40, -96}},  {{1, 5}, {112, -40, 32}},
      {{2, 1}, {-16, -4, 12}},  {{2, 3}, {-32, 8, 32}},   {{2, 4}, {64, -24, -32}}, {{2, 5}, {-16, 24, -32}},
      {{3, 1}, {16, -8, -12}},  {{3, 2}, {16, 24, -20}},  {{3, 4}, {-64, 36, 20}},  {{3, 5}, {-32, -12, 20}},
      {{4, 1}, {16, -8, -4}},   {{4, 2}, {16, 8, -28}},   {{4, 3}, {32, -4, -28}},  {{4, 5}, {-16, -4, 28}},
      {{5, 1}, {-16, 16, -16}}, {{5, 2}, {48, -16, 16}},  {{5, 3}, {32, -16, 16}},  {{5, 4}, {-32, 48, -16}},
  };
  PairSet p = nonchiral_five();
  Decision d = decide(p);
  c.check(d.status == Status::kNo, "decision is No (got " + to_string(d.status) + ")");
  c.check(d.certificate && d.certificate->corners.size() == 20, "certificate carries 20 corner reports");
  if (!d.certificate) return;
  std::size_t matched = 0;
  for (const CornerReport& r : d.certificate->corners) {
    const Row& want = table.at({static_cast<int>(r.i + 1), static_cast<int>(r.j + 1)});
    bool ok = r.values[0] == Scalar(want[0]) && r.values[1] == Scalar(want[1]) && r.values[2] == Scalar(want[2]);
    c.check(ok, "corner (" + std::to_string(r.i + 1) + "," + std::to_string(r.j + 1) + ") = " + show(r.values));
    matched += ok;
  }
  c.note(std::to_string(matched) + "/20 table rows equal");
}

void criterion2(Criterion& c) {
  PairSet p = chiral_five();
  Decision d = decide(p);
  c.check(d.status == Status::kYes, "decision is Yes (got " + to_string(d.status) + ")");
  CornerReport c23 = corner_sign_test(p, 1, 2);
  c.check(c23.values == std::array<Scalar, 3>{Scalar(-32), Scalar(-64), Scalar(-64)} && c23.pass,
          "corner (2,3) = (-32, -64, -64), got " + show(c23.values));
  CornerReport c32 = corner_sign_test(p, 2, 1);
  c.check(c32.values == std::array<Scalar, 3>{Scalar(16), Scalar(-48), Scalar(16)} && !c32.pass,
          "corner (3,2) = (16, -48, 16), got " + show(c32.values));
  std::vector<std::pair<std::size_t, std::size_t>> passing;
  std::string listed;
  for (const CornerReport& r : all_corner_tests(p))
    if (r.pass) {
      passing.emplace_back(r.i + 1, r.j + 1);
      listed += " (" + std::to_string(r.i + 1) + "," + std::to_string(r.j + 1) + ")";
    }
  std::vector<std::pair<std::size_t, std::size_t>> expected{{2, 3}, {2, 4}, {3, 1}, {4, 1}, {4, 3}};
  c.check(passing == expected, "passing set = {(2,3),(2,4),(3,1),(4,1),(4,3)}, got {" + listed + " }");
}

void criterion3(Criterion& c) {
  PairSet p = chiral_five();
  Decision d = decide(p);
  c.check(d.witness.has_value(), "a witness is emitted");
  if (!d.witness) return;
  ChiralCertificate cert = verify_chiral(d.witness->reconstruction);
  c.check(cert.passed, "verify_chiral passes " + cert.violation);
  c.check(reprojection_exact(d.witness->reconstruction, p), "exact reprojection");
  c.check(oracle_verifies(d.witness->reconstruction, p), "independent depth and reprojection check");
  c.check(d.witness->reconstruction.first.matrix()(0, 0).is_exact(), "reconstruction is rational");
}

void criterion4(Criterion& c) {
  SixthPair r = sixth_point_pair(running());
  c.check(same_point(r.u, HPoint2(18, 11, 17)), "running example u0 ~ (18,11,17), got " + to_string(r.u.h));
  c.check(same_point(r.v, HPoint2(-3, -12, 5)), "running example v0 ~ (-3,-12,5), got " + to_string(r.v.h));
  SixthPair w = sixth_point_pair(nonchiral_five());
  c.check(same_point(w.u, HPoint2(Scalar(504, 281), Scalar(300, 281), 1)),
          "non-chiral example u0 = (504/281, 300/281, 1), got " + to_string(w.u.h));
  c.check(same_point(w.v, HPoint2(Scalar(68, 97), Scalar(300, 97), 1)),
          "non-chiral example v0 = (68/97, 300/97, 1), got " + to_string(w.v.h));
}

void criterion5(Criterion& c) {
  PairSet six = with_sixth_pair(nonchiral_five());
  for (std::size_t i = 0; i < 6; ++i) {
    Status want = (i == 0 || i == 4) ? Status::kNo : Status::kYes;
    Decision d = decide(six.without(i));
    c.check(d.status == want, "drop pair " + std::to_string(i) + ": want " + to_string(want) + ", got " +
                                  to_string(d.status));
    if (want == Status::kYes) c.check(verified(d, six.without(i)), "drop pair " + std::to_string(i) + ": witness verifies");
  }
}

void criterion6(Criterion& c) {
  Decision three = decide(load("three_line_four_line.json"));
  c.check(three.status == Status::kNo, "three-on-a-line / four-on-a-line is No (got " + to_string(three.status) + ")");
  Decision square = decide(load("square_four_line.json"));
  c.check(square.status == Status::kNo, "square / four-on-a-line is No (got " + to_string(square.status) + ")");
  std::vector<int> want{1, 1, 1, -1, 1, 1}, flipped{-1, -1, -1, 1, -1, -1};
  bool ok = square.certificate && (square.certificate->v_signs == want || square.certificate->v_signs == flipped);
  c.check(ok, "square / four-on-a-line v-side sign vector is (+,+,+,-,+,+) up to flip");
}

void criterion7(Criterion& c) {
  Rng rng(7001);
  std::size_t ok3 = 0;
  for (int n = 0; n < 1000; ++n) {
    PairSet p;
    switch (n % 4) {
      case 0:
        p = from_points(points_on_line(rng, 3), points_on_line(rng, 3));
        break;
      case 1:
        p = from_points(points_on_line(rng, 3), random_pairs(rng, 3).v_points());
        break;
      default:
        p = random_pairs(rng, 3);
    }
    bool ok = verified(decide(p), p);
    ok3 += ok;
    if (!ok) c.check(false, "k=3 instance " + std::to_string(n));
  }
  c.note("k=3: " + std::to_string(ok3) + "/1000 verified");

  std::size_t ok4 = 0, generic = 0, triple = 0, lines = 0;
  for (int n = 0; n < 500; ++n) {
    PairSet p;
    if (n % 5 == 0) {
      p = from_points(points_on_line(rng, 4), points_on_line(rng, 4));
    } else if (n % 5 == 1) {
      // three collinear points in both images plus one point off the lines
      for (;;) {
        auto u = points_on_line(rng, 3), v = points_on_line(rng, 3);
        u.push_back(HPoint2::affine(rng.integer(-6, 6), rng.integer(-6, 6)));
        v.push_back(HPoint2::affine(rng.integer(-6, 6), rng.integer(-6, 6)));
        try {
          p = from_points(u, v);
        } catch (const Error&) {
          continue;
        }
        if (rank_of_points(p.u_points()) == 3 && rank_of_points(p.v_points()) == 3) break;
      }
    } else {
      do p = random_pairs(rng, 4);
      while (rank_of_points(p.u_points()) != rank_of_points(p.v_points()));
    }
    if (rank_of_points(p.u_points()) == 2)
      ++lines;
    else if (irreducibility_hint_k4(p))
      ++generic;
    else
      ++triple;
    bool ok = verified(decide(p), p);
    ok4 += ok;
    if (!ok) c.check(false, "k=4 instance " + std::to_string(n));
  }
  c.check(ok3 == 1000, "all 1000 k=3 instances verified");
  c.check(ok4 == 500, "all 500 k=4 instances verified");
  c.note("k=4: " + std::to_string(ok4) + "/500 verified (" + std::to_string(lines) + " collinear, " +
         std::to_string(triple) + " reducible, " + std::to_string(generic) + " irreducible)");
}

void criterion8(Criterion& c) {
  SampleConfig cfg;
  cfg.n = 2000;
  CensusStats s = census_run(cfg);
  double yes = static_cast<double>(s.yes) / static_cast<double>(s.total());
  double no = static_cast<double>(s.no) / static_cast<double>(s.total());
  c.check(s.total() == 2000, "2000 samples decided");
  c.check(yes >= 0.01, "Yes frequency >= 1%");
  c.check(no >= 0.01, "No frequency >= 1%");
  char buf[160];
  std::snprintf(buf, sizeof buf, "yes %zu (%.2f%%), no %zu (%.2f%%), unknown %zu, %.1fs", s.yes, 100 * yes, s.no,
                100 * no, s.unknown, s.seconds);
  c.note(buf);
}

void criterion9(Criterion& c) {
  PairSet p = running();
  GenericityReport gen = genericity_check(p);
  c.check(gen.passed, "running example passes the genericity check");
  c.check(gen.corners.size() == 20, "exactly 20 corners");
  bool rank2 = true, distinct = true;
  for (std::size_t a = 0; a < gen.corners.size(); ++a) {
    rank2 = rank2 && matrix_rank(gen.corners[a].x.matrix()) == 2;
    for (std::size_t b = a + 1; b < gen.corners.size(); ++b)
      distinct = distinct && !proportional(gen.corners[a].x.matrix(), gen.corners[b].x.matrix());
  }
  c.check(rank2, "all corners have rank 2");
  c.check(distinct, "corners are pairwise distinct");

  try {
    DoubleSix ds = schlafli_verify(p);
    DeterminantalRep rep = determinantal_rep(p);
    std::vector<const SurfaceLine*> all;
    for (const auto& l : ds.u_walls) all.push_back(&l);
    for (const auto& l : ds.v_walls) all.push_back(&l);
    for (const auto& l : ds.residual) all.push_back(&l);
    c.check(all.size() == 27, "27 lines");
    std::size_t on = 0;
    for (const SurfaceLine* l : all) on += lies_on_surface(rep, *l);
    c.check(on == 27, "every line satisfies det M(z) = 0");
    bool pattern = true;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        pattern = pattern && ds.incidence[i][6 + j] == (i != j);
        if (i != j) pattern = pattern && !ds.incidence[i][j] && !ds.incidence[6 + i][6 + j];
      }
    for (std::size_t a = 0; a < 27; ++a) {
      std::size_t n = 0;
      for (std::size_t b = 0; b < 27; ++b) n += a != b && ds.incidence[a][b];
      pattern = pattern && n == 10;
    }
    c.check(pattern, "double-six incidence pattern and 10 neighbours per line");
  } catch (const Error& e) {
    c.check(false, std::string("double six construction: ") + e.what());
  }

  Conic first = wall_conic(p, 0, WallSide::kU);
  SixthPair six = sixth_point_pair(p);
  bool through = first(six.v.h).is_zero();
  for (std::size_t j = 1; j < 5; ++j) through = through && first(p.v(j).h).is_zero();
  c.check(first.label == "C^1" && through, "C^1 passes through v2..v5 and v0");
}

void criterion10(Criterion& c) {
  Rng rng(10010);
  std::size_t identity_ok = 0;
  for (int n = 0; n < 1000; ++n) {
    oracle::Cam cam{rng.mat(5), rng.vec(5)};
    if (oracle::det3(cam.g) == 0) {
      --n;
      continue;
    }
    Mat3 g;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t k = 0; k < 3; ++k) g(r, k) = S(cam.g[r][k]);
    Vec4 center = Camera::from_parts(g, P(cam.t).h).center();
    oracle::V4 cc{Q(center[0]), Q(center[1]), Q(center[2]), Q(center[3])};
    std::array<oracle::V4, 3> q;
    for (auto& x : q) x = {rng.rational(5, 3), rng.rational(5, 3), rng.rational(5, 3), rng.rational(5, 3)};
    identity_ok += oracle::det3(cam.project(q[0]), cam.project(q[1]), cam.project(q[2])) == oracle::det4(q[0], q[1], q[2], cc);
  }
  c.check(identity_ok == 1000, "det[Aq1 Aq2 Aq3] = det[q1 q2 q3 c] on 1000 instances (" + std::to_string(identity_ok) + ")");

  std::size_t agree = 0, compared = 0, inconclusive = 0;
  for (int n = 0; n < 1000; ++n) {
    Mat3 x;
    do x = outer(P(rng.vec(5)).h, P(rng.vec(5)).h) + outer(P(rng.vec(5)).h, P(rng.vec(5)).h);
    while (matrix_rank(x) != 2);
    // pairs satisfying the epipolar equation of x: v on the line x·u
    std::vector<PointPair> pairs;
    while (pairs.size() < 2) {
      Vec3 u{rng.integer(-6, 6), rng.integer(-6, 6), 1};
      Vec3 v = cross(x * u, P(rng.vec(5)).h);
      if (v[2].is_zero()) continue;
      pairs.push_back({HPoint2(u), HPoint2(v * (Scalar(1) / v[2]))});
    }
    PairSet p;
    try {
      p = PairSet(pairs);
    } catch (const Error&) {
      --n;
      continue;
    }
    FundamentalCandidate fc(x);
    try {
      SignAgreement s = sign_agreement(fc, p, 0, 1);
      ++compared;
      int expected = oracle::product_sign(M(x), V(p.u(0)), V(p.v(0)), V(p.u(1)), V(p.v(1)));
      agree += s.agree() && s.g_sign == expected;
    } catch (const InconclusiveD&) {
      ++inconclusive;
    }
  }
  c.check(agree == compared, "sign D(adj(X)t, t) = sign g_i g_j whenever D != 0 (" + std::to_string(agree) + "/" +
                                 std::to_string(compared) + ", " + std::to_string(inconclusive) + " with D = 0)");

  std::size_t invariant = 0;
  for (int n = 0; n < 1000; ++n) {
    Mat3 x;
    do x = outer(P(rng.vec(5)).h, P(rng.vec(5)).h) + outer(P(rng.vec(5)).h, P(rng.vec(5)).h);
    while (matrix_rank(x) != 2);
    oracle::Q mu = rng.rational(6, 4);
    if (mu == 0) mu = -1;
    PointPair a{P(rng.vec(5)), P(rng.vec(5))}, b{P(rng.vec(5)), P(rng.vec(5))};
    int base = (g(FundamentalCandidate(x), a) * g(FundamentalCandidate(x), b)).sign();
    FundamentalCandidate scaled(x * S(mu));
    int after = (g(scaled, a) * g(scaled, b)).sign();
    oracle::M3 om = M(x);
    oracle::V3 t = oracle::left_kernel(om), flipped{-t[0], -t[1], -t[2]};
    int flip = oracle::sgn(oracle::g(om, flipped, V(a.u), V(a.v)) * oracle::g(om, flipped, V(b.u), V(b.v)));
    invariant += base == after && base == flip;
  }
  c.check(invariant == 1000, "g_i g_j sign invariant under scaling and t-flip on 1000 instances (" +
                                 std::to_string(invariant) + ")");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"non-chiral five pairs: No, 20 corner rows exact", criterion1},
      {"perturbed five pairs: Yes, corner values and passing set exact", criterion2},
      {"witness soundness: verify_chiral and exact reprojection", criterion3},
      {"sixth point pair: exact up to scale", criterion4},
      {"drop-one consistency: exact", criterion5},
      {"k=4 counterexamples: No, sign vector exact", criterion6},
      {"totality: 1000 k=3 and 500 equal-rank k=4 verified witnesses", criterion7},
      {"census: n=2000 integer grid, Yes and No each >= 1%", criterion8},
      {"geometry: 20 corners, 27 lines, double six, C^1 incidences exact", criterion9},
      {"identities: 1000 instances each, exact", criterion10},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[n].second(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("AC%-2zu %s  %s  [%zu checks, %.1fs]\n", n + 1, c.passed() ? "PASS" : "FAIL", criteria[n].first.c_str(),
                c.checks(), secs);
    for (const std::string& note : c.notes()) std::printf("       %s\n", note.c_str());
    std::size_t shown = 0;
    for (const std::string& f : c.failures())
      if (shown++ < 10) std::printf("       failed: %s\n", f.c_str());
    if (c.failures().size() > 10) std::printf("       ... %zu more\n", c.failures().size() - 10);
    failed += !c.passed();
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
