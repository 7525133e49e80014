#include "roots.hpp"

#include <algorithm>
#include <cmath>

#include "chirality/errors.hpp"

namespace chiral::detail {
namespace {

std::size_t degree(std::span<const Scalar> poly) {
  std::size_t d = poly.size();
  while (d > 0 && poly[d - 1].is_zero()) --d;
  return d == 0 ? 0 : d - 1;
}

bool rational_sqrt(const Scalar& x, Scalar& root) {
  if (x.sign() < 0) return false;
  if (!x.is_exact()) {
    root = Scalar::floating(std::sqrt(x.to_double()));
    return true;
  }
  const mpq_class& q = x.rational();
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Scalar(mpq_class(n, d));
  return true;
}

Scalar bisect(std::span<const Scalar> poly, Scalar lo, Scalar hi, int iterations, Scalar* other) {
  int slo = evaluate(poly, lo).sign();
  for (int it = 0; it < iterations; ++it) {
    Scalar mid = (lo + hi) / Scalar(2);
    int s = evaluate(poly, mid).sign();
    if (s == 0) {
      *other = mid;
      return mid;
    }
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  *other = hi;
  return lo;
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Simplest rational in (lo, hi) for 0 ≤ lo < hi; hi may be infinite.
mpq_class simplest_nonneg(const mpq_class& lo, const mpq_class* hi) {
  mpz_class fl = floor_of(lo);
  mpq_class next(fl + 1);
  if (!hi || next < *hi) return next;
  // no integer strictly inside; both bounds share the integer part
  mpq_class frac_lo = lo - fl;
  mpq_class frac_hi = *hi - fl;
  mpq_class inv_hi = 1 / frac_hi;
  if (frac_lo == 0) return fl + 1 / simplest_nonneg(inv_hi, nullptr);
  mpq_class inv_lo = 1 / frac_lo;
  return fl + 1 / simplest_nonneg(inv_hi, &inv_lo);
}

}  // namespace

Scalar evaluate(std::span<const Scalar> poly, const Scalar& x) {
  Scalar acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

std::vector<RootBracket> real_roots_upto_quadratic(std::span<const Scalar> poly) {
  std::vector<RootBracket> out;
  std::size_t d = degree(poly);
  if (d == 0) return out;
  if (d == 1) {
    Scalar r = -poly[0] / poly[1];
    out.push_back({r, r});
    return out;
  }
  if (d > 2) throw DimensionError("degree above two");
  const Scalar& c = poly[0];
  const Scalar& b = poly[1];
  const Scalar& a = poly[2];
  Scalar disc = b * b - Scalar(4) * a * c;
  Scalar vertex = -b / (Scalar(2) * a);
  if (disc.sign() < 0) return out;
  if (disc.is_zero()) {
    out.push_back({vertex, vertex});
    return out;
  }
  Scalar root;
  if (rational_sqrt(disc, root)) {
    Scalar r1 = (-b - root) / (Scalar(2) * a);
    Scalar r2 = (-b + root) / (Scalar(2) * a);
    if (r2 < r1) std::swap(r1, r2);
    out.push_back({r1, r1});
    out.push_back({r2, r2});
    return out;
  }
  Scalar bound = Scalar(1) + std::max(abs(b), abs(c)) / abs(a);
  Scalar hi_left, hi_right;
  Scalar lo_left = bisect(poly, -bound, vertex, 64, &hi_left);
  Scalar lo_right = bisect(poly, vertex, bound, 64, &hi_right);
  out.push_back({lo_left, hi_left});
  out.push_back({lo_right, hi_right});
  return out;
}

std::vector<Scalar> rational_roots_cubic(std::span<const Scalar> poly) {
  std::vector<Scalar> out;
  std::size_t d = degree(poly);
  if (d == 0) return out;
  if (d <= 2) {
    for (const RootBracket& r : real_roots_upto_quadratic(poly.first(d + 1)))
      if (r.lo == r.hi) out.push_back(r.lo);
    return out;
  }
  Scalar biggest = 0;
  for (const Scalar& x : poly) biggest = std::max(biggest, abs(x));
  long double c[4];
  for (std::size_t i = 0; i < 4; ++i) c[i] = static_cast<long double>((poly[i] / biggest).to_double());
  auto f = [&](long double x) { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; };
  // split at the critical points of the cubic
  std::vector<long double> cuts;
  long double A = 3 * c[3], B = 2 * c[2], C = c[1];
  long double disc = B * B - 4 * A * C;
  if (disc > 0) {
    long double s = std::sqrt(disc);
    cuts.push_back((-B - s) / (2 * A));
    cuts.push_back((-B + s) / (2 * A));
    std::sort(cuts.begin(), cuts.end());
  }
  long double bound = 1;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, 1 + std::fabs(c[i] / c[3]));
  std::vector<long double> edges{-bound};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(bound);
  std::vector<long double> approx;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    long double lo = edges[k], hi = edges[k + 1];
    long double flo = f(lo), fhi = f(hi);
    if (flo == 0) approx.push_back(lo);
    if ((flo < 0) == (fhi < 0)) continue;
    for (int it = 0; it < 200; ++it) {
      long double mid = (lo + hi) / 2;
      if ((f(mid) < 0) == (flo < 0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    approx.push_back((lo + hi) / 2);
  }
  for (long double r : approx) {
    // continued-fraction convergents of r
    long double x = r;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 40; ++it) {
      long double a = std::floor(x);
      if (std::fabs(a) > 1e15L) break;
      mpz_class ai(static_cast<double>(a));
      mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      Scalar cand(mpq_class(p1, q1));
      if (evaluate(poly, cand).is_zero()) {
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
        break;
      }
      long double frac = x - a;
      if (frac < 1e-18L || q1 > 100000000) break;
      x = 1 / frac;
    }
  }
  return out;
}

Scalar simplest_between(const Scalar& lo, const Scalar& hi) {
  if (!(lo < hi)) throw InvalidInput("empty interval");
  if (!lo.is_exact() || !hi.is_exact()) return (lo + hi) / Scalar(2);
  const mpq_class& a = lo.rational();
  const mpq_class& b = hi.rational();
  if (a < 0 && b > 0) return Scalar(0);
  if (b <= 0) {
    mpq_class na = -b, nb = -a;
    return Scalar(mpq_class(-simplest_nonneg(na, &nb)));
  }
  return Scalar(simplest_nonneg(a, &b));
}

}  // namespace chiral::detail
