#include "chirality/chirality.hpp"

#include "chirality/errors.hpp"

namespace chiral {

Scalar g(const FundamentalCandidate& x, const PointPair& pair) {
  return dot(cross(x.left_kernel(), pair.v.h), x.matrix() * pair.u.h);
}

Scalar g(const FundamentalCandidate& x, const PairSet& pairs, std::size_t i) { return g(x, pairs[i]); }

ChiralSignTable sign_table(const FundamentalCandidate& x, const PairSet& pairs) {
  ChiralSignTable t;
  const std::size_t k = pairs.size();
  t.regular = true;
  for (std::size_t i = 0; i < k; ++i) {
    t.g.push_back(g(x, pairs, i));
    if (!t.g.back().is_zero()) t.inactive.push_back(i);
    t.regular = t.regular && is_regular(x, pairs[i]);
  }
  t.products.assign(k, std::vector<int>(k, 0));
  bool nonneg = true;
  bool positive = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      int s = t.g[i].sign() * t.g[j].sign();
      t.products[i][j] = s;
      if (i < j) {
        nonneg = nonneg && s >= 0;
        positive = positive && s > 0;
      }
    }
  t.feasible = t.regular && nonneg;
  t.strict = t.inactive.size() == k && positive;
  return t;
}

Scalar D(const PairSet& pairs, std::size_t i, std::size_t j, const HPoint2& u, const HPoint2& v) {
  return det3(pairs.u(i), pairs.u(j), u) * det3(pairs.v(i), pairs.v(j), v);
}

CornerReport corner_sign_test(const PairSet& pairs, std::size_t i, std::size_t j) {
  if (pairs.size() != 5) throw DimensionError("corner test needs five pairs");
  if (i == j) throw InvalidInput("corner test needs i != j");
  CornerReport rep;
  rep.i = i;
  rep.j = j;
  std::size_t n = 0;
  for (std::size_t l = 0; l < 5; ++l)
    if (l != i && l != j) rep.rest[n++] = l;
  const auto [l, m, r] = rep.rest;
  rep.values = {D(pairs, l, m, pairs.u(i), pairs.v(j)), D(pairs, l, r, pairs.u(i), pairs.v(j)),
                D(pairs, m, r, pairs.u(i), pairs.v(j))};
  for (const Scalar& v : rep.values)
    if (v.is_zero()) throw DegenerateInput("vanishing D value at a corner");
  int s = rep.values[0].sign();
  rep.pass = rep.values[1].sign() == s && rep.values[2].sign() == s;
  return rep;
}

std::vector<CornerReport> all_corner_tests(const PairSet& pairs) {
  std::vector<CornerReport> out;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (i != j) out.push_back(corner_sign_test(pairs, i, j));
  return out;
}

Vec3 primitive(const Vec3& v) {
  for (const Scalar& x : v.c)
    if (!x.is_exact()) return v;
  mpz_class lcm_den = 1;
  for (const Scalar& x : v.c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.rational().get_den_mpz_t());
  std::array<mpz_class, 3> ints;
  mpz_class content = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    mpq_class scaled = v[i].rational() * lcm_den;
    ints[i] = scaled.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (content == 0) return v;
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = Scalar(mpq_class(ints[i] / content));
  return out;
}

HPoint2 chirotope_match(const HPoint2& a1, const HPoint2& a2, const HPoint2& a3, const std::array<int, 3>& signs,
                        const std::array<Scalar, 3>& weights) {
  if (det3(a1, a2, a3).is_zero()) throw InvalidInput("chirotope_match needs a non-collinear triple");
  DenseMatrix normals(3, 3);
  const std::array<Vec3, 3> rows{cross(a1.h, a2.h), cross(a1.h, a3.h), cross(a2.h, a3.h)};
  std::array<Scalar, 3> rhs;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) normals(r, c) = rows[r][c];
    if (signs[r] == 0 || weights[r].sign() <= 0) throw InvalidInput("signs must be ±1 and weights positive");
    rhs[r] = weights[r] * Scalar(signs[r]);
  }
  std::vector<Scalar> e = solve_square(normals, rhs);
  return HPoint2(primitive(Vec3{e[0], e[1], e[2]}));
}

SignAgreement sign_agreement(const FundamentalCandidate& x, const PairSet& pairs, std::size_t i, std::size_t j) {
  Scalar d = D(pairs, i, j, HPoint2(x.right_kernel()), HPoint2(x.left_kernel()));
  if (d.is_zero()) throw InconclusiveD("D_ij vanishes at the epipole pair");
  return {d.sign(), g(x, pairs, i).sign() * g(x, pairs, j).sign()};
}

}  // namespace chiral
