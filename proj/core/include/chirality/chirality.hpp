#pragma once

#include <array>
#include <vector>

#include "chirality/epipolar.hpp"

namespace chiral {

// (t×v_i)ᵀ X u_i under the stored left-kernel representative t.
Scalar g(const FundamentalCandidate& x, const PointPair& pair);
Scalar g(const FundamentalCandidate& x, const PairSet& pairs, std::size_t i);

struct ChiralSignTable {
  std::vector<Scalar> g;
  std::vector<std::size_t> inactive;         // indices with g_i ≠ 0
  std::vector<std::vector<int>> products;    // sign of g_i g_j
  bool regular = false;
  bool feasible = false;  // P-regular and every product ≥ 0
  bool strict = false;    // every g_i ≠ 0 and every product > 0
};

ChiralSignTable sign_table(const FundamentalCandidate& x, const PairSet& pairs);

// det[u_i u_j u]·det[v_i v_j v]
Scalar D(const PairSet& pairs, std::size_t i, std::size_t j, const HPoint2& u, const HPoint2& v);

struct CornerReport {
  std::size_t i = 0;
  std::size_t j = 0;
  std::array<std::size_t, 3> rest{};  // l < m < n
  std::array<Scalar, 3> values;       // D_lm, D_ln, D_mn at (u_i, v_j)
  bool pass = false;
};

CornerReport corner_sign_test(const PairSet& pairs, std::size_t i, std::size_t j);
std::vector<CornerReport> all_corner_tests(const PairSet& pairs);

// A point e with sign(det[a₁a₂e], det[a₁a₃e], det[a₂a₃e]) = signs. The
// weights pick a point inside the open cone; any positive weights work.
HPoint2 chirotope_match(const HPoint2& a1, const HPoint2& a2, const HPoint2& a3, const std::array<int, 3>& signs,
                        const std::array<Scalar, 3>& weights = {Scalar(1), Scalar(1), Scalar(1)});

struct SignAgreement {
  int d_sign = 0;
  int g_sign = 0;
  bool agree() const { return d_sign == g_sign; }
};

// Compares sign D_ij(adj(X)t, t) with sign g_i g_j. Throws InconclusiveD when D vanishes.
SignAgreement sign_agreement(const FundamentalCandidate& x, const PairSet& pairs, std::size_t i, std::size_t j);

// Clears denominators and removes the content of an exact vector.
Vec3 primitive(const Vec3& v);

}  // namespace chiral
