#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chirality/chirality.hpp"
#include "chirality/reconstruct.hpp"

namespace chiral {

enum class Status { kYes, kNo, kUnknown };
std::string to_string(Status s);

struct Witness {
  FundamentalCandidate x;
  Reconstruction reconstruction;
};

/// Evidence attached to a No (and, for k = 5, to every decision).
struct Certificate {
  std::string kind;  // "corner-tests", "failing-subset", "sign-vector", "epipole-pencil"
  std::vector<CornerReport> corners;
  std::vector<std::size_t> subset;  // failing five-subset for k ≥ 6
  std::vector<int> v_signs;         // sign vector of det[v_i v_j e₂] over pairs i < j
  std::vector<std::vector<int>> u_signs;  // sign vectors seen on the u side
  std::string summary;
};

struct Decision {
  Status status = Status::kUnknown;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
  std::string reason;  // set for Unknown
  std::string method;  // construction that produced the answer
  std::vector<std::string> flags;
};

struct DecideOptions {
  bool want_witness = true;
  int budget = 50;  // witness search effort
};

Decision decide(const PairSet& pairs, const DecideOptions& options = {});
Decision decide_k_le_3(const PairSet& pairs, const DecideOptions& options = {});
Decision decide_k4(const PairSet& pairs, const DecideOptions& options = {});
Decision decide_k5(const PairSet& pairs, const DecideOptions& options = {});
Decision decide_k_ge_6(const PairSet& pairs, const DecideOptions& options = {});

// Full check of a candidate: rank two, strictly inside the chiral region,
// and a verified chiral reconstruction.
std::optional<Witness> try_witness(const PairSet& pairs, const Mat3& x);

// Pairs (i, j), i < j, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t k);

}  // namespace chiral
