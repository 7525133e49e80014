#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chirality/decide.hpp"

namespace chiral {

enum class Generator { kIntegerGrid, kRationalUniform };

struct SampleConfig {
  std::uint64_t seed = 42;
  std::size_t n = 2000;
  Generator generator = Generator::kIntegerGrid;
  int grid_lo = 0;  // integer grid coordinates in [grid_lo, grid_hi]
  int grid_hi = 8;
  int denominator_bound = 8;  // rational-uniform: p/q with 1 ≤ q ≤ bound, value in [grid_lo, grid_hi]
  std::size_t k = 5;
  bool want_witness = false;
  unsigned threads = 0;  // 0: hardware concurrency, capped by CHIRALITY_THREADS
};

struct CensusStats {
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t unknown = 0;  // non-generic or undecided
  std::optional<PairSet> yes_example;
  std::optional<PairSet> no_example;
  std::optional<PairSet> unknown_example;
  double seconds = 0;

  std::size_t total() const { return yes + no + unknown; }
};

// Sample number `index` of the stream; a pure function of (config, index).
PairSet census_sample(const SampleConfig& config, std::size_t index);
CensusStats census_run(const SampleConfig& config);

struct PerturbationReport {
  Status baseline = Status::kUnknown;
  std::size_t trials = 0;
  std::size_t preserved = 0;
  std::map<Status, std::size_t> outcomes;
  double fraction() const { return trials ? static_cast<double>(preserved) / static_cast<double>(trials) : 1.0; }
};

// Moves every coordinate by a rational of magnitude at most `radius` and
// reports how often the decision survives.
PerturbationReport perturbation_probe(const PairSet& pairs, const Scalar& radius, std::size_t trials,
                                      std::uint64_t seed = 1);

// Worker count: the request (or hardware concurrency), capped by CHIRALITY_THREADS.
unsigned worker_threads(unsigned requested = 0);

}  // namespace chiral
