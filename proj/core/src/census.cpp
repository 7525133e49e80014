#include "chirality/census.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include "chirality/errors.hpp"

namespace chiral {
namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Uniform integer in [lo, hi] without relying on library distributions,
// whose output is implementation-defined.
long uniform(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

Scalar coordinate(std::mt19937_64& rng, const SampleConfig& cfg) {
  if (cfg.generator == Generator::kIntegerGrid) return Scalar(uniform(rng, cfg.grid_lo, cfg.grid_hi));
  long den = uniform(rng, 1, cfg.denominator_bound);
  long num = uniform(rng, static_cast<long>(cfg.grid_lo) * den, static_cast<long>(cfg.grid_hi) * den);
  return Scalar(num, den);
}

}  // namespace

unsigned worker_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CHIRALITY_THREADS")) {
    long c = std::strtol(cap, nullptr, 10);
    if (c >= 1) n = std::min(n, static_cast<unsigned>(c));
  }
  return n;
}

PairSet census_sample(const SampleConfig& config, std::size_t index) {
  if (config.grid_hi <= config.grid_lo) throw InvalidInput("grid range is empty");
  auto rng = stream(config.seed, index);
  for (;;) {
    std::vector<PointPair> pairs;
    for (std::size_t i = 0; i < config.k; ++i) {
      Scalar ux = coordinate(rng, config), uy = coordinate(rng, config);
      Scalar vx = coordinate(rng, config), vy = coordinate(rng, config);
      pairs.push_back({HPoint2::affine(ux, uy), HPoint2::affine(vx, vy)});
    }
    try {
      return PairSet(std::move(pairs));
    } catch (const InvalidInput&) {
      // repeated point; draw again from the same stream
    }
  }
}

CensusStats census_run(const SampleConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Status> outcome(config.n, Status::kUnknown);
  DecideOptions options;
  options.want_witness = config.want_witness;

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.n; i = next++) {
      try {
        outcome[i] = decide(census_sample(config, i), options).status;
      } catch (const Error&) {
        outcome[i] = Status::kUnknown;
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(worker_threads(config.threads), std::max<std::size_t>(config.n, 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }

  CensusStats stats;
  for (std::size_t i = 0; i < config.n; ++i) {
    switch (outcome[i]) {
      case Status::kYes:
        ++stats.yes;
        if (!stats.yes_example) stats.yes_example = census_sample(config, i);
        break;
      case Status::kNo:
        ++stats.no;
        if (!stats.no_example) stats.no_example = census_sample(config, i);
        break;
      case Status::kUnknown:
        ++stats.unknown;
        if (!stats.unknown_example) stats.unknown_example = census_sample(config, i);
        break;
    }
  }
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

PerturbationReport perturbation_probe(const PairSet& pairs, const Scalar& radius, std::size_t trials,
                                      std::uint64_t seed) {
  DecideOptions options;
  options.want_witness = false;
  PerturbationReport rep;
  rep.baseline = decide(pairs, options).status;
  constexpr long kSteps = 1000;
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto jitter = [&] { return radius * Scalar(uniform(rng, -kSteps, kSteps), kSteps); };
    std::vector<PointPair> moved;
    for (const PointPair& p : pairs.pairs())
      moved.push_back({HPoint2::affine(p.u[0] + jitter(), p.u[1] + jitter()), HPoint2::affine(p.v[0] + jitter(), p.v[1] + jitter())});
    Status s = Status::kUnknown;
    try {
      s = decide(PairSet(std::move(moved)), options).status;
    } catch (const Error&) {
    }
    ++rep.trials;
    ++rep.outcomes[s];
    if (s == rep.baseline) ++rep.preserved;
  }
  return rep;
}

}  // namespace chiral
