#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "hdm/hypergraph.hpp"

namespace hdm {

/// Seedable generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so all
/// derived variates (uniform reals, bounded integers) are computed here from
/// raw engine output. Independent streams come from derive_seed(seed, stream).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound), bound > 0, by rejection (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t r = 0;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal by Box-Muller on the generator's own uniforms.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * 3.14159265358979323846 * v);
    has_spare_ = true;
    return r * std::cos(2.0 * 3.14159265358979323846 * v);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the stream-th independent substream of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform random k-subset of {0, ..., n-1} (Floyd's algorithm), sorted.
inline std::vector<Vertex> random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Vertex> out;
  out.reserve(k);
  std::unordered_set<Vertex> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<Vertex>(rng.below(j + 1));
    if (chosen.insert(t).second) {
      out.push_back(t);
    } else {
      chosen.insert(static_cast<Vertex>(j));
      out.push_back(static_cast<Vertex>(j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// k distinct indices drawn sequentially with probability proportional to
/// weight, renormalizing over the remaining indices after each draw. Sorted.
inline std::vector<Vertex> weighted_subset(Rng& rng, const std::vector<double>& weight,
                                           std::size_t k) {
  std::vector<Vertex> out;
  out.reserve(k);
  std::vector<char> taken(weight.size(), 0);
  for (std::size_t draw = 0; draw < k; ++draw) {
    double remaining = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
      if (!taken[i] && weight[i] > 0.0) remaining += weight[i];
    }
    const double target = rng.uniform() * remaining;
    double acc = 0.0;
    std::size_t pick = weight.size();
    std::size_t last_positive = weight.size();
    for (std::size_t i = 0; i < weight.size(); ++i) {
      if (taken[i] || weight[i] <= 0.0) continue;
      last_positive = i;
      acc += weight[i];
      if (target < acc) {
        pick = i;
        break;
      }
    }
    if (pick == weight.size()) pick = last_positive;  // roundoff at the upper end
    taken[pick] = 1;
    out.push_back(static_cast<Vertex>(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hdm
