#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fint {

// Counter-based generator: value = mix(seed, counter). Stateless draws keyed
// by (seed, counter) give byte-identical streams on every platform, which the
// deterministic-report contract requires (std:: distributions do not).
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(mix(seed ^ 0xd1b54a32d192ed03ull) + counter);
  }

  // uniform in [0, 1)
  double u01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * u01(counter);
  }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
    return bits(counter) % n;
  }
};

// Axis-aligned box domain, one [lo, hi] interval per variable.
struct Box {
  std::vector<std::array<double, 2>> iv;

  static Box unit(int dim) {
    Box b;
    b.iv.assign(static_cast<std::size_t>(dim), {-1.0, 1.0});
    return b;
  }
  int dim() const { return static_cast<int>(iv.size()); }
  std::vector<double> center() const {
    std::vector<double> c;
    c.reserve(iv.size());
    for (auto& r : iv) c.push_back(0.5 * (r[0] + r[1]));
    return c;
  }
};

// k-th sample point in the box for a given seed; counters advance per
// coordinate so the stream is independent of how many points are taken.
inline std::vector<double> sampleBox(const CounterRng& rng, const Box& box,
                                     std::uint64_t pointIndex) {
  std::vector<double> p(box.iv.size());
  for (std::size_t i = 0; i < box.iv.size(); ++i)
    p[i] = rng.uniform(pointIndex * box.iv.size() + i, box.iv[i][0], box.iv[i][1]);
  return p;
}

}  // namespace fint
