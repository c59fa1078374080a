#pragma once

#include <cstdint>
#include <string>

#include "sparsedom/grid.hpp"

namespace sparsedom {

// Linear congruential generator (Knuth multiplier), fully specified so
// suites are reproducible anywhere from the seed alone.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed * 2862933555777941757ull + 3037000493ull) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_;
  }
  // uniform in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // inclusive bounds
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Named generators for scenario configs.  Specs:
//   constant(c)        the constant c
//   power(a)           |x|^a from the box midpoint, cell-midpoint evaluated
//   step(u,v)          u on the lower half of the box, v on the upper
//   sign               -1 / +1 split at the box midpoint
//   random(lo,hi)      iid uniform values
//   bumps(k)           k random rectangular bumps with random heights
//   product(s1;s2)     dim 2 only: 1d spec s1 in x times 1d spec s2 in y
GridFunction generate_function(const Grid& g, const std::string& spec, Lcg& rng);

}  // namespace sparsedom
