// rng.hpp -- deterministic random numbers.
//
// std::uniform_real_distribution is implementation defined, so sampling goes
// through explicit bit manipulation to keep output files bit-identical
// across compilers (reruns with the same seed must reproduce CSVs exactly).

#pragma once

#include <cstdint>
#include <random>

#include "polyscat/common.hpp"

namespace polyscat {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0,1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

  Vec3 point_in_box(const Vec3& lo, const Vec3& hi) {
    return Vec3(uniform(lo.x(), hi.x()), uniform(lo.y(), hi.y()),
                uniform(lo.z(), hi.z()));
  }

  Vec3 unit_vector() {
    // Marsaglia rejection; deterministic given the stream.
    for (;;) {
      const double a = uniform(-1.0, 1.0);
      const double b = uniform(-1.0, 1.0);
      const double s = a * a + b * b;
      if (s >= 1.0 || s == 0.0) continue;
      const double t = 2.0 * std::sqrt(1.0 - s);
      return Vec3(a * t, b * t, 1.0 - 2.0 * s);
    }
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace polyscat
