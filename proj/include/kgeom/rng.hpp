#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace kgeom {

/// Seedable random source with a bit-exact, platform-independent stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here instead of via
/// <random>'s distribution classes because those are implementation
/// defined. Draw accounting, so streams can be reproduced from the doc
/// alone:
///   uniform01    — one engine draw, (x >> 11) * 2^-53, in [0,1)
///   normal       — two engine draws, Box-Muller cosine branch
///   unit_vector  — d normal draws, renormalized (retry on underflow)
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller; consumes exactly two engine draws.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Uniform direction on the unit sphere of R^d.
  Eigen::VectorXd unit_vector(int d) {
    Eigen::VectorXd v(d);
    double n = 0.0;
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
      n = v.norm();
    } while (n < 1e-12);
    return v / n;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace kgeom
