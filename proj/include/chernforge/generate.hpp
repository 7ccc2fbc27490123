#pragma once

// Seeded pseudo-random instances for the verification suites.
//
// Distributions: torus dimension <= 6, K entries in [-3, 3], at most 4 Fourier
// modes per generated form with frequency entries in [-2, 2], rational
// coefficients with denominators <= 12. Draws use only the raw mt19937_64 output,
// so a seed gives the same instances on every platform.

#include "chernforge/chern.hpp"

#include <cstdint>
#include <random>

namespace chernforge {

class CaseGenerator {
 public:
  explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

  /// p / q with 1 <= q <= 12 and |p| <= q * bound.
  Rational rational(int bound = 1);
  Gauss gauss(int bound = 1);

  /// Real homogeneous form of degree p on T^n (or [0,1] x T^n), with 1..modes Fourier modes.
  TorusForm real_form(int n, int p, int modes = 4, bool has_t = false);
  /// Arbitrary (not necessarily real) form with terms of mixed degree.
  TorusForm any_form(int n, int terms = 4, bool has_t = false);
  /// Real function vanishing at 0.
  TorusForm based_function(int n, int modes = 2);
  /// Real odd form with components in degrees 1, 3, ...
  TorusForm odd_form(int n, int modes = 4);

  LineBundle line(int n);
  DiagBundle bundle(int n, int max_rank = 3);
  KCycle cycle(int n, bool nonzero_rho = false);
  OddKCycle odd_cycle(int n, int max_components = 3);

  /// Closed odd form with integer periods plus an exact odd form.
  TorusForm gauge_shift(int n);
  /// Integer matrix with entries in [-2, 2].
  IntMatrix matrix(int rows, int cols);
  /// Random degree-3 or degree-2 path polynomial with q(0) = 0 and q(1) = 1.
  PathPoly path();

 private:
  std::vector<int> frequency(int n);
  IndexMask random_mask(int n, int p);

  std::mt19937_64 rng_;
};

}  // namespace chernforge
