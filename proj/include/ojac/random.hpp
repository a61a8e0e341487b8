#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ojac/poly.hpp"

namespace ojac {

struct RandomOptions {
  unsigned max_degree = 3;
  unsigned max_terms = 4;
  int coeff_bound = 9;  // coefficients drawn from [-bound, bound] \ {0}
  bool include_momenta = false;
};

/// Seeded generator of homogeneous test functions. One instance per check;
/// never shared between threads.
class RandomPolys {
 public:
  explicit RandomPolys(std::uint64_t seed, RandomOptions opts = {}) : rng_(seed), opts_(opts) {}

  /// Homogeneous-parity polynomial in the base generators of `chart`
  /// (and the momenta too when include_momenta is set).
  Poly function(const Chart& chart, Parity parity);
  /// Same, drawing only from the listed generators.
  Poly function_of(const Chart& chart, const std::vector<std::size_t>& gens, Parity parity);

  /// Sum over A <= B of c^{AB}(x) p_A p_B, odd, momentum degree two.
  Poly almost_schouten(const Chart& phase);
  /// Sum over A of Q^A(x) p_A, odd, momentum degree one.
  Poly odd_symbol(const Chart& phase);

  Parity coin();
  std::mt19937_64& engine() { return rng_; }
  const RandomOptions& options() const { return opts_; }

 private:
  int coefficient();
  std::mt19937_64 rng_;
  RandomOptions opts_;
};

/// Deterministic for a fixed seed; coefficients in [-9, 9].
Poly random_function(const Chart& chart, unsigned max_degree, Parity parity, std::uint64_t seed);

}  // namespace ojac
