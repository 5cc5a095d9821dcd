#pragma once

#include "crmw/lie.hpp"
#include "crmw/matrix.hpp"

#include <cstdint>
#include <random>

namespace crmw {

// Deterministic generator of small exact test data. Only the raw mt19937_64
// stream is used so results do not depend on the standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [lo, hi].
  long integer(long lo, long hi);
  bool coin() { return integer(0, 1) == 1; }
  // Re and Im with numerators in [-bound, bound] and denominators in {1, 2}.
  GR gr(long bound = 3, bool complex = true);
  Matrix matrix(std::size_t rows, std::size_t cols, long bound = 3, bool complex = true);
  Matrix symmetric(std::size_t n, long bound = 3);
  // Hermitian with nonzero determinant.
  Matrix hermitian_nondegenerate(std::size_t n, long bound = 2);
  Matrix invertible(std::size_t n, long bound = 2);
  CspElement csp(int s, long bound = 2);

private:
  std::mt19937_64 eng_;
};

} // namespace crmw
