// Seeded random generators for states, unitaries and channels. All draws go
// through Rng (mt19937_64 + hand-rolled Box-Muller) so that a given seed
// produces the same bits on every run.
#ifndef KRAUS_RANDOM_HPP
#define KRAUS_RANDOM_HPP

#include <cstdint>
#include <random>

#include "kraus/types.hpp"

namespace kraus {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // standard normal via Box-Muller (pairs cached)
  double gaussian();

  // complex standard normal, re/im ~ N(0, 1/2)
  Complex complex_gaussian();

  // uniform integer in [0, n)
  std::uint64_t uniform_index(std::uint64_t n);

private:
  double uniform01();

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// rows x cols matrix of complex standard normals
ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng);

// Haar-like random unitary: QR of a Gaussian matrix with the R diagonal
// phases absorbed into Q so the result is deterministic.
ComplexMatrix random_unitary(Index dim, Rng& rng);

// rows x cols (rows >= cols) with orthonormal columns
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng);

// unit-norm random vector
ComplexVector random_unit_vector(Index dim, Rng& rng);

} // namespace kraus

#endif
