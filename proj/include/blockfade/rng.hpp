#pragma once

#include <cstdint>
#include <random>

#include "blockfade/types.hpp"

namespace blockfade {

// splitmix64 finalizer over (seed, stream); gives each trial its own engine
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  // uniform on (0, 1], 53 bits
  double uniform();
  // CN(0,1): real and imaginary parts each N(0, 1/2)
  Complex complex_gaussian();
  CVector complex_gaussian(Index n);
  CMatrix complex_gaussian(Index rows, Index cols);
  // Haar-ish unitary from QR of a Gaussian matrix
  CMatrix random_unitary(Index n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace blockfade
