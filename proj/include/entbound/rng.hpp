#pragma once

#include <cstdint>
#include <random>

#include "entbound/linalg.hpp"

namespace entbound {

// Deterministic random source. The engine (mt19937_64) and every variate
// transformation here are fully specified, so a seed reproduces the same
// stream on any platform; the std::*_distribution adapters are
// implementation-defined and deliberately not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double gaussian();

  // Independent standard normals in both components.
  Complex complex_gaussian() {
    const double re = gaussian();
    return {re, gaussian()};
  }

  // Uniform integer in [0, n), rejection-sampled.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Per-trial seed derivation (splitmix64 over master ^ mixed index), so
// trials are independent and reproducible in isolation.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Matrix random_gaussian_matrix(Index rows, Index cols, Rng& rng);
Vector random_gaussian_vector(Index dim, Rng& rng);

// Haar-distributed unitary: QR of a complex Gaussian matrix with the
// R-diagonal phase fix.
Matrix random_unitary(Index dim, Rng& rng);

}  // namespace entbound
