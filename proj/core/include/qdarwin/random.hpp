#pragma once

#include <cstdint>
#include <random>

#include "qdarwin/state.hpp"

namespace qdarwin {

// Seeded generator whose output is fixed by the standard (mt19937_64) and by
// this file, not by the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; mixes a master seed with stream coordinates.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
Matrix haar_unitary(std::size_t dim, Rng& rng);

Ket random_ket(const SubsystemLayout& layout, Rng& rng);
/// Mixed state G G^dagger / Tr(G G^dagger), G a d x rank complex Gaussian matrix.
DensityMatrix random_density(const SubsystemLayout& layout, Rng& rng, std::size_t rank = 0);
/// Random Hermitian matrix with Gaussian entries.
HermitianOperator random_hermitian(const SubsystemLayout& layout, Rng& rng);

}  // namespace qdarwin
