#pragma once

// Seeded random generation. Every draw comes from an explicit Rng built from a
// RandomConfig; equal configs give bit-identical sequences.

#include <cstdint>
#include <random>

#include "schmidt/linalg.hpp"

namespace schmidt {

struct RandomConfig {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  /// Independent child stream, e.g. one per restart or per sample.
  RandomConfig child(std::uint64_t index) const;
};

class Rng {
 public:
  explicit Rng(const RandomConfig& cfg);

  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_gaussian(int rows, int cols, Rng& rng);
ComplexMatrix random_hermitian(int dim, Rng& rng);

ComplexVector random_unit_vector(int dim, Rng& rng);
/// sum_{i<=k} alpha_i |a_i>|b_i>, normalized; Schmidt rank <= k by construction.
PureState random_sr_k_vector(Dims dims, int k, Rng& rng);
Frame random_frame(int n, int k, Rng& rng);
/// Haar unitary (QR of a Ginibre matrix with the R-diagonal phase fix).
ComplexMatrix random_unitary(int dim, Rng& rng);
/// First `cols` columns of a Haar unitary.
ComplexMatrix random_isometry(int rows, int cols, Rng& rng);
/// Density matrix with Hilbert-Schmidt measure.
ComplexMatrix random_density(int dim, Rng& rng);
/// Choi matrix (dims r, n) of a CPTP map M_r -> M_n obtained from a Haar
/// Stinespring isometry C^r -> C^n (x) C^env. env = 0 means env = r * n.
BipartiteOperator random_cptp(int r, int n, Rng& rng, int env = 0);

}  // namespace schmidt
