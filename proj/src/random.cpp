#include "schmidt/random.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schmidt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomConfig RandomConfig::child(std::uint64_t index) const {
  return {seed, splitmix64(stream_index ^ splitmix64(index + 1))};
}

Rng::Rng(const RandomConfig& cfg) {
  std::array<std::uint32_t, 4> words{
      static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
      static_cast<std::uint32_t>(cfg.stream_index), static_cast<std::uint32_t>(cfg.stream_index >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  // Fill in row-major order so draws do not depend on the storage layout.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = rng.complex_normal();
  }
  return out;
}

ComplexMatrix random_hermitian(int dim, Rng& rng) { return hermitian_part(random_gaussian(dim, dim, rng)); }

ComplexVector random_unit_vector(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unit_vector: dim must be positive");
  ComplexVector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

PureState random_sr_k_vector(Dims dims, int k, Rng& rng) {
  if (k < 1 || k > dims.min_dim()) {
    throw std::invalid_argument("random_sr_k_vector: k = " + std::to_string(k) + " out of range");
  }
  const ComplexMatrix a = random_gaussian(dims.m, k, rng);
  const ComplexMatrix b = random_gaussian(dims.n, k, rng);
  return PureState::normalized(from_coefficient_matrix(a * b.transpose()), dims);
}

Frame random_frame(int n, int k, Rng& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("random_frame: need 1 <= k <= n");
  return Frame(orthonormalize_columns(random_gaussian(n, k, rng)));
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
  return orthonormalize_columns(random_gaussian(dim, dim, rng));
}

ComplexMatrix random_isometry(int rows, int cols, Rng& rng) {
  if (cols < 1 || cols > rows) throw std::invalid_argument("random_isometry: need 1 <= cols <= rows");
  return random_unitary(rows, rng).leftCols(cols);
}

ComplexMatrix random_density(int dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

BipartiteOperator random_cptp(int r, int n, Rng& rng, int env) {
  if (r < 1 || n < 1) throw std::invalid_argument("random_cptp: dimensions must be positive");
  if (env <= 0) env = r * n;
  const ComplexMatrix iso = random_isometry(n * env, r, rng);
  // Kraus operator K_a = (I_n (x) <a|) iso, an n x r matrix.
  ComplexMatrix choi = ComplexMatrix::Zero(static_cast<Eigen::Index>(r) * n, static_cast<Eigen::Index>(r) * n);
  for (int a = 0; a < env; ++a) {
    ComplexMatrix kraus(n, r);
    for (int i = 0; i < n; ++i) kraus.row(i) = iso.row(i * env + a);
    // |K_a>> = sum_i |i> (x) K_a|i>
    ComplexVector vec(static_cast<Eigen::Index>(r) * n);
    for (int i = 0; i < r; ++i) vec.segment(static_cast<Eigen::Index>(i) * n, n) = kraus.col(i);
    choi += vec * vec.adjoint();
  }
  return {hermitian_part(choi), Dims{r, n}};
}

}  // namespace schmidt
