#include <cmath>

#include "doctest.h"
#include "schmidt/linalg.hpp"
#include "schmidt/random.hpp"

using namespace schmidt;

namespace {

Rng rng_for(std::uint64_t seed) { return Rng(RandomConfig{seed, 0}); }

ComplexVector basis(int dim, int i) {
  ComplexVector e = ComplexVector::Zero(dim);
  e(i) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("tensor: identities, diagonals and block placement") {
  CHECK(tensor(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(3, 3)))
            .isApprox(ComplexMatrix::Identity(6, 6)));

  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  ComplexMatrix b(1, 1);
  b(0, 0) = 3.0;
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 3.0;
  expect(1, 1) = 6.0;
  CHECK(tensor(a, b).isApprox(expect));

  auto rng = rng_for(1);
  const ComplexMatrix sigma = random_gaussian(2, 2, rng);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const ComplexMatrix t = tensor(p0, sigma);
  CHECK(t.topLeftCorner(2, 2).isApprox(sigma));
  CHECK(t.bottomRows(2).norm() == 0.0);
  CHECK(t.rightCols(2).norm() == 0.0);
}

TEST_CASE("flat index convention is left-major") {
  // |1>|2> in C^2 (x) C^3 sits at 1*3 + 2.
  const ComplexVector v = tensor(basis(2, 1), basis(3, 2));
  CHECK(std::abs(v(5) - Complex(1.0)) < 1e-15);
  const ComplexMatrix c = as_coefficient_matrix(v, Dims{2, 3});
  CHECK(c.rows() == 2);
  CHECK(std::abs(c(1, 2) - Complex(1.0)) < 1e-15);
  CHECK(from_coefficient_matrix(c).isApprox(v));

  // block(i, j) of a x b is a(i, j) b
  auto rng = rng_for(2);
  const ComplexMatrix a = random_gaussian(2, 2, rng), b = random_gaussian(3, 3, rng);
  const BipartiteOperator x(tensor(a, b), Dims{2, 3});
  CHECK(x.block(1, 0).isApprox(a(1, 0) * b));
}

TEST_CASE("partial traces of a product operator") {
  auto rng = rng_for(3);
  const ComplexMatrix a = random_density(2, rng), b = random_density(3, rng);
  const ComplexMatrix ab = tensor(a, b);
  CHECK((partial_trace_first(ab, Dims{2, 3}) - b).norm() < 1e-12);
  CHECK((partial_trace_second(ab, Dims{2, 3}) - a).norm() < 1e-12);
}

TEST_CASE("schmidt_decompose examples") {
  const PureState prod = PureState::product(basis(2, 0), basis(2, 0));
  const auto sd = schmidt_decompose(prod);
  CHECK(schmidt_rank(prod) == 1);
  CHECK(sd.coeffs(0) == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(sd.left(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(sd.right(0, 0)) - 1.0) < 1e-12);

  const PureState bell(maximally_entangled(2), Dims{2, 2});
  const auto sb = schmidt_decompose(bell);
  CHECK(sb.coeffs(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sb.coeffs(1) == doctest::Approx(1.0 / std::sqrt(2.0)));

  auto rng = rng_for(4);
  const PureState v(random_unit_vector(9, rng), Dims{3, 3});
  CHECK((schmidt_decompose(v).reconstruct() - v.amplitudes()).norm() <= 1e-12);

  CHECK_THROWS(PureState::normalized(ComplexVector::Zero(4), Dims{2, 2}));
}

TEST_CASE("schmidt_rank examples") {
  CHECK(schmidt_rank(PureState(maximally_entangled(4), Dims{4, 4})) == 4);
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 2.0;
  v(3) = 1e-14;
  CHECK(schmidt_rank(PureState::normalized(v, Dims{2, 2}), 1e-9) == 1);
}

TEST_CASE("truncate_schmidt examples") {
  const PureState prod = PureState::product(basis(3, 1), basis(3, 2));
  CHECK(std::abs(truncate_schmidt(prod, 1).amplitudes().dot(prod.amplitudes())) == doctest::Approx(1.0));

  const PureState phi(maximally_entangled(3), Dims{3, 3});
  const auto t = schmidt_decompose(truncate_schmidt(phi, 2));
  CHECK(t.coeffs(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(t.coeffs(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(schmidt_rank(truncate_schmidt(phi, 2)) == 2);

  // coefficients (0.8, 0.6): keep the 0.8 term
  const ComplexVector v = 0.8 * tensor(basis(2, 0), basis(2, 0)) + 0.6 * tensor(basis(2, 1), basis(2, 1));
  const PureState s(v, Dims{2, 2});
  CHECK(std::abs(truncate_schmidt(s, 1).amplitudes().dot(v)) == doctest::Approx(0.8));

  CHECK_THROWS(truncate_schmidt(s, 3));
}

TEST_CASE("spectral helpers") {
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  CHECK(operator_norm(id) == doctest::Approx(1.0));
  CHECK(trace_norm(id) == doctest::Approx(4.0));

  auto rng = rng_for(5);
  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(numerical_radius(h) == doctest::Approx(operator_norm(h)).epsilon(1e-12));

  ComplexMatrix e01 = ComplexMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  CHECK(numerical_radius(e01) == doctest::Approx(0.5).epsilon(1e-12));

  const auto nr = numerical_radius_detail(random_gaussian(3, 3, rng));
  const ComplexMatrix g = random_gaussian(3, 3, rng);
  const auto nrg = numerical_radius_detail(g);
  CHECK(std::abs(nrg.vector.dot(g * nrg.vector)) == doctest::Approx(nrg.value).epsilon(1e-9));
  CHECK(nr.value > 0.0);

  CHECK(min_eig_hermitian(h) <= max_eig_hermitian(h));
  CHECK_THROWS(min_eig_hermitian(random_gaussian(3, 3, rng)));
  CHECK_THROWS(min_eig_hermitian(random_gaussian(2, 3, rng)));
  CHECK_THROWS(numerical_radius(random_gaussian(2, 3, rng)));

  const ComplexMatrix x = random_gaussian(4, 4, rng);
  const ComplexMatrix u = trace_dual_unitary(x);
  CHECK((u * x).trace().real() == doctest::Approx(trace_norm(x)).epsilon(1e-12));
  CHECK((hermitian_part(x) + Complex(0.0, 1.0) * antihermitian_part(x) - x).norm() < 1e-13);
}

TEST_CASE("property: Schmidt reconstruction over 1000 random vectors") {
  auto rng = rng_for(6);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + static_cast<int>(rng.uniform() * 4), n = 1 + static_cast<int>(rng.uniform() * 4);
    const PureState v(random_unit_vector(m * n, rng), Dims{m, n});
    const auto sd = schmidt_decompose(v);
    worst = std::max(worst, (sd.reconstruct() - v.amplitudes()).norm());
    CHECK(std::abs(sd.coeffs.squaredNorm() - 1.0) < 1e-10);
    for (int i = 1; i < sd.size(); ++i) CHECK(sd.coeffs(i) <= sd.coeffs(i - 1));
    CHECK((sd.left.adjoint() * sd.left - ComplexMatrix::Identity(sd.size(), sd.size())).norm() < 1e-10);
    CHECK((sd.right.adjoint() * sd.right - ComplexMatrix::Identity(sd.size(), sd.size())).norm() < 1e-10);
  }
  CHECK(worst <= kDefaultTol.recon);
}

TEST_CASE("property: truncation beats sampled SR-k challengers") {
  auto rng = rng_for(7);
  for (int inst = 0; inst < 20; ++inst) {
    const Dims d{3, 4};
    const PureState v(random_unit_vector(d.total(), rng), d);
    for (int k = 1; k <= 3; ++k) {
      const double best = std::abs(truncate_schmidt(v, k).amplitudes().dot(v.amplitudes()));
      for (int c = 0; c < 100; ++c) {
        const PureState w = random_sr_k_vector(d, k, rng);
        CHECK(std::abs(w.amplitudes().dot(v.amplitudes())) <= best + 1e-12);
      }
    }
  }
}

TEST_CASE("property: operator norm is unitarily invariant") {
  auto rng = rng_for(8);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix x = random_gaussian(5, 5, rng);
    const ComplexMatrix u = random_unitary(5, rng), v = random_unitary(5, rng);
    CHECK(std::abs(operator_norm(u * x * v) - operator_norm(x)) < 1e-10);
  }
}

TEST_CASE("fixtures") {
  const ComplexVector phi = maximally_entangled(3);
  CHECK(phi.norm() == doctest::Approx(1.0));
  const ComplexMatrix s = swap_operator(3);
  CHECK((s * s - ComplexMatrix::Identity(9, 9)).norm() < 1e-14);
  const ComplexVector ab = tensor(basis(3, 0), basis(3, 2));
  CHECK((s * ab - tensor(basis(3, 2), basis(3, 0))).norm() < 1e-14);

  const ComplexVector psi = shifted_entangled(3);
  CHECK(std::abs(phi.dot(psi)) < 1e-15);
  const BipartiteOperator x = entangled_shift_outer(3);
  CHECK((x.matrix() - phi * psi.adjoint()).norm() < 1e-15);
}

TEST_CASE("frame and operator validation") {
  auto rng = rng_for(9);
  CHECK_THROWS(Frame(random_gaussian(3, 2, rng)));
  CHECK_NOTHROW(Frame(orthonormalize_columns(random_gaussian(3, 2, rng))));
  CHECK_THROWS(BipartiteOperator(ComplexMatrix::Identity(5, 5), Dims{2, 3}));
  CHECK_THROWS(PureState(ComplexVector::Ones(4), Dims{2, 2}));
}
