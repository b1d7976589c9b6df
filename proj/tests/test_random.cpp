#include "doctest.h"
#include "schmidt/linalg.hpp"
#include "schmidt/random.hpp"

using namespace schmidt;

TEST_CASE("equal configs give bit-identical draws") {
  Rng a(RandomConfig{42, 3}), b(RandomConfig{42, 3});
  CHECK(random_gaussian(4, 4, a) == random_gaussian(4, 4, b));
  CHECK(random_unitary(5, a) == random_unitary(5, b));
  CHECK(random_cptp(2, 3, a).matrix() == random_cptp(2, 3, b).matrix());
  CHECK(random_sr_k_vector(Dims{3, 3}, 2, a).amplitudes() == random_sr_k_vector(Dims{3, 3}, 2, b).amplitudes());
}

TEST_CASE("streams and children differ") {
  Rng a(RandomConfig{42, 0}), b(RandomConfig{42, 1});
  CHECK(a.normal() != b.normal());
  const RandomConfig base{42, 0};
  CHECK(base.child(0).stream_index != base.child(1).stream_index);
  Rng c(base.child(0)), d(base.child(1));
  CHECK(c.normal() != d.normal());
}

TEST_CASE("random SR-k vectors have Schmidt rank at most k") {
  Rng rng(RandomConfig{1, 0});
  for (int t = 0; t < 200; ++t) {
    const PureState v = random_sr_k_vector(Dims{3, 3}, 2, rng);
    CHECK(schmidt_rank(v) <= 2);
    CHECK(v.amplitudes().norm() == doctest::Approx(1.0));
  }
  CHECK_THROWS(random_sr_k_vector(Dims{2, 3}, 3, rng));
}

TEST_CASE("random unitaries, isometries, frames and densities") {
  Rng rng(RandomConfig{2, 0});
  const ComplexMatrix u = random_unitary(4, rng);
  CHECK((u * u.adjoint() - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
  const ComplexMatrix w = random_isometry(5, 2, rng);
  CHECK((w.adjoint() * w - ComplexMatrix::Identity(2, 2)).norm() <= 1e-12);
  const Frame f = random_frame(4, 3, rng);
  CHECK((f.vectors().adjoint() * f.vectors() - ComplexMatrix::Identity(3, 3)).norm() <= 1e-12);
  const ComplexMatrix rho = random_density(4, rng);
  CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-12);
  CHECK(min_eig_hermitian(rho) >= -1e-12);
}

TEST_CASE("random CPTP Choi matrices are PSD and trace preserving") {
  Rng rng(RandomConfig{3, 0});
  for (int t = 0; t < 20; ++t) {
    const BipartiteOperator j = random_cptp(2, 2, rng);
    CHECK((partial_trace_second(j.matrix(), j.dims()) - ComplexMatrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK(min_eig_hermitian(j.matrix()) >= -1e-12);
  }
  const BipartiteOperator narrow = random_cptp(2, 3, rng, 1);
  CHECK((partial_trace_second(narrow.matrix(), narrow.dims()) - ComplexMatrix::Identity(2, 2)).norm() <= 1e-12);
}
