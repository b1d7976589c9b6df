#include <cmath>

#include "doctest.h"
#include "schmidt/cones.hpp"
#include "schmidt/maps.hpp"
#include "schmidt/norms.hpp"
#include "schmidt/oracle.hpp"
#include "schmidt/random.hpp"

using namespace schmidt;

namespace {

OracleConfig small(std::uint64_t seed, int samples = 2000) {
  OracleConfig c;
  c.samples = samples;
  c.rng = RandomConfig{seed, 0};
  return c;
}

SeeSawConfig cfg_for(std::uint64_t seed) {
  SeeSawConfig c;
  c.rng = RandomConfig{seed, 0};
  return c;
}

}  // namespace

TEST_CASE("brute_sk_norm examples") {
  const BipartiteOperator id(ComplexMatrix::Identity(4, 4), Dims{2, 2});
  CHECK(std::abs(brute_sk_norm(id, 1, small(1)) - 1.0) <= 1e-4);
  const BipartiteOperator p(projector(maximally_entangled(2)), Dims{2, 2});
  CHECK(std::abs(brute_sk_norm(p, 1, small(2)) - 0.5) <= 1e-3);
}

TEST_CASE("brute_sk_norm agrees with sk_norm on random operators") {
  Rng rng(RandomConfig{3, 0});
  for (int t = 0; t < 50; ++t) {
    const BipartiteOperator x(random_gaussian(4, 4, rng), Dims{2, 2});
    const double seesaw = sk_norm(x, 1, cfg_for(t)).value;
    const double brute = brute_sk_norm(x, 1, small(t, 300));
    CHECK(std::abs(brute - seesaw) <= 1e-3);
  }
}

TEST_CASE("brute_block_min examples") {
  Rng rng(RandomConfig{4, 0});
  const ComplexMatrix g = random_gaussian(4, 4, rng);
  CHECK(brute_block_min({g * g.adjoint(), Dims{2, 2}}, 1, small(1)) >= -1e-6);
  CHECK(std::abs(brute_block_min({swap_operator(2), Dims{2, 2}}, 2, small(2)) + 1.0) <= 1e-4);
  CHECK(std::abs(brute_block_min(reduction_witness(2, 1), 1, small(3))) <= 1e-4);
  CHECK_THROWS(brute_block_min({random_gaussian(4, 4, rng), Dims{2, 2}}, 1, small(1)));
}

TEST_CASE("brute_idk_norm examples") {
  CHECK(std::abs(brute_idk_norm(MapRepr::identity(2), 1, small(1, 200)) - 1.0) <= 1e-6);
  CHECK(std::abs(brute_idk_norm(MapRepr::transpose(2), 2, small(2, 500)) - 2.0) <= 1e-3);
  Rng rng(RandomConfig{5, 0});
  const MapRepr cp(random_cptp(2, 2, rng));
  const MapRepr scaled = cp.scaled(1.7);
  CHECK(std::abs(brute_idk_norm(scaled, 1, small(3, 500)) - cp_cb_norm(scaled)) <= 1e-3);
}

TEST_CASE("brute order norms and OMIN norm match the optimizers") {
  const auto x = entangled_shift_outer(3);
  for (int k = 1; k <= 2; ++k) {
    CHECK(std::abs(brute_min_order_norm(x, k, small(k)) - min_order_norm(x, k, cfg_for(k)).value) <= 1e-3);
    CHECK(std::abs(brute_omin_norm(x, k, small(k)) - omin_norm(x, k, cfg_for(k)).value) <= 1e-3);
  }
}

TEST_CASE("brute_stabilized_form stays below the level-k value") {
  Rng rng(RandomConfig{6, 0});
  for (int t = 0; t < 3; ++t) {
    const MapRepr phi(BipartiteOperator(random_hermitian(4, rng), Dims{2, 2}));
    const double level = idk_hermitian_form_norm(phi, 1, cfg_for(t)).value;
    CHECK(brute_stabilized_form(phi, 3, 1, small(t, 200)) <= level + 1e-6);
  }
}

TEST_CASE("oracle values are nondecreasing in samples") {
  Rng rng(RandomConfig{7, 0});
  const BipartiteOperator x(random_gaussian(4, 4, rng), Dims{2, 2});
  double prev = 0.0;
  for (int s : {1, 5, 20, 80, 200}) {
    const double v = brute_sk_norm(x, 1, small(11, s));
    CHECK(v >= prev);
    prev = v;
  }
  double prev_min = 1e300;
  const BipartiteOperator h(random_hermitian(4, rng), Dims{2, 2});
  for (int s : {1, 5, 20, 80}) {
    const double v = brute_block_min(h, 1, small(12, s));
    CHECK(v <= prev_min);
    prev_min = v;
  }
}

TEST_CASE("OracleConfig validation and helpers") {
  OracleConfig c;
  c.samples = 0;
  CHECK_THROWS(c.validate());
  const ComplexVector v = maximally_entangled(2);
  CHECK(expectation(swap_operator(2), v) == doctest::Approx(1.0));
  CHECK(pairing_value(ComplexMatrix::Identity(4, 4), v, v) == doctest::Approx(1.0));
}
