#pragma once

// Brute-force estimators used to cross-check the see-saw optimizers. They
// share only core linear algebra with the rest of the library.
//
// Each estimator draws `samples` random candidates (candidate i uses the child
// stream i of cfg.rng), polishes the first `warmup` candidates and every
// candidate whose raw value beats all earlier raw values, and returns the
// running maximum (minimum for brute_block_min). Candidate i never depends on
// later candidates, so values are monotone in `samples`.

#include "schmidt/linalg.hpp"
#include "schmidt/maps.hpp"
#include "schmidt/random.hpp"

namespace schmidt {

struct OracleConfig {
  int samples = 20000;
  int polish_steps = 200;
  int warmup = 16;
  RandomConfig rng{};

  void validate() const;
};

/// max |<v|X|w>| over sampled SR-k pairs (polished by alternating subspace projections).
double brute_sk_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg = {});

/// min <v|X|v> over sampled SR-k vectors; an upper bound on the true minimum.
double brute_block_min(const BipartiteOperator& x, int k, const OracleConfig& cfg = {});

/// max |<v|X|v>| over sampled SR-k vectors.
double brute_min_order_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg = {});

/// max |<v|X|w>| over sampled pairs sharing a k-frame on the right factor
/// (frame polished by stochastic hill climbing).
double brute_omin_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg = {});

/// max ||(id_k (x) Phi)(U)|| over sampled unitaries U in M_{kr}, polished by
/// gradient steps along the unitary group.
double brute_idk_norm(const MapRepr& phi, int k, const OracleConfig& cfg = {});

/// max over sampled SR-k vectors v in C^m (x) C^n of
/// sup{ |<v|(id_m (x) Phi)(X)|v>| : X = X^*, ||X|| <= 1 } = ||(id_m (x) Phi^*)(|v><v|)||_tr.
double brute_stabilized_form(const MapRepr& phi, int m, int k, const OracleConfig& cfg = {});

/// Re <v|X|v> and |<v|X|w>| for re-evaluating certificates.
double expectation(const ComplexMatrix& x, const ComplexVector& v);
double pairing_value(const ComplexMatrix& x, const ComplexVector& v, const ComplexVector& w);

}  // namespace schmidt
