#pragma once

// k-block positivity and Schmidt-number certificates.
//
// Verdicts are one-sided: a refutation carries a Schmidt-rank-k vector with a
// negative expectation and is a proof; "heuristically positive" only means the
// search found nothing below -refute_tol.

#include <optional>
#include <utility>
#include <vector>

#include "schmidt/linalg.hpp"
#include "schmidt/norms.hpp"

namespace schmidt {

inline constexpr double kRefuteTol = 1e-8;

enum class BlockPositivityStatus { kRefuted, kHeuristicallyPositive };

const char* to_string(BlockPositivityStatus s);

struct BlockPositivityVerdict {
  BlockPositivityStatus status = BlockPositivityStatus::kHeuristicallyPositive;
  double min_value = 0.0;
  std::optional<PureState> witness;  // SR <= k, attains min_value
  int restarts_used = 0;
  bool converged = false;

  bool refuted() const { return status == BlockPositivityStatus::kRefuted; }
};

/// Minimizes <v|X|v> over unit v with SR(v) <= k.
BlockPositivityVerdict k_block_positivity(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {},
                                          double refute_tol = kRefuteTol);

struct SchmidtEnsemble {
  struct Term {
    double weight;
    PureState state;
  };
  std::vector<Term> terms;
  int k = 1;

  /// Throws std::invalid_argument on nonpositive weights, weights not summing
  /// to one, mixed dimensions or a state with Schmidt rank above k.
  void validate(double unit_tol = 1e-9, double rank_tol = kDefaultTol.rank) const;
  Dims dims() const;
  ComplexMatrix density() const;
};

/// True iff the ensemble reconstructs rho; then SN(rho) <= ens.k.
bool sn_upper_verify(const BipartiteOperator& rho, const SchmidtEnsemble& ens,
                     double recon_tol = kDefaultTol.recon);

struct WitnessCertificate {
  BipartiteOperator witness;
  int k = 1;
  double pairing = 0.0;  // Tr(W rho)
  BlockPositivityVerdict block_pos_evidence;
  double refute_tol = kRefuteTol;

  /// W found k-block positive and Tr(W rho) < -refute_tol: evidence SN(rho) > k.
  bool valid() const;
};

WitnessCertificate witness_check(const BipartiteOperator& w, const BipartiteOperator& rho, int k,
                                 const SeeSawConfig& cfg = {}, double refute_tol = kRefuteTol);

/// Sum of the k largest squared Schmidt coefficients: max |<v|psi>|^2 over SR(v) <= k.
double schmidt_overlap_bound(const PureState& psi, int k);

/// I - |psi><psi| / schmidt_overlap_bound(psi, k). Exactly k-block positive
/// (its minimum over SR-k vectors is 0).
BipartiteOperator overlap_witness(const PureState& psi, int k);

/// I - (n/k)|phi><phi| on C^n (x) C^n, phi maximally entangled.
BipartiteOperator reduction_witness(int n, int k);

/// F|phi><phi| + (1 - F)(I - |phi><phi|)/(n^2 - 1).
BipartiteOperator isotropic_state(double fidelity, int n);

}  // namespace schmidt
