#pragma once

// Schmidt-rank-constrained norms on M_m (x) M_n.
//
//   sk_norm         sup |<v|X|w>|, SR(v), SR(w) <= k                (k-minimal norm)
//   omin_norm       same, with v and w sharing right Schmidt vectors (matrix-order norm)
//   min_order_norm  sup |<v|X|v>|, SR(v) <= k                      (minimal order norm)
//
// All suprema are approached from below by multi-restart see-saw searches, so
// the reported values are lower bounds unless flagged exact. The decomposition
// and maximal order norms are infima; only upper bounds from explicit
// decompositions are computed.

#include <optional>
#include <vector>

#include "schmidt/linalg.hpp"
#include "schmidt/random.hpp"

namespace schmidt {

enum class BoundDirection { kLower, kUpper, kExact };

const char* to_string(BoundDirection d);

struct NormWitness {
  ComplexVector left;  // v
  ComplexVector right; // w (equal to v for the order norm)
  std::optional<ComplexMatrix> frame;
};

struct NormEstimate {
  double value = 0.0;
  BoundDirection direction = BoundDirection::kLower;
  std::optional<NormWitness> witness;
  int restarts_used = 0;
  int iterations = 0;
  bool converged = false;
  /// Objective trace of every restart, in restart order.
  std::vector<std::vector<double>> histories;
};

struct SeeSawConfig {
  int restarts = 20;
  int max_iters = 200;
  double obj_tol = 1e-9;
  RandomConfig rng{};
  int threads = 1;

  void validate() const;
};

/// |<v|X|w>| for the witness pair.
double evaluate_witness(const BipartiteOperator& x, const NormWitness& witness);

NormEstimate sk_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});

/// The mk x mk matrix whose (r, s) block is (<b_r| X_ij |b_s>)_{ij}.
ComplexMatrix compress(const BipartiteOperator& x, const Frame& frame);

NormEstimate omin_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});
NormEstimate min_order_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});

/// ||H_1||_or + ||H_2||_or for X = H_1 + i H_2, H_j Hermitian.
NormEstimate max_order_norm_upper(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});

struct DecompositionTerm {
  Complex weight;
  BipartiteOperator part;  // expected k-block positive
};

/// || sum |weight_i| P_i ||_or for a supplied decomposition X = sum weight_i P_i.
/// Throws if the decomposition does not reconstruct X or a part is refuted as
/// k-block positive.
NormEstimate dec_norm_value(const BipartiteOperator& x, const std::vector<DecompositionTerm>& parts, int k,
                            const SeeSawConfig& cfg = {}, double recon_tol = kDefaultTol.recon);

/// X = sum over j of c_j ((t_j I + H_j)/2 - (t_j I - H_j)/2) with c = (1, i),
/// H = (Re X, Im X) and t_j slightly above the order norm of H_j, so each
/// part is k-block positive.
std::vector<DecompositionTerm> hermitian_split_decomposition(const BipartiteOperator& x, int k,
                                                             const SeeSawConfig& cfg = {});

struct SpaceNormBounds {
  NormEstimate lower;
  NormEstimate upper;
};

/// Bounds on the k-maximal operator space norm of X in M_m(M_r) (dims (m, r)).
SpaceNormBounds maxk_space_norm_bounds(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});

}  // namespace schmidt
