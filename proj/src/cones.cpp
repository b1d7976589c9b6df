#include "schmidt/cones.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "frame_search.hpp"
#include "parallel.hpp"

namespace schmidt {

const char* to_string(BlockPositivityStatus s) {
  return s == BlockPositivityStatus::kRefuted ? "refuted" : "heuristically-positive";
}

BlockPositivityVerdict k_block_positivity(const BipartiteOperator& x, int k, const SeeSawConfig& cfg,
                                          double refute_tol) {
  cfg.validate();
  const Dims d = x.dims();
  if (!x.is_hermitian()) throw std::invalid_argument("k_block_positivity: operator is not Hermitian");
  if (k < 1 || k > d.min_dim()) {
    throw std::invalid_argument("k_block_positivity: k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(d.min_dim()) + "]");
  }
  const ComplexMatrix h = hermitian_part(x.matrix());

  BlockPositivityVerdict verdict;
  ComplexVector best;
  if (k == d.min_dim()) {
    const EigenPair low = bottom_eigenpair(h);
    best = low.vector;
    verdict.restarts_used = 0;
    verdict.converged = true;
  } else {
    // Minimize <v|X|v> by maximizing lambda_max of the compression of -X.
    const auto objective = detail::quadratic_frame_objective(-h, d, detail::QuadraticMode::kLargestEigenvalue);
    std::vector<detail::FrameAscentResult> runs(cfg.restarts);
    detail::parallel_for(cfg.restarts, cfg.threads, [&](int r) {
      Rng rng(cfg.rng.child(static_cast<std::uint64_t>(r)));
      runs[r] = detail::ascend_frame(random_frame(d.n, k, rng).vectors(), objective,
                                     {cfg.max_iters, cfg.obj_tol, 5});
    });
    int pick = 0;
    for (int r = 1; r < cfg.restarts; ++r) {
      if (runs[r].best.value > runs[pick].best.value) pick = r;
    }
    best = runs[pick].best.left;
    verdict.restarts_used = cfg.restarts;
    verdict.converged = runs[pick].converged;
  }

  PureState witness = PureState::normalized(best, d);
  verdict.min_value = witness.amplitudes().dot(h * witness.amplitudes()).real();
  verdict.status =
      verdict.min_value < -refute_tol ? BlockPositivityStatus::kRefuted : BlockPositivityStatus::kHeuristicallyPositive;
  verdict.witness = std::move(witness);
  return verdict;
}

void SchmidtEnsemble::validate(double unit_tol, double rank_tol) const {
  if (terms.empty()) throw std::invalid_argument("SchmidtEnsemble: no terms");
  if (k < 1) throw std::invalid_argument("SchmidtEnsemble: k must be >= 1");
  const Dims d = terms.front().state.dims();
  double total = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (!(t.weight > 0.0)) {
      throw std::invalid_argument("SchmidtEnsemble: weight " + std::to_string(i) + " is not positive");
    }
    if (!(t.state.dims() == d)) throw std::invalid_argument("SchmidtEnsemble: mixed dimensions");
    const int sr = schmidt_rank(t.state, rank_tol);
    if (sr > k) {
      throw std::invalid_argument("SchmidtEnsemble: state " + std::to_string(i) + " has Schmidt rank " +
                                  std::to_string(sr) + " > k = " + std::to_string(k));
    }
    total += t.weight;
  }
  if (std::abs(total - 1.0) > unit_tol) {
    throw std::invalid_argument("SchmidtEnsemble: weights sum to " + std::to_string(total));
  }
}

Dims SchmidtEnsemble::dims() const {
  if (terms.empty()) throw std::invalid_argument("SchmidtEnsemble: no terms");
  return terms.front().state.dims();
}

ComplexMatrix SchmidtEnsemble::density() const {
  const Dims d = dims();
  ComplexMatrix rho = ComplexMatrix::Zero(d.total(), d.total());
  for (const auto& t : terms) rho += t.weight * projector(t.state.amplitudes());
  return rho;
}

bool sn_upper_verify(const BipartiteOperator& rho, const SchmidtEnsemble& ens, double recon_tol) {
  if (!rho.is_hermitian()) throw std::invalid_argument("sn_upper_verify: rho is not Hermitian");
  if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-9) {
    throw std::invalid_argument("sn_upper_verify: rho does not have unit trace");
  }
  ens.validate();
  if (!(ens.dims() == rho.dims())) throw std::invalid_argument("sn_upper_verify: ensemble dimension mismatch");
  return (ens.density() - rho.matrix()).cwiseAbs().maxCoeff() <= recon_tol;
}

bool WitnessCertificate::valid() const {
  return block_pos_evidence.status == BlockPositivityStatus::kHeuristicallyPositive && pairing < -refute_tol;
}

WitnessCertificate witness_check(const BipartiteOperator& w, const BipartiteOperator& rho, int k,
                                 const SeeSawConfig& cfg, double refute_tol) {
  if (!(w.dims() == rho.dims())) throw std::invalid_argument("witness_check: dimension mismatch");
  if (!rho.is_hermitian()) throw std::invalid_argument("witness_check: rho is not Hermitian");
  BlockPositivityVerdict evidence = k_block_positivity(w, k, cfg, refute_tol);
  const double pairing = (w.matrix() * rho.matrix()).trace().real();
  return {w, k, pairing, std::move(evidence), refute_tol};
}

double schmidt_overlap_bound(const PureState& psi, int k) {
  if (k < 1) throw std::invalid_argument("schmidt_overlap_bound: k must be >= 1");
  const auto sd = schmidt_decompose(psi);
  const int kept = std::min(k, sd.size());
  return sd.coeffs.head(kept).squaredNorm();
}

BipartiteOperator overlap_witness(const PureState& psi, int k) {
  const Dims d = psi.dims();
  if (k < 1 || k > d.min_dim()) throw std::invalid_argument("overlap_witness: k out of range");
  const double bound = schmidt_overlap_bound(psi, k);
  ComplexMatrix w = ComplexMatrix::Identity(d.total(), d.total()) - projector(psi.amplitudes()) / bound;
  return {hermitian_part(w), d};
}

BipartiteOperator reduction_witness(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("reduction_witness: need 1 <= k <= n, got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
  }
  const ComplexVector phi = maximally_entangled(n);
  const double ratio = static_cast<double>(n) / static_cast<double>(k);
  return {ComplexMatrix::Identity(n * n, n * n) - ratio * projector(phi), Dims{n, n}};
}

BipartiteOperator isotropic_state(double fidelity, int n) {
  if (n < 2) throw std::invalid_argument("isotropic_state: n must be >= 2");
  if (fidelity < 0.0 || fidelity > 1.0) throw std::invalid_argument("isotropic_state: fidelity outside [0, 1]");
  const ComplexMatrix p = projector(maximally_entangled(n));
  const ComplexMatrix id = ComplexMatrix::Identity(n * n, n * n);
  return {fidelity * p + (1.0 - fidelity) * (id - p) / static_cast<double>(n * n - 1), Dims{n, n}};
}

}  // namespace schmidt
