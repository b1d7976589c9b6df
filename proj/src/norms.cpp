#include "schmidt/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frame_search.hpp"
#include "parallel.hpp"
#include "schmidt/cones.hpp"
#include "schmidt/maps.hpp"

namespace schmidt {

namespace {

void require_k(int k, int hi, const char* what) {
  if (k < 1 || k > hi) {
    throw std::invalid_argument(std::string(what) + ": k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(hi) + "]");
  }
}

struct RestartOutcome {
  double value = 0.0;
  NormWitness witness;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

// Deterministic max-reduce: first restart wins ties.
NormEstimate reduce_restarts(std::vector<RestartOutcome>& outcomes) {
  NormEstimate est;
  int best = -1;
  for (int r = 0; r < static_cast<int>(outcomes.size()); ++r) {
    if (best < 0 || outcomes[r].value > outcomes[best].value) best = r;
    est.iterations += outcomes[r].iterations;
  }
  est.restarts_used = static_cast<int>(outcomes.size());
  if (best >= 0) {
    est.value = outcomes[best].value;
    est.witness = outcomes[best].witness;
    est.converged = outcomes[best].converged;
  }
  for (auto& o : outcomes) est.histories.push_back(std::move(o.history));
  return est;
}

double pair_value(const ComplexMatrix& x, const ComplexVector& v, const ComplexVector& w) {
  return std::abs(v.dot(x * w));
}

// One see-saw run for the S(k) norm: v <- trunc_k(Xw), w <- trunc_k(X^* v).
RestartOutcome sk_restart(const BipartiteOperator& x, int k, const SeeSawConfig& cfg, int restart) {
  Rng rng(cfg.rng.child(static_cast<std::uint64_t>(restart)));
  const Dims d = x.dims();
  const ComplexMatrix& mat = x.matrix();
  const ComplexMatrix adj = mat.adjoint();
  ComplexVector w = random_sr_k_vector(d, k, rng).amplitudes();
  ComplexVector v = random_sr_k_vector(d, k, rng).amplitudes();

  RestartOutcome out;
  double obj = pair_value(mat, v, w);
  out.history.push_back(obj);

  // Best SR-k unit vector aligned with z; nullopt if z vanishes.
  auto align = [&](const ComplexVector& z) -> std::optional<ComplexVector> {
    if (!(z.norm() > 1e-300)) return std::nullopt;
    return truncate_schmidt(PureState::normalized(z, d), k).amplitudes();
  };

  for (int it = 0; it < cfg.max_iters; ++it) {
    out.iterations = it + 1;
    const double start = obj;
    bool stalled = false;
    for (int half = 0; half < 2 && !stalled; ++half) {
      const bool update_left = half == 0;
      auto cand = update_left ? align(mat * w) : align(adj * v);
      if (!cand) {
        stalled = true;
        break;
      }
      const double next = update_left ? pair_value(mat, *cand, w) : pair_value(mat, v, *cand);
      if (next < obj) {
        stalled = true;
        break;
      }
      (update_left ? v : w) = std::move(*cand);
      obj = next;
      out.history.push_back(obj);
    }
    if (stalled || obj - start < cfg.obj_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = obj;
  out.witness = {v, w, std::nullopt};
  return out;
}

RestartOutcome frame_restart(const detail::FrameObjective& objective, Dims dims, int k, const SeeSawConfig& cfg,
                             int restart) {
  Rng rng(cfg.rng.child(static_cast<std::uint64_t>(restart)));
  Frame start = random_frame(dims.n, k, rng);
  auto res = detail::ascend_frame(start.vectors(), objective, {cfg.max_iters, cfg.obj_tol, 5});
  RestartOutcome out;
  out.value = res.best.value;
  out.witness = {res.best.left, res.best.right, res.frame};
  out.history = std::move(res.history);
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

NormEstimate run_frame_search(const detail::FrameObjective& objective, Dims dims, int k, const SeeSawConfig& cfg) {
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads,
                       [&](int r) { outcomes[r] = frame_restart(objective, dims, k, cfg, r); });
  return reduce_restarts(outcomes);
}

bool negligible(const ComplexMatrix& x) { return x.size() == 0 || x.cwiseAbs().maxCoeff() < 1e-15; }

}  // namespace

const char* to_string(BoundDirection d) {
  switch (d) {
    case BoundDirection::kLower:
      return "lower";
    case BoundDirection::kUpper:
      return "upper";
    case BoundDirection::kExact:
      return "exact";
  }
  return "unknown";
}

void SeeSawConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("SeeSawConfig: restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("SeeSawConfig: max_iters must be >= 1");
  if (!(obj_tol > 0.0)) throw std::invalid_argument("SeeSawConfig: obj_tol must be > 0");
}

double evaluate_witness(const BipartiteOperator& x, const NormWitness& witness) {
  return pair_value(x.matrix(), witness.left, witness.right);
}

NormEstimate sk_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d.min_dim(), "sk_norm");

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads, [&](int r) { outcomes[r] = sk_restart(x, k, cfg, r); });
  NormEstimate est = reduce_restarts(outcomes);

  if (k == d.min_dim()) {
    // Schmidt-rank constraint is vacuous: the value is the operator norm.
    const SingularTriplet top = top_singular_triplet(x.matrix());
    est.value = top.value;
    est.witness = NormWitness{top.left, top.right, std::nullopt};
    est.direction = BoundDirection::kExact;
    est.converged = true;
  }
  return est;
}

ComplexMatrix compress(const BipartiteOperator& x, const Frame& frame) {
  if (frame.dim() != x.dims().n) {
    throw std::invalid_argument("compress: frame vectors live in C^" + std::to_string(frame.dim()) +
                                " but the right factor is C^" + std::to_string(x.dims().n));
  }
  const ComplexMatrix e = detail::frame_embedding(frame.vectors(), x.dims().m);
  return e.adjoint() * x.matrix() * e;
}

NormEstimate omin_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d.n, "omin_norm");
  if (k == d.n) {
    // A full frame is a unitary change of basis on the right factor.
    const SingularTriplet top = top_singular_triplet(x.matrix());
    NormEstimate est;
    est.value = top.value;
    est.direction = BoundDirection::kExact;
    est.witness = NormWitness{top.left, top.right, ComplexMatrix::Identity(d.n, d.n)};
    est.converged = true;
    return est;
  }
  return run_frame_search(detail::singular_frame_objective(x.matrix(), d), d, k, cfg);
}

NormEstimate min_order_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d.min_dim(), "min_order_norm");
  if (k == d.min_dim()) {
    // Unconstrained: the numerical radius itself.
    NumericalRadius nr = numerical_radius_detail(x.matrix());
    NormEstimate est;
    est.value = nr.value;
    est.direction = x.is_hermitian() ? BoundDirection::kExact : BoundDirection::kLower;
    est.witness = NormWitness{nr.vector, nr.vector, std::nullopt};
    est.converged = true;
    return est;
  }
  // The radius objective tends to stay on the phase sector it starts in, so each
  // restart first climbs lambda_max of Re(e^{i theta_r} X) for its own theta_r.
  const auto radius = detail::quadratic_frame_objective(x.matrix(), d, detail::QuadraticMode::kNumericalRadius);
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads, [&](int r) {
    const double theta = 2.0 * std::numbers::pi * r / cfg.restarts;
    const ComplexMatrix sector = hermitian_part(std::polar(1.0, theta) * x.matrix());
    const auto seed_obj = detail::quadratic_frame_objective(sector, d, detail::QuadraticMode::kLargestEigenvalue);
    Rng rng(cfg.rng.child(static_cast<std::uint64_t>(r)));
    const Frame start = random_frame(d.n, k, rng);
    const detail::FrameAscentOptions opts{cfg.max_iters, cfg.obj_tol, 5};
    const auto seeded = detail::ascend_frame(start.vectors(), seed_obj, opts);
    auto res = detail::ascend_frame(seeded.frame, radius, opts);
    RestartOutcome& out = outcomes[r];
    out.value = res.best.value;
    out.witness = {res.best.left, res.best.right, res.frame};
    out.history = std::move(res.history);
    out.iterations = seeded.iterations + res.iterations;
    out.converged = res.converged;
  });
  return reduce_restarts(outcomes);
}

NormEstimate max_order_norm_upper(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d.min_dim(), "max_order_norm_upper");
  NormEstimate est;
  est.direction = BoundDirection::kUpper;
  est.converged = true;
  for (const ComplexMatrix& h : {hermitian_part(x.matrix()), antihermitian_part(x.matrix())}) {
    if (negligible(h)) continue;
    const NormEstimate part = min_order_norm(BipartiteOperator(hermitian_part(h), d), k, cfg);
    est.value += part.value;
    est.restarts_used += part.restarts_used;
    est.iterations += part.iterations;
    est.converged = est.converged && part.converged;
  }
  return est;
}

NormEstimate dec_norm_value(const BipartiteOperator& x, const std::vector<DecompositionTerm>& parts, int k,
                            const SeeSawConfig& cfg, double recon_tol) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d.min_dim(), "dec_norm_value");
  if (parts.empty()) throw std::invalid_argument("dec_norm_value: empty decomposition");

  ComplexMatrix recon = ComplexMatrix::Zero(d.total(), d.total());
  ComplexMatrix weighted = ComplexMatrix::Zero(d.total(), d.total());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& term = parts[i];
    if (!(term.part.dims() == d)) throw std::invalid_argument("dec_norm_value: part dimension mismatch");
    if (!term.part.is_hermitian()) {
      throw std::invalid_argument("dec_norm_value: part " + std::to_string(i) + " is not Hermitian");
    }
    const BlockPositivityVerdict verdict = k_block_positivity(term.part, k, cfg);
    if (verdict.refuted()) {
      throw std::invalid_argument("dec_norm_value: part " + std::to_string(i) +
                                  " is not k-block positive (min = " + std::to_string(verdict.min_value) + ")");
    }
    recon += term.weight * term.part.matrix();
    weighted += std::abs(term.weight) * term.part.matrix();
  }
  const double err = (recon - x.matrix()).cwiseAbs().maxCoeff();
  if (err > recon_tol) {
    throw std::invalid_argument("dec_norm_value: decomposition misses X by " + std::to_string(err));
  }
  NormEstimate est = min_order_norm(BipartiteOperator(hermitian_part(weighted), d), k, cfg);
  est.direction = BoundDirection::kUpper;
  return est;
}

std::vector<DecompositionTerm> hermitian_split_decomposition(const BipartiteOperator& x, int k,
                                                             const SeeSawConfig& cfg) {
  const Dims d = x.dims();
  require_k(k, d.min_dim(), "hermitian_split_decomposition");
  // Margin absorbs the gap between the estimated and true order norm so that
  // t I +- H stays k-block positive.
  constexpr double kMargin = 1e-7;
  const ComplexMatrix id = ComplexMatrix::Identity(d.total(), d.total());
  std::vector<DecompositionTerm> parts;
  const std::pair<Complex, ComplexMatrix> pieces[] = {{Complex(1.0, 0.0), hermitian_part(x.matrix())},
                                                      {Complex(0.0, 1.0), antihermitian_part(x.matrix())}};
  for (const auto& [phase, raw] : pieces) {
    if (negligible(raw)) continue;
    const ComplexMatrix h = hermitian_part(raw);
    const double t = min_order_norm(BipartiteOperator(h, d), k, cfg).value + kMargin;
    parts.push_back({phase, BipartiteOperator((t * id + h) * 0.5, d)});
    parts.push_back({-phase, BipartiteOperator((t * id - h) * 0.5, d)});
  }
  if (parts.empty()) parts.push_back({Complex(0.0, 0.0), BipartiteOperator(ComplexMatrix::Zero(d.total(), d.total()), d)});
  return parts;
}

SpaceNormBounds maxk_space_norm_bounds(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  if (k < 1) throw std::invalid_argument("maxk_space_norm_bounds: k must be >= 1");
  const Dims d = x.dims();
  const int m = d.m;
  const int r = d.n;
  const ComplexMatrix& mat = x.matrix();
  const double op = operator_norm(mat);

  SpaceNormBounds out;
  out.upper.direction = BoundDirection::kUpper;
  out.upper.converged = true;
  if (m <= k) {
    // X = (||X|| I) (X/||X|| (+) 0) I is an admissible factorization.
    out.upper.value = op;
    out.upper.direction = BoundDirection::kExact;
  } else {
    // Band factorizations: slice rows and columns into bands of s <= k levels,
    // X = A diag(X_bc / ||X_bc||) B^* with ||A||^2 = max row sum and
    // ||B||^2 = max column sum of the band-norm matrix N_bc = ||X_bc||.
    double best = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= k; ++s) {
      const int bands = (m + s - 1) / s;
      Eigen::MatrixXd norms(bands, bands);
      for (int b = 0; b < bands; ++b) {
        const int rows = std::min(s, m - b * s);
        for (int c = 0; c < bands; ++c) {
          const int cols = std::min(s, m - c * s);
          norms(b, c) = operator_norm(mat.block(b * s * r, c * s * r, rows * r, cols * r));
        }
      }
      const double row_sum = norms.rowwise().sum().maxCoeff();
      const double col_sum = norms.colwise().sum().maxCoeff();
      best = std::min(best, std::sqrt(row_sum * col_sum));
    }
    out.upper.value = best;
  }

  // Lower bounds: ||(Phi(X_ij))|| for maps with ||id_k (x) Phi|| <= 1.
  out.lower.direction = BoundDirection::kLower;
  out.lower.converged = true;
  out.lower.value = op;  // Phi = id
  const int kk = std::min(k, r);
  out.lower.value = std::max(out.lower.value, operator_norm(MapRepr::transpose(r).apply_id(m, mat)) / kk);
  for (int s = 0; s < cfg.restarts; ++s) {
    Rng rng(cfg.rng.child(static_cast<std::uint64_t>(s)));
    const MapRepr phi(random_cptp(r, r, rng, 1 + s % r));
    const double scale = cp_cb_norm(phi);
    if (!(scale > 0.0)) continue;
    out.lower.value = std::max(out.lower.value, operator_norm(phi.apply_id(m, mat)) / scale);
  }
  out.lower.restarts_used = cfg.restarts + 2;
  if (m <= k) out.lower.direction = BoundDirection::kExact;
  return out;
}

}  // namespace schmidt
