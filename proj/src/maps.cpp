#include "schmidt/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace schmidt {

namespace {

void require_k_positive(int k, const char* what) {
  if (k < 1) throw std::invalid_argument(std::string(what) + ": k must be >= 1");
}

ComplexMatrix unit_matrix(int dim, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

// sign(Y) for Hermitian Y, with +1 on the kernel.
ComplexMatrix hermitian_sign(const ComplexMatrix& y) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(y));
  RealVector signs = es.eigenvalues().unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  return es.eigenvectors() * signs.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

struct SeeSawRun {
  double value = 0.0;
  ComplexMatrix input;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

MapNormEstimate reduce_runs(std::vector<SeeSawRun>& runs) {
  MapNormEstimate est;
  int best = 0;
  for (int r = 0; r < static_cast<int>(runs.size()); ++r) {
    if (runs[r].value > runs[best].value) best = r;
    est.iterations += runs[r].iterations;
  }
  est.value = runs[best].value;
  est.attaining_input = runs[best].input;
  est.converged = runs[best].converged;
  est.restarts_used = static_cast<int>(runs.size());
  for (auto& r : runs) est.histories.push_back(std::move(r.history));
  return est;
}

// Alternates X <- polar((id_k (x) Phi^*)(|v><w|)) and (v, w) <- top singular
// pair of (id_k (x) Phi)(X).
SeeSawRun idk_restart(const MapRepr& phi, const MapRepr& adj, int k, const SeeSawConfig& cfg, int restart) {
  Rng rng(cfg.rng.child(static_cast<std::uint64_t>(restart)));
  SeeSawRun run;
  run.input = random_unitary(k * phi.in_dim(), rng);
  SingularTriplet top = top_singular_triplet(phi.apply_id(k, run.input));
  run.value = top.value;
  run.history.push_back(run.value);
  for (int it = 0; it < cfg.max_iters; ++it) {
    run.iterations = it + 1;
    const ComplexMatrix g = adj.apply_id(k, top.left * top.right.adjoint());
    ComplexMatrix next = trace_dual_unitary(g.adjoint());
    SingularTriplet next_top = top_singular_triplet(phi.apply_id(k, next));
    if (next_top.value < run.value) {
      run.converged = true;
      break;
    }
    const double gain = next_top.value - run.value;
    run.input = std::move(next);
    top = std::move(next_top);
    run.value = top.value;
    run.history.push_back(run.value);
    if (gain < cfg.obj_tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

// Alternates S <- sign((id_k (x) Phi)(|u><u|)) and u <- top eigenvector of
// (id_k (x) Phi^*)(S).
SeeSawRun trnorm_restart(const MapRepr& phi, const MapRepr& adj, int k, const SeeSawConfig& cfg, int restart) {
  Rng rng(cfg.rng.child(static_cast<std::uint64_t>(restart)));
  SeeSawRun run;
  ComplexVector u = random_unit_vector(k * phi.in_dim(), rng);
  ComplexMatrix out = phi.apply_id(k, projector(u));
  run.value = trace_norm(hermitian_part(out));
  run.input = u;
  run.history.push_back(run.value);
  for (int it = 0; it < cfg.max_iters; ++it) {
    run.iterations = it + 1;
    const ComplexMatrix pulled = adj.apply_id(k, hermitian_sign(out));
    ComplexVector next = top_eigenpair(pulled).vector;
    ComplexMatrix next_out = phi.apply_id(k, projector(next));
    const double value = trace_norm(hermitian_part(next_out));
    if (value < run.value) {
      run.converged = true;
      break;
    }
    const double gain = value - run.value;
    u = std::move(next);
    out = std::move(next_out);
    run.value = value;
    run.input = u;
    run.history.push_back(run.value);
    if (gain < cfg.obj_tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

void require_psd_choi(const MapRepr& phi, const char* what) {
  if (!phi.is_completely_positive()) {
    throw std::invalid_argument(std::string(what) + ": Choi matrix is not positive semidefinite");
  }
}

}  // namespace

// --- MapRepr ------------------------------------------------------------------------

MapRepr::MapRepr(BipartiteOperator choi) : choi_(std::move(choi)) {}

MapRepr MapRepr::from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("MapRepr::from_kraus: no Kraus operators");
  const auto n = kraus.front().rows();
  const auto r = kraus.front().cols();
  ComplexMatrix choi = ComplexMatrix::Zero(r * n, r * n);
  for (const auto& k : kraus) {
    if (k.rows() != n || k.cols() != r) throw std::invalid_argument("MapRepr::from_kraus: shape mismatch");
    ComplexVector vec(r * n);
    for (Eigen::Index i = 0; i < r; ++i) vec.segment(i * n, n) = k.col(i);
    choi += vec * vec.adjoint();
  }
  return MapRepr(BipartiteOperator(choi, Dims{static_cast<int>(r), static_cast<int>(n)}));
}

MapRepr MapRepr::from_function(int in_dim, int out_dim,
                               const std::function<ComplexMatrix(const ComplexMatrix&)>& fn) {
  ComplexMatrix choi(static_cast<Eigen::Index>(in_dim) * out_dim, static_cast<Eigen::Index>(in_dim) * out_dim);
  for (int i = 0; i < in_dim; ++i) {
    for (int j = 0; j < in_dim; ++j) {
      const ComplexMatrix img = fn(unit_matrix(in_dim, i, j));
      if (img.rows() != out_dim || img.cols() != out_dim) {
        throw std::invalid_argument("MapRepr::from_function: image has wrong shape");
      }
      choi.block(static_cast<Eigen::Index>(i) * out_dim, static_cast<Eigen::Index>(j) * out_dim, out_dim,
                 out_dim) = img;
    }
  }
  return MapRepr(BipartiteOperator(choi, Dims{in_dim, out_dim}));
}

MapRepr MapRepr::identity(int n) {
  return from_function(n, n, [](const ComplexMatrix& x) { return x; });
}

MapRepr MapRepr::transpose(int n) {
  return from_function(n, n, [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); });
}

MapRepr MapRepr::depolarizing(int r, int n) {
  return from_function(r, n, [n](const ComplexMatrix& x) {
    return ComplexMatrix(x.trace() * ComplexMatrix::Identity(n, n) / static_cast<double>(n));
  });
}

MapRepr MapRepr::reduction(int n, double p) {
  return from_function(n, n, [n, p](const ComplexMatrix& x) {
    return ComplexMatrix(x.trace() * ComplexMatrix::Identity(n, n) - p * x);
  });
}

MapRepr MapRepr::zero(int in_dim, int out_dim) {
  const int d = in_dim * out_dim;
  return MapRepr(BipartiteOperator(ComplexMatrix::Zero(d, d), Dims{in_dim, out_dim}));
}

MapRepr MapRepr::direct_sum(const MapRepr& a, const MapRepr& b) {
  if (a.in_dim() != b.in_dim()) throw std::invalid_argument("MapRepr::direct_sum: input dimensions differ");
  const int na = a.out_dim();
  const int nb = b.out_dim();
  return from_function(a.in_dim(), na + nb, [&](const ComplexMatrix& x) {
    ComplexMatrix out = ComplexMatrix::Zero(na + nb, na + nb);
    out.topLeftCorner(na, na) = a.apply(x);
    out.bottomRightCorner(nb, nb) = b.apply(x);
    return out;
  });
}

ComplexMatrix MapRepr::apply(const ComplexMatrix& x) const {
  const int r = in_dim();
  const int n = out_dim();
  if (x.rows() != r || x.cols() != r) {
    throw std::invalid_argument("MapRepr::apply: input is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", map expects " + std::to_string(r) + "x" +
                                std::to_string(r));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const ComplexMatrix& j = choi_.matrix();
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      if (x(a, b) != Complex(0.0, 0.0)) out += x(a, b) * j.block(a * n, b * n, n, n);
    }
  }
  return out;
}

ComplexMatrix MapRepr::apply_adjoint(const ComplexMatrix& y) const {
  const int r = in_dim();
  const int n = out_dim();
  if (y.rows() != n || y.cols() != n) throw std::invalid_argument("MapRepr::apply_adjoint: shape mismatch");
  ComplexMatrix out(r, r);
  const ComplexMatrix& j = choi_.matrix();
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) out(a, b) = j.block(a * n, b * n, n, n).conjugate().cwiseProduct(y).sum();
  }
  return out;
}

ComplexMatrix MapRepr::apply_id(int k, const ComplexMatrix& x) const {
  require_k_positive(k, "MapRepr::apply_id");
  const int r = in_dim();
  const int n = out_dim();
  if (x.rows() != k * r || x.cols() != k * r) throw std::invalid_argument("MapRepr::apply_id: shape mismatch");
  ComplexMatrix out(static_cast<Eigen::Index>(k) * n, static_cast<Eigen::Index>(k) * n);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) out.block(a * n, b * n, n, n) = apply(x.block(a * r, b * r, r, r));
  }
  return out;
}

MapRepr MapRepr::adjoint() const {
  const int r = in_dim();
  const int n = out_dim();
  const ComplexMatrix& j = choi_.matrix();
  ComplexMatrix adj(static_cast<Eigen::Index>(r) * n, static_cast<Eigen::Index>(r) * n);
  // J'[(a, i), (b, j)] = conj(J[(i, a), (j, b)])
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < n; ++a) {
      for (int jj = 0; jj < r; ++jj) {
        for (int b = 0; b < n; ++b) adj(a * r + i, b * r + jj) = std::conj(j(i * n + a, jj * n + b));
      }
    }
  }
  return MapRepr(BipartiteOperator(adj, Dims{n, r}));
}

MapRepr MapRepr::scaled(double factor) const { return MapRepr(BipartiteOperator(factor * choi_.matrix(), choi_.dims())); }

MapRepr operator+(const MapRepr& a, const MapRepr& b) {
  if (!(a.choi().dims() == b.choi().dims())) throw std::invalid_argument("MapRepr: dimension mismatch in sum");
  return MapRepr(BipartiteOperator(a.choi().matrix() + b.choi().matrix(), a.choi().dims()));
}

MapRepr operator-(const MapRepr& a, const MapRepr& b) { return a + b.scaled(-1.0); }

bool MapRepr::is_hermiticity_preserving(double tol) const { return choi_.is_hermitian(tol); }

bool MapRepr::is_completely_positive(double tol) const {
  if (!choi_.is_hermitian(std::max(tol, kDefaultTol.herm))) return false;
  return min_eig_hermitian(choi_.matrix(), std::max(tol, kDefaultTol.herm)) >= -tol;
}

bool MapRepr::is_trace_preserving(double tol) const {
  const ComplexMatrix reduced = partial_trace_second(choi_.matrix(), choi_.dims());
  return (reduced - ComplexMatrix::Identity(in_dim(), in_dim())).cwiseAbs().maxCoeff() <= tol;
}

// --- map-level quantities ------------------------------------------------------------------

const char* to_string(MapNormDirection d) { return d == MapNormDirection::kLower ? "lower" : "exact-flagged"; }

double cp_cb_norm(const MapRepr& phi) {
  require_psd_choi(phi, "cp_cb_norm");
  return operator_norm(phi.apply(ComplexMatrix::Identity(phi.in_dim(), phi.in_dim())));
}

BlockPositivityVerdict k_positivity(const MapRepr& phi, int k, const SeeSawConfig& cfg) {
  require_k_positive(k, "k_positivity");
  if (!phi.is_hermiticity_preserving()) throw std::invalid_argument("k_positivity: Choi matrix is not Hermitian");
  // k-positivity for k >= min(r, n) is complete positivity.
  return k_block_positivity(phi.choi(), std::min(k, phi.choi().dims().min_dim()), cfg);
}

bool k_peb_certify(const MapRepr& phi, const SchmidtEnsemble& ens) {
  require_psd_choi(phi, "k_peb_certify");
  const ComplexMatrix& j = phi.choi().matrix();
  return sn_upper_verify(BipartiteOperator(j / j.trace().real(), phi.choi().dims()), ens);
}

WitnessCertificate k_peb_refute(const MapRepr& phi, int k, const SeeSawConfig& cfg,
                                const std::optional<BipartiteOperator>& witness) {
  require_psd_choi(phi, "k_peb_refute");
  const Dims d = phi.choi().dims();
  if (k < 1 || k > d.min_dim()) throw std::invalid_argument("k_peb_refute: k out of range");
  const ComplexMatrix& j = phi.choi().matrix();
  const BipartiteOperator rho(hermitian_part(j / j.trace().real()), d);
  if (witness) return witness_check(*witness, rho, k, cfg);
  const PureState top = PureState::normalized(top_eigenpair(rho.matrix()).vector, d);
  return witness_check(overlap_witness(top, k), rho, k, cfg);
}

MapNormEstimate idk_op_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  require_k_positive(k, "idk_op_norm");
  const MapRepr adj = phi.adjoint();
  std::vector<SeeSawRun> runs(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads, [&](int r) { runs[r] = idk_restart(phi, adj, k, cfg, r); });
  MapNormEstimate est = reduce_runs(runs);
  if (phi.is_completely_positive() && std::abs(est.value - cp_cb_norm(phi)) <= 1e-9) {
    est.direction = MapNormDirection::kExactFlagged;
  }
  return est;
}

MapNormEstimate hermitian_trace_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg) {
  cfg.validate();
  require_k_positive(k, "hermitian_trace_norm");
  if (!phi.is_hermiticity_preserving()) {
    throw std::invalid_argument("hermitian_trace_norm: map is not Hermiticity preserving");
  }
  const MapRepr adj = phi.adjoint();
  std::vector<SeeSawRun> runs(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.threads, [&](int r) { runs[r] = trnorm_restart(phi, adj, k, cfg, r); });
  return reduce_runs(runs);
}

MapNormEstimate idk_hermitian_form_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg) {
  return hermitian_trace_norm(phi.adjoint(), k, cfg);
}

MapRepr detection_map(const MapRepr& psi, const SeeSawConfig& cfg) {
  if (!psi.is_hermiticity_preserving()) throw std::invalid_argument("detection_map: Choi matrix is not Hermitian");
  const int n = psi.out_dim();
  const double norm = hermitian_trace_norm(psi, 1, cfg).value;
  // Keep Psi when it already satisfies ||Psi||_tr^H <= 1/n; otherwise scale
  // to 0.9/n to leave room for the heuristic norm estimate.
  double scale = 1.0;
  if (norm * n > 1.0 + 1e-12) scale = 0.9 / (n * norm);
  const MapRepr scaled = psi.scaled(scale);
  return MapRepr::direct_sum(scaled, MapRepr::depolarizing(psi.in_dim(), n) - scaled);
}

ContractionResult sn_contraction_test(const BipartiteOperator& rho, const MapRepr& phi, int k,
                                      const SeeSawConfig& cfg, std::optional<double> certified_map_norm,
                                      double refute_tol, double eval_tol) {
  const Dims d = rho.dims();
  if (d.n != phi.in_dim()) {
    throw std::invalid_argument("sn_contraction_test: state acts on C^" + std::to_string(d.n) +
                                " but the map takes M_" + std::to_string(phi.in_dim()));
  }
  if (!rho.is_hermitian()) throw std::invalid_argument("sn_contraction_test: rho is not Hermitian");
  if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-9) {
    throw std::invalid_argument("sn_contraction_test: rho does not have unit trace");
  }
  if (min_eig_hermitian(rho.matrix()) < -1e-10) {
    throw std::invalid_argument("sn_contraction_test: rho is not positive semidefinite");
  }
  if (!phi.is_hermiticity_preserving()) {
    throw std::invalid_argument("sn_contraction_test: map is not Hermiticity preserving");
  }

  ContractionResult result;
  result.map_norm = certified_map_norm ? *certified_map_norm : hermitian_trace_norm(phi, k, cfg).value;
  if (result.map_norm > 1.0 + eval_tol) {
    throw std::invalid_argument("sn_contraction_test: ||id_k (x) Phi||_tr^H = " + std::to_string(result.map_norm) +
                                " exceeds 1");
  }
  const ComplexMatrix out = hermitian_part(phi.apply_id(d.m, rho.matrix()));
  result.output_trace_norm = trace_norm(out);
  result.detected = result.output_trace_norm > 1.0 + refute_tol;
  const EigenPair low = bottom_eigenpair(out);
  if (low.value < 0.0) result.negative_direction = low.vector;
  return result;
}

}  // namespace schmidt
