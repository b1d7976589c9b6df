#include "schmidt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace schmidt {

namespace {

void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", expected square");
  }
}

void require_hermitian(const ComplexMatrix& x, double tol, const char* what) {
  require_square(x, what);
  if (!is_hermitian(x, tol)) throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_solve(const ComplexMatrix& h) {
  const ComplexMatrix sym = hermitian_part(h);
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym);
}

}  // namespace

// --- types -----------------------------------------------------------------------

BipartiteOperator::BipartiteOperator(ComplexMatrix mat, Dims dims) : mat_(std::move(mat)), dims_(dims) {
  if (dims_.m < 1 || dims_.n < 1) throw std::invalid_argument("BipartiteOperator: dimensions must be positive");
  if (mat_.rows() != dims_.total() || mat_.cols() != dims_.total()) {
    throw std::invalid_argument("BipartiteOperator: matrix is " + std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()) + " but m*n = " + std::to_string(dims_.total()));
  }
}

ComplexMatrix BipartiteOperator::block(int i, int j) const {
  if (i < 0 || j < 0 || i >= dims_.m || j >= dims_.m) throw std::out_of_range("BipartiteOperator::block");
  return mat_.block(static_cast<Eigen::Index>(i) * dims_.n, static_cast<Eigen::Index>(j) * dims_.n, dims_.n,
                    dims_.n);
}

bool BipartiteOperator::is_hermitian(double tol) const { return schmidt::is_hermitian(mat_, tol); }

BipartiteOperator BipartiteOperator::adjoint() const { return {mat_.adjoint(), dims_}; }

PureState::PureState(ComplexVector amplitudes, Dims dims, double unit_tol)
    : amps_(std::move(amplitudes)), dims_(dims) {
  if (dims_.m < 1 || dims_.n < 1) throw std::invalid_argument("PureState: dimensions must be positive");
  if (amps_.size() != dims_.total()) {
    throw std::invalid_argument("PureState: " + std::to_string(amps_.size()) + " amplitudes for dims " +
                                std::to_string(dims_.m) + "x" + std::to_string(dims_.n));
  }
  if (std::abs(amps_.norm() - 1.0) > unit_tol) throw std::invalid_argument("PureState: vector is not normalized");
}

PureState PureState::normalized(const ComplexVector& amplitudes, Dims dims) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("PureState: zero vector cannot be normalized");
  return {amplitudes / norm, dims};
}

PureState PureState::product(const ComplexVector& left, const ComplexVector& right) {
  return normalized(tensor(left, right), Dims{static_cast<int>(left.size()), static_cast<int>(right.size())});
}

ComplexMatrix PureState::coefficient_matrix() const { return as_coefficient_matrix(amps_, dims_); }

ComplexVector SchmidtDecomposition::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(left.rows() * right.rows());
  for (int r = 0; r < size(); ++r) out += coeffs(r) * tensor(ComplexVector(left.col(r)), ComplexVector(right.col(r)));
  return out;
}

Frame::Frame(ComplexMatrix vectors, double ortho_tol) : vecs_(std::move(vectors)) {
  if (vecs_.cols() < 1 || vecs_.cols() > vecs_.rows()) {
    throw std::invalid_argument("Frame: need 1 <= k <= n vectors");
  }
  const ComplexMatrix gram = vecs_.adjoint() * vecs_;
  const double err = (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (err > ortho_tol) throw std::invalid_argument("Frame: vectors are not orthonormal");
}

// --- bipartite structure -----------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix as_coefficient_matrix(const ComplexVector& v, Dims dims) {
  if (v.size() != dims.total()) throw std::invalid_argument("as_coefficient_matrix: size mismatch");
  ComplexMatrix out(dims.m, dims.n);
  for (int i = 0; i < dims.m; ++i) {
    for (int j = 0; j < dims.n; ++j) out(i, j) = v(i * dims.n + j);
  }
  return out;
}

ComplexVector from_coefficient_matrix(const ComplexMatrix& coeffs) {
  const auto m = coeffs.rows();
  const auto n = coeffs.cols();
  ComplexVector out(m * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i * n + j) = coeffs(i, j);
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& x, Dims dims) {
  if (x.rows() != dims.total() || x.cols() != dims.total()) throw std::invalid_argument("partial_trace_first");
  ComplexMatrix out = ComplexMatrix::Zero(dims.n, dims.n);
  for (int i = 0; i < dims.m; ++i) out += x.block(i * dims.n, i * dims.n, dims.n, dims.n);
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& x, Dims dims) {
  if (x.rows() != dims.total() || x.cols() != dims.total()) throw std::invalid_argument("partial_trace_second");
  ComplexMatrix out(dims.m, dims.m);
  for (int i = 0; i < dims.m; ++i) {
    for (int j = 0; j < dims.m; ++j) out(i, j) = x.block(i * dims.n, j * dims.n, dims.n, dims.n).trace();
  }
  return out;
}

ComplexVector assemble_from_frame(const ComplexVector& stacked, const ComplexMatrix& frame, int m) {
  const auto k = frame.cols();
  if (stacked.size() != m * k) throw std::invalid_argument("assemble_from_frame: size mismatch");
  // V = [x_1 ... x_k] * B^T
  const ComplexMatrix left = Eigen::Map<const ComplexMatrix>(stacked.data(), m, k);
  return from_coefficient_matrix(left * frame.transpose());
}

ComplexVector contract_left(const ComplexVector& x, const ComplexVector& z, Dims dims) {
  if (x.size() != dims.m) throw std::invalid_argument("contract_left: size mismatch");
  const ComplexMatrix zm = as_coefficient_matrix(z, dims);
  return zm.transpose() * x.conjugate();
}

SchmidtDecomposition schmidt_decompose(const PureState& v) {
  if (!(v.amplitudes().norm() > 0.0)) throw std::invalid_argument("schmidt_decompose: zero vector");
  const ComplexMatrix coeffs = v.coefficient_matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coeffs = svd.singularValues();
  out.left = svd.matrixU();
  // V = U S W^*, so v = sum_r s_r u_r (x) conj(w_r).
  out.right = svd.matrixV().conjugate();
  return out;
}

int schmidt_rank(const PureState& v, double rank_tol) {
  if (!(rank_tol > 0.0)) throw std::invalid_argument("schmidt_rank: rank_tol must be positive");
  const auto sd = schmidt_decompose(v);
  return static_cast<int>((sd.coeffs.array() > rank_tol).count());
}

PureState truncate_schmidt(const PureState& v, int k) {
  const Dims d = v.dims();
  if (k < 1 || k > d.min_dim()) {
    throw std::invalid_argument("truncate_schmidt: k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(d.min_dim()) + "]");
  }
  const auto sd = schmidt_decompose(v);
  const double kept = sd.coeffs.head(k).norm();
  if (!(kept > 0.0)) throw std::invalid_argument("truncate_schmidt: leading Schmidt coefficients vanish");
  const ComplexMatrix coeffs =
      sd.left.leftCols(k) * sd.coeffs.head(k).cast<Complex>().asDiagonal() * sd.right.leftCols(k).transpose();
  return {from_coefficient_matrix(coeffs) / kept, d, 1e-8};
}

// --- spectral quantities --------------------------------------------------------------

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  if (x.size() == 0) return true;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) { return (x + x.adjoint()) * 0.5; }

ComplexMatrix antihermitian_part(const ComplexMatrix& x) { return (x - x.adjoint()) / Complex(0.0, 2.0); }

double operator_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  if (is_hermitian(x, 1e-13)) return hermitian_solve(x).eigenvalues().cwiseAbs().sum();
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  return svd.singularValues().sum();
}

double min_eig_hermitian(const ComplexMatrix& x, double herm_tol) {
  require_hermitian(x, herm_tol, "min_eig_hermitian");
  return hermitian_solve(x).eigenvalues()(0);
}

double max_eig_hermitian(const ComplexMatrix& x, double herm_tol) {
  require_hermitian(x, herm_tol, "max_eig_hermitian");
  const auto ev = hermitian_solve(x).eigenvalues();
  return ev(ev.size() - 1);
}

SingularTriplet top_singular_triplet(const ComplexMatrix& x) {
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues()(0), svd.matrixU().col(0), svd.matrixV().col(0)};
}

EigenPair top_eigenpair(const ComplexMatrix& h) {
  const auto es = hermitian_solve(h);
  const auto last = es.eigenvalues().size() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

EigenPair bottom_eigenpair(const ComplexMatrix& h) {
  const auto es = hermitian_solve(h);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

NumericalRadius numerical_radius_detail(const ComplexMatrix& x) {
  require_square(x, "numerical_radius");
  NumericalRadius best;
  if (x.size() == 0) return best;

  if (is_hermitian(x, 1e-14)) {
    const auto es = hermitian_solve(x);
    const auto last = es.eigenvalues().size() - 1;
    const double hi = es.eigenvalues()(last);
    const double lo = es.eigenvalues()(0);
    if (hi >= -lo) return {hi, 0.0, es.eigenvectors().col(last)};
    return {-lo, std::numbers::pi, es.eigenvectors().col(0)};
  }

  const ComplexMatrix xa = x.adjoint();
  auto eval = [&](double theta) {
    const Complex phase = std::polar(1.0, theta);
    const ComplexMatrix h = (phase * x + std::conj(phase) * xa) * 0.5;
    auto top = top_eigenpair(h);
    if (top.value > best.value || best.vector.size() == 0) best = {top.value, theta, std::move(top.vector)};
    return top.value;
  };

  constexpr int kGrid = 64;
  const double step = 2.0 * std::numbers::pi / kGrid;
  for (int g = 0; g < kGrid; ++g) eval(g * step);

  // Golden section on [theta* - step, theta* + step].
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best.theta - step;
  double b = best.theta + step;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  best.theta = std::remainder(best.theta, 2.0 * std::numbers::pi);
  return best;
}

double numerical_radius(const ComplexMatrix& x) { return numerical_radius_detail(x).value; }

ComplexMatrix trace_dual_unitary(const ComplexMatrix& g) {
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // g = U S V^*; (V U^*) g = V S V^*, whose trace is sum S.
  const auto r = std::min(g.rows(), g.cols());
  return svd.matrixV().leftCols(r) * svd.matrixU().leftCols(r).adjoint();
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(a.rows(), a.cols());
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

// --- fixtures ---------------------------------------------------------------------------

ComplexVector maximally_entangled(int n) {
  if (n < 1) throw std::invalid_argument("maximally_entangled: n must be positive");
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) phi(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return phi;
}

ComplexMatrix swap_operator(int n) {
  if (n < 1) throw std::invalid_argument("swap_operator: n must be positive");
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  }
  return s;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector shifted_entangled(int n) {
  if (n < 1) throw std::invalid_argument("shifted_entangled: n must be positive");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) v(i * n + (i + 1) % n) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

BipartiteOperator entangled_shift_outer(int n) {
  return {maximally_entangled(n) * shifted_entangled(n).adjoint(), Dims{n, n}};
}

}  // namespace schmidt
