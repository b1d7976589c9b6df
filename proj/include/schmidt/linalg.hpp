#pragma once

// Dense complex linear algebra on bipartite spaces C^m (x) C^n.
//
// Flat index convention: the basis vector |i>|j> sits at index i*n + j
// (left factor major). Every reshape in the library goes through
// as_coefficient_matrix / from_coefficient_matrix so the convention lives in
// one place.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace schmidt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
  double herm = 1e-10;
  double ortho = 1e-10;
  double recon = 1e-9;
  double rank = 1e-9;
  double unit = 1e-10;
};

inline constexpr Tolerances kDefaultTol{};

struct Dims {
  int m = 1;
  int n = 1;

  constexpr int total() const { return m * n; }
  constexpr int min_dim() const { return m < n ? m : n; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

/// X in M_m (x) M_n, stored as an (mn) x (mn) matrix.
class BipartiteOperator {
 public:
  BipartiteOperator(ComplexMatrix mat, Dims dims);

  const ComplexMatrix& matrix() const { return mat_; }
  Dims dims() const { return dims_; }

  /// The n x n block X_ij, i.e. (<i| (x) I) X (|j> (x) I).
  ComplexMatrix block(int i, int j) const;

  bool is_hermitian(double tol = kDefaultTol.herm) const;
  BipartiteOperator adjoint() const;

 private:
  ComplexMatrix mat_;
  Dims dims_;
};

/// Unit vector in C^m (x) C^n.
class PureState {
 public:
  PureState(ComplexVector amplitudes, Dims dims, double unit_tol = kDefaultTol.unit);

  /// Normalizes `amplitudes`; throws std::invalid_argument on a zero vector.
  static PureState normalized(const ComplexVector& amplitudes, Dims dims);
  static PureState product(const ComplexVector& left, const ComplexVector& right);

  const ComplexVector& amplitudes() const { return amps_; }
  Dims dims() const { return dims_; }

  /// m x n matrix V with V(i, j) = amplitude of |i>|j>.
  ComplexMatrix coefficient_matrix() const;

 private:
  ComplexVector amps_;
  Dims dims_;
};

struct SchmidtDecomposition {
  RealVector coeffs;   // descending, nonnegative
  ComplexMatrix left;  // m x r, orthonormal columns
  ComplexMatrix right; // n x r, orthonormal columns

  int size() const { return static_cast<int>(coeffs.size()); }
  ComplexVector reconstruct() const;
};

/// k orthonormal vectors in C^n, stored as the columns of an n x k matrix.
class Frame {
 public:
  explicit Frame(ComplexMatrix vectors, double ortho_tol = kDefaultTol.ortho);

  const ComplexMatrix& vectors() const { return vecs_; }
  int k() const { return static_cast<int>(vecs_.cols()); }
  int dim() const { return static_cast<int>(vecs_.rows()); }

 private:
  ComplexMatrix vecs_;
};

// --- bipartite structure -----------------------------------------------------

/// Kronecker product; (a (x) b)(i*rb + k, j*cb + l) = a(i, j) b(k, l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix as_coefficient_matrix(const ComplexVector& v, Dims dims);
ComplexVector from_coefficient_matrix(const ComplexMatrix& coeffs);

/// Tr_1 and Tr_2 of an operator on C^m (x) C^n.
ComplexMatrix partial_trace_first(const ComplexMatrix& x, Dims dims);
ComplexMatrix partial_trace_second(const ComplexMatrix& x, Dims dims);

/// (x_1 ... x_k stacked as r*m + i) paired with frame columns b_r:
/// returns sum_r x_r (x) b_r in C^m (x) C^n.
ComplexVector assemble_from_frame(const ComplexVector& stacked, const ComplexMatrix& frame, int m);

/// (<x| (x) I) z for z in C^m (x) C^n: contracts the left factor against x.
ComplexVector contract_left(const ComplexVector& x, const ComplexVector& z, Dims dims);

SchmidtDecomposition schmidt_decompose(const PureState& v);
int schmidt_rank(const PureState& v, double rank_tol = kDefaultTol.rank);
/// Best Schmidt-rank-k approximation, renormalized.
PureState truncate_schmidt(const PureState& v, int k);

// --- spectral quantities -------------------------------------------------------

bool is_hermitian(const ComplexMatrix& x, double tol = kDefaultTol.herm);
ComplexMatrix hermitian_part(const ComplexMatrix& x);
/// (x - x^*) / (2i), so that x = hermitian_part(x) + i * antihermitian_part(x).
ComplexMatrix antihermitian_part(const ComplexMatrix& x);

double operator_norm(const ComplexMatrix& x);
double trace_norm(const ComplexMatrix& x);
double min_eig_hermitian(const ComplexMatrix& x, double herm_tol = kDefaultTol.herm);
double max_eig_hermitian(const ComplexMatrix& x, double herm_tol = kDefaultTol.herm);

struct SingularTriplet {
  double value = 0.0;
  ComplexVector left;
  ComplexVector right;
};
/// Largest singular value with unit singular vectors, x * right = value * left.
SingularTriplet top_singular_triplet(const ComplexMatrix& x);

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
};
/// Extreme eigenpairs of a Hermitian matrix (input is symmetrized, not checked).
EigenPair top_eigenpair(const ComplexMatrix& h);
EigenPair bottom_eigenpair(const ComplexMatrix& h);

struct NumericalRadius {
  double value = 0.0;
  double theta = 0.0;   // maximizing angle of lambda_max(Re(e^{i theta} x))
  ComplexVector vector; // unit x with |<x|x|x>| = value
};

/// max_theta lambda_max(Re(e^{i theta} x)) over a 64-point grid plus golden
/// section refinement. A lower bound on the numerical radius; exact for
/// Hermitian input.
NumericalRadius numerical_radius_detail(const ComplexMatrix& x);
double numerical_radius(const ComplexMatrix& x);

/// Unitary (or partial isometry) U with tr(U g) = ||g||_tr.
ComplexMatrix trace_dual_unitary(const ComplexMatrix& g);

/// Orthonormal basis for the column span, Householder QR with a positive
/// diagonal convention. Columns are assumed independent.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

// --- fixtures ------------------------------------------------------------------

/// (1/sqrt(n)) sum_i |i>|i>.
ComplexVector maximally_entangled(int n);
/// SWAP on C^n (x) C^n.
ComplexMatrix swap_operator(int n);
ComplexMatrix projector(const ComplexVector& v);
/// (1/sqrt(n)) sum_i |i>|i+1 mod n>.
ComplexVector shifted_entangled(int n);
/// |phi><psi| with phi = maximally_entangled(n), psi = shifted_entangled(n).
BipartiteOperator entangled_shift_outer(int n);

}  // namespace schmidt
