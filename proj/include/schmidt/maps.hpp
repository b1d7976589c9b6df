#pragma once

// Linear maps Phi : M_r -> M_n stored by their Choi matrix
//
//   J(Phi) = sum_ij |i><j| (x) Phi(|i><j|)   in M_r (x) M_n,
//
// so Phi(X) = sum_ij X_ij J_ij with J_ij the (i, j) block, and
// (id_k (x) Phi)(X) acts blockwise on X in M_k (x) M_r.

#include <functional>
#include <optional>
#include <vector>

#include "schmidt/cones.hpp"
#include "schmidt/linalg.hpp"
#include "schmidt/norms.hpp"

namespace schmidt {

class MapRepr {
 public:
  explicit MapRepr(BipartiteOperator choi);

  static MapRepr from_kraus(const std::vector<ComplexMatrix>& kraus);
  static MapRepr from_function(int in_dim, int out_dim,
                               const std::function<ComplexMatrix(const ComplexMatrix&)>& fn);
  static MapRepr identity(int n);
  static MapRepr transpose(int n);
  /// Omega(X) = Tr(X) I_n / n, from M_r.
  static MapRepr depolarizing(int r, int n);
  /// X -> Tr(X) I - p X on M_n.
  static MapRepr reduction(int n, double p);
  static MapRepr zero(int in_dim, int out_dim);
  /// X -> a(X) (+) b(X), block diagonal in M_{n_a + n_b}.
  static MapRepr direct_sum(const MapRepr& a, const MapRepr& b);

  int in_dim() const { return choi_.dims().m; }
  int out_dim() const { return choi_.dims().n; }
  const BipartiteOperator& choi() const { return choi_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Hilbert-Schmidt adjoint: Tr(Y^* Phi(X)) = Tr(adjoint(Y)^* X).
  ComplexMatrix apply_adjoint(const ComplexMatrix& y) const;
  /// (id_k (x) Phi)(X) for X in M_k (x) M_r.
  ComplexMatrix apply_id(int k, const ComplexMatrix& x) const;
  MapRepr adjoint() const;

  MapRepr scaled(double factor) const;
  friend MapRepr operator+(const MapRepr& a, const MapRepr& b);
  friend MapRepr operator-(const MapRepr& a, const MapRepr& b);

  bool is_hermiticity_preserving(double tol = kDefaultTol.herm) const;
  bool is_completely_positive(double tol = 1e-10) const;
  bool is_trace_preserving(double tol = 1e-10) const;

 private:
  BipartiteOperator choi_;
};

enum class MapNormDirection { kLower, kExactFlagged };

const char* to_string(MapNormDirection d);

struct MapNormEstimate {
  double value = 0.0;
  MapNormDirection direction = MapNormDirection::kLower;
  /// Matrix input for the operator norm; unit vector u (as a column) for the
  /// Hermitian trace norm, whose input is |u><u|.
  std::optional<ComplexMatrix> attaining_input;
  int restarts_used = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::vector<double>> histories;
};

/// ||Phi(I)||: the completely bounded norm of a completely positive map.
/// Throws if the Choi matrix is not PSD.
double cp_cb_norm(const MapRepr& phi);

/// k-block positivity of the Choi matrix, i.e. k-positivity of Phi.
BlockPositivityVerdict k_positivity(const MapRepr& phi, int k, const SeeSawConfig& cfg = {});

/// sn_upper_verify on J(Phi)/Tr J(Phi): true certifies Phi is k-partially
/// entanglement breaking with k = ens.k.
bool k_peb_certify(const MapRepr& phi, const SchmidtEnsemble& ens);

/// witness_check on J(Phi)/Tr J(Phi). Without an explicit witness the overlap
/// witness of the Choi state's top eigenvector is used. A valid certificate
/// refutes k-PEB.
WitnessCertificate k_peb_refute(const MapRepr& phi, int k, const SeeSawConfig& cfg = {},
                                const std::optional<BipartiteOperator>& witness = std::nullopt);

/// Lower bound on ||id_k (x) Phi|| = sup{ ||(id_k (x) Phi)(X)|| : ||X|| <= 1 }.
MapNormEstimate idk_op_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg = {});

/// Lower bound on ||id_k (x) Phi||_tr^H, the supremum of
/// ||(id_k (x) Phi)(|u><u|)||_tr over unit u in C^k (x) C^r.
MapNormEstimate hermitian_trace_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg = {});

/// sup{ |<v|(id_k (x) Phi)(X)|v>| : X = X^*, ||X|| <= 1, v in C^k (x) C^n },
/// the level-k value of the stabilized order-norm CB quantity. Equal to the
/// Hermitian trace norm of the adjoint map.
MapNormEstimate idk_hermitian_form_norm(const MapRepr& phi, int k, const SeeSawConfig& cfg = {});

/// Psi rescaled (when needed) to ||Psi||_tr^H <= 0.9/n, then
/// X -> Psi(X) (+) (Omega - Psi)(X) into M_{2n}. Trace preserving.
MapRepr detection_map(const MapRepr& psi, const SeeSawConfig& cfg = {});

struct ContractionResult {
  bool detected = false;
  double output_trace_norm = 0.0;  // ||(id_m (x) Phi)(rho)||_tr
  double map_norm = 0.0;           // ||id_k (x) Phi||_tr^H used for the precondition
  std::optional<ComplexVector> negative_direction;  // eigenvector with negative eigenvalue
};

inline constexpr double kEvalTol = 1e-6;

/// Detected iff ||(id_m (x) Phi)(rho)||_tr > 1 + refute_tol, which certifies
/// SN(rho) > k when ||id_k (x) Phi||_tr^H <= 1. The map norm is computed
/// unless `certified_map_norm` is given; a norm above 1 + eval_tol throws.
ContractionResult sn_contraction_test(const BipartiteOperator& rho, const MapRepr& phi, int k,
                                      const SeeSawConfig& cfg = {},
                                      std::optional<double> certified_map_norm = std::nullopt,
                                      double refute_tol = kRefuteTol, double eval_tol = kEvalTol);

}  // namespace schmidt
