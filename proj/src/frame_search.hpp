#pragma once

// Ascent over orthonormal frames {b_1..b_k} in C^n for objectives of the form
// sup over vectors sum_r x_r (x) b_r. The inner problem (over the x_r) is solved
// exactly by the objective; the frame moves by projected gradient steps with
// step halving, optionally interleaved with an exact re-seat proposal.

#include <functional>
#include <optional>
#include <vector>

#include "schmidt/linalg.hpp"

namespace schmidt::detail {

struct FrameEvaluation {
  double value = 0.0;
  ComplexMatrix gradient;  // n x k Euclidean ascent direction (real inner product)
  ComplexVector left;      // attaining bipartite vectors
  ComplexVector right;
};

struct FrameObjective {
  std::function<FrameEvaluation(const ComplexMatrix& frame)> evaluate;
  /// Optional exact move: returns a frame whose value is at least the value of
  /// the vectors in `current`.
  std::function<std::optional<ComplexMatrix>(const ComplexMatrix& frame, const FrameEvaluation& current)> propose;
};

struct FrameAscentOptions {
  int max_iters = 200;
  double obj_tol = 1e-9;
  int max_halvings = 5;
};

struct FrameAscentResult {
  ComplexMatrix frame;
  FrameEvaluation best;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

FrameAscentResult ascend_frame(ComplexMatrix frame, const FrameObjective& objective,
                               const FrameAscentOptions& options);

/// E with columns e_i (x) b_r at position r*m + i, so compress(X, B) = E^* X E.
ComplexMatrix frame_embedding(const ComplexMatrix& frame, int m);
/// Columns a_r (x) e_j at position r*n + j.
ComplexMatrix left_embedding(const ComplexMatrix& left_frame, int n);

/// Leading k right Schmidt vectors of v (n x k, orthonormal columns).
ComplexMatrix right_schmidt_frame(const ComplexVector& v, Dims dims, int k);
ComplexMatrix left_schmidt_frame(const ComplexVector& v, Dims dims, int k);

/// Inner solver for quadratic-form objectives sup_x f(x^* C x) on a
/// compression C: returns the value, the maximizing unit x and the Hermitian
/// matrix H (same size as C's parent) whose form the value equals locally.
enum class QuadraticMode {
  kLargestEigenvalue,  // lambda_max(C), C Hermitian
  kNumericalRadius,    // max_theta lambda_max(Re(e^{i theta} C))
};

/// Frame objective for sup over v in C^m (x) span(frame) of the quadratic form
/// of X (see QuadraticMode). Includes the exact left-subspace re-seat proposal.
FrameObjective quadratic_frame_objective(const ComplexMatrix& x, Dims dims, QuadraticMode mode);

/// Frame objective ||compress(X, frame)|| with the shared-frame gradient.
FrameObjective singular_frame_objective(const ComplexMatrix& x, Dims dims);

}  // namespace schmidt::detail
