#include "frame_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schmidt::detail {

namespace {

struct InnerSolution {
  double value = 0.0;
  ComplexVector vector;
  Complex phase{1.0, 0.0};  // the form is locally Re(phase * x^* C x)
};

InnerSolution solve_inner(const ComplexMatrix& c, QuadraticMode mode) {
  if (mode == QuadraticMode::kLargestEigenvalue) {
    auto top = top_eigenpair(c);
    return {top.value, std::move(top.vector), Complex(1.0, 0.0)};
  }
  auto nr = numerical_radius_detail(c);
  return {nr.value, std::move(nr.vector), std::polar(1.0, nr.theta)};
}

// (phase X + conj(phase) X^*) v / 2
ComplexVector apply_real_part(const ComplexMatrix& x, const ComplexVector& v, Complex phase) {
  return (phase * (x * v) + std::conj(phase) * (x.adjoint() * v)) * 0.5;
}

ComplexMatrix full_svd_left(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU);
  return svd.matrixU();
}

ComplexMatrix full_svd_right(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV();
}

}  // namespace

ComplexMatrix frame_embedding(const ComplexMatrix& frame, int m) {
  const auto n = frame.rows();
  const auto k = frame.cols();
  ComplexMatrix e = ComplexMatrix::Zero(m * n, m * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (int i = 0; i < m; ++i) e.block(i * n, r * m + i, n, 1) = frame.col(r);
  }
  return e;
}

ComplexMatrix left_embedding(const ComplexMatrix& left_frame, int n) {
  const auto m = left_frame.rows();
  const auto k = left_frame.cols();
  ComplexMatrix e = ComplexMatrix::Zero(m * n, k * n);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) e(i * n + j, r * n + j) = left_frame(i, r);
    }
  }
  return e;
}

ComplexMatrix right_schmidt_frame(const ComplexVector& v, Dims dims, int k) {
  // V = U S W^*, v = sum_r s_r u_r (x) conj(w_r)
  return full_svd_right(as_coefficient_matrix(v, dims)).leftCols(k).conjugate();
}

ComplexMatrix left_schmidt_frame(const ComplexVector& v, Dims dims, int k) {
  return full_svd_left(as_coefficient_matrix(v, dims)).leftCols(k);
}

FrameAscentResult ascend_frame(ComplexMatrix frame, const FrameObjective& objective,
                               const FrameAscentOptions& options) {
  FrameAscentResult result;
  result.frame = std::move(frame);
  result.best = objective.evaluate(result.frame);
  result.history.push_back(result.best.value);

  double step = -1.0;
  int quiet = 0;
  for (int it = 0; it < options.max_iters; ++it) {
    result.iterations = it + 1;
    const double before = result.best.value;
    const ComplexMatrix& b = result.frame;
    const ComplexMatrix& g = result.best.gradient;

    const ComplexMatrix tangent = g - b * hermitian_part(b.adjoint() * g);
    const double tnorm = tangent.norm();
    if (tnorm > 1e-14) {
      if (step < 0.0) step = 0.5 / tnorm;
      double t = std::min(2.0 * step, 1.0 / tnorm);
      for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
        ComplexMatrix candidate = orthonormalize_columns(b + t * tangent);
        FrameEvaluation eval = objective.evaluate(candidate);
        if (eval.value > result.best.value) {
          result.frame = std::move(candidate);
          result.best = std::move(eval);
          break;
        }
      }
      step = t;
    }

    if (objective.propose) {
      if (auto candidate = objective.propose(result.frame, result.best)) {
        FrameEvaluation eval = objective.evaluate(*candidate);
        if (eval.value > result.best.value) {
          result.frame = std::move(*candidate);
          result.best = std::move(eval);
        }
      }
    }

    result.history.push_back(result.best.value);
    if (result.best.value - before < options.obj_tol) {
      if (++quiet >= 2) {
        result.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  return result;
}

FrameObjective quadratic_frame_objective(const ComplexMatrix& x, Dims dims, QuadraticMode mode) {
  FrameObjective obj;
  obj.evaluate = [x, dims, mode](const ComplexMatrix& frame) {
    const ComplexMatrix e = frame_embedding(frame, dims.m);
    const ComplexMatrix c = e.adjoint() * x * e;
    InnerSolution inner = solve_inner(c, mode);
    FrameEvaluation out;
    out.value = inner.value;
    out.left = e * inner.vector;
    out.right = out.left;
    const ComplexVector hv = apply_real_part(x, out.left, inner.phase);
    out.gradient.resize(frame.rows(), frame.cols());
    for (Eigen::Index r = 0; r < frame.cols(); ++r) {
      const ComplexVector xr = inner.vector.segment(r * dims.m, dims.m);
      out.gradient.col(r) = 2.0 * contract_left(xr, hv, dims);
    }
    return out;
  };
  obj.propose = [x, dims, mode](const ComplexMatrix& frame,
                                const FrameEvaluation& current) -> std::optional<ComplexMatrix> {
    const int k = static_cast<int>(frame.cols());
    if (current.left.norm() == 0.0) return std::nullopt;
    const ComplexMatrix left = left_schmidt_frame(current.left, dims, std::min(k, dims.m));
    const ComplexMatrix e = left_embedding(left, dims.n);
    const ComplexMatrix c = e.adjoint() * x * e;
    const InnerSolution inner = solve_inner(c, mode);
    const ComplexVector v = e * inner.vector;
    return right_schmidt_frame(v, dims, k);
  };
  return obj;
}

FrameObjective singular_frame_objective(const ComplexMatrix& x, Dims dims) {
  FrameObjective obj;
  obj.evaluate = [x, dims](const ComplexMatrix& frame) {
    const ComplexMatrix e = frame_embedding(frame, dims.m);
    const ComplexMatrix c = e.adjoint() * x * e;
    const SingularTriplet top = top_singular_triplet(c);
    FrameEvaluation out;
    out.value = top.value;
    out.left = e * top.left;
    out.right = e * top.right;
    const ComplexVector xw = x * out.right;
    const ComplexVector xv = x.adjoint() * out.left;
    out.gradient.resize(frame.rows(), frame.cols());
    for (Eigen::Index r = 0; r < frame.cols(); ++r) {
      const ComplexVector lr = top.left.segment(r * dims.m, dims.m);
      const ComplexVector rr = top.right.segment(r * dims.m, dims.m);
      out.gradient.col(r) = contract_left(lr, xw, dims) + contract_left(rr, xv, dims);
    }
    return out;
  };
  return obj;
}

}  // namespace schmidt::detail
