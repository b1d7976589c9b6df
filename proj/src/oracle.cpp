#include "schmidt/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace schmidt {

namespace {

// v = vec(A B^T), an SR <= k vector given by its m x k and n x k factors.
struct Factors {
  ComplexMatrix a;
  ComplexMatrix b;

  ComplexVector vec() const { return from_coefficient_matrix(a * b.transpose()); }
  void normalize() {
    const double nv = vec().norm();
    if (nv > 0.0) a /= nv;
  }
};

Factors random_factors(Dims d, int k, Rng& rng) {
  Factors f{random_gaussian(d.m, k, rng), random_gaussian(d.n, k, rng)};
  f.normalize();
  return f;
}

void require_k(int k, Dims d, const char* what) {
  if (k < 1 || k > d.min_dim()) {
    throw std::invalid_argument(std::string(what) + ": k = " + std::to_string(k) + " out of range");
  }
}

struct Candidate {
  double value = 0.0;
};

// Sweep over samples; polish the warm-up candidates and every raw record.
template <class Draw, class Polish>
double sweep(const OracleConfig& cfg, bool maximize, Draw&& draw, Polish&& polish) {
  const double worst = maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };
  double best = worst;
  double best_raw = worst;
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.rng.child(static_cast<std::uint64_t>(i)));
    auto cand = draw(rng);
    const bool record = better(cand.value, best_raw);
    if (record) best_raw = cand.value;
    double value = cand.value;
    if (i < cfg.warmup || record) value = polish(cand, rng);
    if (better(value, best)) best = value;
  }
  return best;
}

// Projection of z onto C^m (x) span(b) (right) or span(a) (x) C^n (left),
// written back into the factors. Returns false if the projection vanishes.
bool project_right(Factors& f, const ComplexVector& z, Dims d) {
  const ComplexMatrix q = orthonormalize_columns(f.b);
  const ComplexMatrix coeff = as_coefficient_matrix(z, d) * q.conjugate();
  if (!(coeff.norm() > 1e-300)) return false;
  f.a = coeff / coeff.norm();
  f.b = q;
  return true;
}

bool project_left(Factors& f, const ComplexVector& z, Dims d) {
  const ComplexMatrix p = orthonormalize_columns(f.a);
  const ComplexMatrix coeff = p.adjoint() * as_coefficient_matrix(z, d);
  if (!(coeff.norm() > 1e-300)) return false;
  f.a = p;
  f.b = coeff.transpose() / coeff.norm();
  return true;
}

// Exact extreme eigenvector of the quadratic form of h over C^m (x) span(b)
// (right) or span(a) (x) C^n (left).
void quadratic_right(Factors& f, const ComplexMatrix& h, Dims d, bool top) {
  const int k = static_cast<int>(f.b.cols());
  const ComplexMatrix q = orthonormalize_columns(f.b);
  const ComplexMatrix e = tensor(ComplexMatrix(ComplexMatrix::Identity(d.m, d.m)), q);
  const EigenPair ep = top ? top_eigenpair(e.adjoint() * h * e) : bottom_eigenpair(e.adjoint() * h * e);
  ComplexMatrix y(d.m, k);
  for (int i = 0; i < d.m; ++i) {
    for (int r = 0; r < k; ++r) y(i, r) = ep.vector(i * k + r);
  }
  f.a = y;
  f.b = q;
}

void quadratic_left(Factors& f, const ComplexMatrix& h, Dims d, bool top) {
  const int k = static_cast<int>(f.a.cols());
  const ComplexMatrix p = orthonormalize_columns(f.a);
  const ComplexMatrix e = tensor(p, ComplexMatrix(ComplexMatrix::Identity(d.n, d.n)));
  const EigenPair ep = top ? top_eigenpair(e.adjoint() * h * e) : bottom_eigenpair(e.adjoint() * h * e);
  ComplexMatrix y(k, d.n);
  for (int r = 0; r < k; ++r) {
    for (int j = 0; j < d.n; ++j) y(r, j) = ep.vector(r * d.n + j);
  }
  f.a = p;
  f.b = y.transpose();
}

ComplexMatrix expm_skew(const ComplexMatrix& skew) {
  // skew = i h with h Hermitian
  const ComplexMatrix h = hermitian_part(skew / Complex(0.0, 1.0));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const ComplexVector phases = es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double frame_singular_value(const ComplexMatrix& x, const ComplexMatrix& frame, int m) {
  const ComplexMatrix e = tensor(ComplexMatrix(ComplexMatrix::Identity(m, m)), frame);
  return operator_norm(e.adjoint() * x * e);
}

}  // namespace

void OracleConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("OracleConfig: samples must be >= 1");
  if (polish_steps < 0) throw std::invalid_argument("OracleConfig: polish_steps must be >= 0");
}

double expectation(const ComplexMatrix& x, const ComplexVector& v) { return v.dot(x * v).real(); }

double pairing_value(const ComplexMatrix& x, const ComplexVector& v, const ComplexVector& w) {
  return std::abs(v.dot(x * w));
}

double brute_sk_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  require_k(k, d, "brute_sk_norm");
  const ComplexMatrix& mat = x.matrix();
  const ComplexMatrix adj = mat.adjoint();

  struct Pair : Candidate {
    Factors v, w;
  };
  auto value_of = [&](const Pair& p) { return pairing_value(mat, p.v.vec(), p.w.vec()); };
  return sweep(
      cfg, true,
      [&](Rng& rng) {
        Pair p;
        p.v = random_factors(d, k, rng);
        p.w = random_factors(d, k, rng);
        p.value = value_of(p);
        return p;
      },
      [&](Pair& p, Rng&) {
        double value = p.value;
        for (int step = 0; step < cfg.polish_steps; ++step) {
          Pair next = p;
          bool ok = project_right(next.v, mat * next.w.vec(), d);
          ok = ok && project_left(next.v, mat * next.w.vec(), d);
          ok = ok && project_right(next.w, adj * next.v.vec(), d);
          ok = ok && project_left(next.w, adj * next.v.vec(), d);
          if (!ok) break;
          const double nv = value_of(next);
          if (!(nv > value)) break;
          const double gain = nv - value;
          p = std::move(next);
          value = nv;
          if (gain < 1e-14) break;
        }
        return value;
      });
}

namespace {

// Shared driver for the two quadratic-form oracles. `phase_of` picks the
// Hermitian form for the current vector; the objective is `score(v)`.
template <class Score, class Form>
double quadratic_oracle(const BipartiteOperator& x, int k, const OracleConfig& cfg, bool maximize, Score&& score,
                        Form&& form) {
  const Dims d = x.dims();
  struct Vec : Candidate {
    Factors f;
  };
  return sweep(
      cfg, maximize,
      [&](Rng& rng) {
        Vec c;
        c.f = random_factors(d, k, rng);
        c.value = score(c.f.vec());
        return c;
      },
      [&](Vec& c, Rng&) {
        double value = c.value;
        for (int step = 0; step < cfg.polish_steps; ++step) {
          Factors next = c.f;
          quadratic_right(next, form(next.vec()), d, maximize);
          quadratic_left(next, form(next.vec()), d, maximize);
          next.normalize();
          const double nv = score(next.vec());
          const double gain = maximize ? nv - value : value - nv;
          if (!(gain > 0.0)) break;
          c.f = std::move(next);
          value = nv;
          if (gain < 1e-14) break;
        }
        return value;
      });
}

}  // namespace

double brute_block_min(const BipartiteOperator& x, int k, const OracleConfig& cfg) {
  cfg.validate();
  require_k(k, x.dims(), "brute_block_min");
  if (!x.is_hermitian()) throw std::invalid_argument("brute_block_min: operator is not Hermitian");
  const ComplexMatrix h = hermitian_part(x.matrix());
  return quadratic_oracle(
      x, k, cfg, false, [&](const ComplexVector& v) { return expectation(h, v); },
      [&](const ComplexVector&) { return h; });
}

double brute_min_order_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg) {
  cfg.validate();
  require_k(k, x.dims(), "brute_min_order_norm");
  const ComplexMatrix& mat = x.matrix();
  return quadratic_oracle(
      x, k, cfg, true, [&](const ComplexVector& v) { return std::abs(v.dot(mat * v)); },
      [&](const ComplexVector& v) {
        // Rotate so that Re(e^{i t} <v|X|v>) = |<v|X|v>|.
        const Complex val = v.dot(mat * v);
        const Complex phase = std::abs(val) > 0.0 ? std::conj(val) / std::abs(val) : Complex(1.0, 0.0);
        return ComplexMatrix((phase * mat + std::conj(phase) * mat.adjoint()) * 0.5);
      });
}

double brute_omin_norm(const BipartiteOperator& x, int k, const OracleConfig& cfg) {
  cfg.validate();
  const Dims d = x.dims();
  if (k < 1 || k > d.n) throw std::invalid_argument("brute_omin_norm: k out of range");
  const ComplexMatrix& mat = x.matrix();
  struct FrameCand : Candidate {
    ComplexMatrix frame;
  };
  return sweep(
      cfg, true,
      [&](Rng& rng) {
        FrameCand c;
        c.frame = orthonormalize_columns(random_gaussian(d.n, k, rng));
        c.value = frame_singular_value(mat, c.frame, d.m);
        return c;
      },
      [&](FrameCand& c, Rng& rng) {
        double eps = 0.3;
        for (int step = 0; step < cfg.polish_steps && eps > 1e-10; ++step) {
          const ComplexMatrix trial = orthonormalize_columns(c.frame + eps * random_gaussian(d.n, k, rng));
          const double value = frame_singular_value(mat, trial, d.m);
          if (value > c.value) {
            c.frame = trial;
            c.value = value;
            eps *= 1.5;
          } else {
            eps *= 0.7;
          }
        }
        return c.value;
      });
}

double brute_idk_norm(const MapRepr& phi, int k, const OracleConfig& cfg) {
  cfg.validate();
  if (k < 1) throw std::invalid_argument("brute_idk_norm: k must be >= 1");
  const MapRepr adj = phi.adjoint();
  const int dim = k * phi.in_dim();
  struct Unitary : Candidate {
    ComplexMatrix u;
  };
  auto value_of = [&](const ComplexMatrix& u) { return operator_norm(phi.apply_id(k, u)); };
  return sweep(
      cfg, true,
      [&](Rng& rng) {
        Unitary c;
        c.u = random_unitary(dim, rng);
        c.value = value_of(c.u);
        return c;
      },
      [&](Unitary& c, Rng&) {
        double t = 0.5;
        for (int step = 0; step < cfg.polish_steps; ++step) {
          const SingularTriplet top = top_singular_triplet(phi.apply_id(k, c.u));
          // d/dt <v|Phi(U e^{tA})|w> = Re tr(M A), M = G^* U, G = Phi^*(|v><w|).
          const ComplexMatrix g = adj.apply_id(k, top.left * top.right.adjoint());
          const ComplexMatrix mm = g.adjoint() * c.u;
          const ComplexMatrix dir = (mm.adjoint() - mm) * 0.5;
          if (!(dir.norm() > 1e-14)) break;
          bool moved = false;
          for (int h = 0; h < 12; ++h, t *= 0.5) {
            const ComplexMatrix trial = c.u * expm_skew(t * dir);
            const double value = value_of(trial);
            if (value > c.value) {
              const double gain = value - c.value;
              c.u = trial;
              c.value = value;
              moved = gain > 1e-14;
              t *= 2.0;
              break;
            }
          }
          if (!moved) break;
        }
        return c.value;
      });
}

double brute_stabilized_form(const MapRepr& phi, int m, int k, const OracleConfig& cfg) {
  cfg.validate();
  const Dims d{m, phi.out_dim()};
  require_k(k, d, "brute_stabilized_form");
  const MapRepr adj = phi.adjoint();
  struct Vec : Candidate {
    Factors f;
  };
  auto value_of = [&](const Factors& f) { return trace_norm(hermitian_part(adj.apply_id(m, projector(f.vec())))); };
  return sweep(
      cfg, true,
      [&](Rng& rng) {
        Vec c;
        c.f = random_factors(d, k, rng);
        c.value = value_of(c.f);
        return c;
      },
      [&](Vec& c, Rng& rng) {
        double eps = 0.3;
        for (int step = 0; step < cfg.polish_steps && eps > 1e-10; ++step) {
          Factors trial{c.f.a + eps * random_gaussian(d.m, k, rng), c.f.b + eps * random_gaussian(d.n, k, rng)};
          trial.normalize();
          const double value = value_of(trial);
          if (value > c.value) {
            c.f = std::move(trial);
            c.value = value;
            eps *= 1.5;
          } else {
            eps *= 0.7;
          }
        }
        return c.value;
      });
}

}  // namespace schmidt
