#include "qcqp/model.hpp"

#include <algorithm>
#include <cmath>

namespace qcqp {

QcqpInstance::QcqpInstance(QuadraticForm objective,
                           std::vector<Constraint> constraints)
    : objective_(std::move(objective)), constraints_(std::move(constraints)) {
  const int n = objective_.dim();
  bool seen_equality = false;
  for (const auto& c : constraints_) {
    if (c.form.dim() != n) {
      throw DimensionMismatch("QcqpInstance: constraint dimension mismatch");
    }
    if (c.sense == ConstraintSense::kEquality) {
      seen_equality = true;
    } else {
      if (seen_equality) {
        throw InvalidInstance(
            "QcqpInstance: inequality constraints must precede equalities");
      }
      ++m_inequality_;
    }
  }
  double s = objective_.A.mat().cwiseAbs().maxCoeff();
  s = std::max(s, objective_.b.size() > 0 ? objective_.b.cwiseAbs().maxCoeff() : 0.0);
  for (const auto& c : constraints_) {
    s = std::max(s, c.form.A.mat().cwiseAbs().maxCoeff());
    if (c.form.b.size() > 0) s = std::max(s, c.form.b.cwiseAbs().maxCoeff());
  }
  scale_ = std::max(1.0, s);
}

double evaluate(const QuadraticForm& f, const VectorXd& x) {
  if (x.size() != f.dim()) {
    throw DimensionMismatch("evaluate: point dimension mismatch");
  }
  return x.dot(f.A.mat() * x) + 2.0 * f.b.dot(x) + f.c;
}

VectorXd residual(const QcqpInstance& inst, const EpigraphPoint& p) {
  VectorXd r(1 + inst.m());
  r(0) = evaluate(inst.objective(), p.x) - 2.0 * p.t;
  for (int i = 0; i < inst.m(); ++i) {
    r(1 + i) = evaluate(inst.constraint(i).form, p.x);
  }
  return r;
}

QuadraticForm aggregate(const QcqpInstance& inst, const Multiplier& w) {
  if (w.gamma.size() != inst.m()) {
    throw DimensionMismatch("aggregate: multiplier length does not match m");
  }
  MatrixXd a = w.gamma_obj * inst.objective().A.mat();
  VectorXd b = w.gamma_obj * inst.objective().b;
  double c = w.gamma_obj * inst.objective().c;
  for (int i = 0; i < inst.m(); ++i) {
    const auto& f = inst.constraint(i).form;
    a += w.gamma(i) * f.A.mat();
    b += w.gamma(i) * f.b;
    c += w.gamma(i) * f.c;
  }
  return QuadraticForm(SymmetricMatrix(a), b, c);
}

QuadraticForm aggregate_projective(const QcqpInstance& inst, const VectorXd& gamma) {
  return aggregate(inst, Multiplier::Projective(gamma));
}

bool gamma_membership(const QcqpInstance& inst, const Multiplier& w, double tol) {
  if (w.gamma_obj < -tol) return false;
  for (int i = 0; i < inst.m_inequality(); ++i) {
    if (w.gamma(i) < -tol) return false;
  }
  EigenDecomposition ed = eigh(aggregate(inst, w).A, /*with_vectors=*/false);
  return ed.lambda_min() >= -tol * std::max(1.0, ed.lambda_max());
}

bool feasible(const QcqpInstance& inst, const VectorXd& x, double tol) {
  for (int i = 0; i < inst.m(); ++i) {
    const double v = evaluate(inst.constraint(i).form, x);
    if (inst.constraint(i).sense == ConstraintSense::kInequality) {
      if (v > tol) return false;
    } else {
      if (std::abs(v) > tol) return false;
    }
  }
  return true;
}

bool in_epigraph_set(const QcqpInstance& inst, const EpigraphPoint& p, double tol) {
  return feasible(inst, p.x, tol) &&
         evaluate(inst.objective(), p.x) <= 2.0 * p.t + tol;
}

namespace {

// lambda_min of A[gamma] together with a unit eigenvector.
std::pair<double, VectorXd> lambda_min_pair(const QcqpInstance& inst,
                                            const VectorXd& gamma) {
  EigenDecomposition ed = eigh(aggregate_projective(inst, gamma).A);
  return {ed.lambda_min(), ed.eigenvectors.col(0)};
}

}  // namespace

StrictMultiplierSearch strictly_feasible_multiplier(const QcqpInstance& inst) {
  const int m = inst.m();
  const double target = 1e-6 * inst.scale();
  constexpr int kMaxIter = 500;

  StrictMultiplierSearch out;
  out.target = target;
  out.lambda_min_achieved = -std::numeric_limits<double>::infinity();

  std::vector<VectorXd> starts;
  starts.push_back(VectorXd::Zero(m));
  for (int i = 0; i < inst.m_inequality(); ++i) {
    VectorXd e = VectorXd::Zero(m);
    e(i) = 1.0;
    starts.push_back(e);
  }

  for (const VectorXd& start : starts) {
    VectorXd gamma = start;
    for (int iter = 0; iter < kMaxIter; ++iter) {
      auto [lmin, v] = lambda_min_pair(inst, gamma);
      out.iterations++;
      out.lambda_min_achieved = std::max(out.lambda_min_achieved, lmin);
      if (lmin >= target) {
        // Keep inequality multipliers strictly positive so the point sits in
        // the interior needed by the sign barriers. The nudge is sized so the
        // induced lambda_min loss stays below target/2.
        VectorXd g = gamma;
        double denom = 1.0;
        for (int i = 0; i < m; ++i) {
          denom = std::max(denom, inst.constraint(i).form.A.mat().norm());
        }
        const double nudge = 0.5 * target / (denom * std::max(1, m));
        for (int i = 0; i < inst.m_inequality(); ++i) {
          g(i) = std::max(g(i), nudge);
        }
        auto [lmin2, v2] = lambda_min_pair(inst, g);
        if (lmin2 >= 0.5 * target) {
          out.multiplier = Multiplier::Projective(g);
          out.lambda_min_achieved = lmin2;
          return out;
        }
        out.multiplier = Multiplier::Projective(gamma);
        out.lambda_min_achieved = lmin;
        return out;
      }
      // Supergradient of gamma -> lambda_min(A[gamma]): <v v^T, A_i>.
      VectorXd g(m);
      for (int i = 0; i < m; ++i) {
        g(i) = v.dot(inst.constraint(i).form.A.mat() * v);
      }
      // Project onto the sign constraints' feasible directions.
      for (int i = 0; i < inst.m_inequality(); ++i) {
        if (gamma(i) <= 0.0 && g(i) < 0.0) g(i) = 0.0;
      }
      const double gnorm2 = g.squaredNorm();
      if (gnorm2 < 1e-30) break;  // stationary without reaching the target
      const double step = (2.0 * target - lmin) / gnorm2;  // Polyak
      gamma += step * g;
      for (int i = 0; i < inst.m_inequality(); ++i) {
        gamma(i) = std::max(gamma(i), 0.0);
      }
    }
  }
  return out;
}

}  // namespace qcqp
