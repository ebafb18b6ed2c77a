#include "qcqp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qcqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GridResult grid_opt(const QcqpInstance& inst, const GridSpec& spec) {
  const int n = inst.n();
  if (spec.lower.size() != n || spec.upper.size() != n) {
    throw DimensionMismatch("grid_opt: box dimension mismatch");
  }
  const int p = spec.points_per_axis;
  if (p < 2) throw GridTooLarge("grid_opt: need at least 2 points per axis");
  double total = 1.0;
  for (int i = 0; i < n; ++i) {
    if (!(spec.lower(i) < spec.upper(i))) {
      throw InvalidInstance("grid_opt: lower must be < upper");
    }
    total *= p;
    if (total > 1e8) throw GridTooLarge("grid_opt: grid exceeds 1e8 points");
  }

  double tol;
  if (spec.feasibility_tol) {
    tol = *spec.feasibility_tol;
  } else {
    double max_step = 0.0;
    VectorXd corner(n);
    for (int i = 0; i < n; ++i) {
      max_step = std::max(max_step, spec.step(i));
      corner(i) = std::max(std::abs(spec.lower(i)), std::abs(spec.upper(i)));
    }
    const double radius = corner.norm();
    double lip = 0.0;
    for (int i = 0; i < inst.m(); ++i) {
      const auto& f = inst.constraint(i).form;
      lip = std::max(lip, f.A.mat().operatorNorm() * radius + f.b.norm());
    }
    tol = 5.0 * max_step * lip;
  }

  GridResult out;
  out.value = kInf;
  out.feasibility_tol_used = tol;
  std::vector<int> idx(n, 0);
  VectorXd x(n);
  const long long count = static_cast<long long>(std::llround(std::pow(p, n)));
  for (long long it = 0; it < count; ++it) {
    for (int i = 0; i < n; ++i) {
      x(i) = spec.lower(i) + idx[i] * spec.step(i);
    }
    if (feasible(inst, x, tol)) {
      const double v = evaluate(inst.objective(), x);
      if (v < out.value) {
        out.value = v;
        out.argmin = x;
        out.feasible_point_found = true;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (++idx[i] < p) break;
      idx[i] = 0;
    }
  }
  return out;
}

double partition_enumerate(const PartitionInstance& pi) {
  const int n = pi.n();
  if (n > 24) throw TooLarge("partition_enumerate: n > 24");
  double best = kInf;
  const uint64_t limit = 1ULL << n;
  for (uint64_t mask = 0; mask < limit; ++mask) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += (mask >> i) & 1 ? pi.a(i) : -pi.a(i);
    }
    best = std::min(best, s * s);
  }
  return best;
}

double fd_gradient_check(const DualSolver& solver, const VectorXd& gamma,
                         double h) {
  const QcqpInstance& inst = solver.instance();
  QuadraticForm agg = aggregate_projective(inst, gamma);
  if (lambda_min(agg.A) <= 10.0 * h) {
    throw NotInterior("fd_gradient_check: multiplier too close to the boundary");
  }
  for (int i = 0; i < inst.m_inequality(); ++i) {
    if (gamma(i) <= 10.0 * h) {
      throw NotInterior("fd_gradient_check: sign constraint too close");
    }
  }
  DualValueResult base = solver.dual_value(gamma);
  if (!base.finite || !base.minimizer) {
    throw NotInterior("fd_gradient_check: dual value not differentiable here");
  }
  double worst = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    VectorXd gp = gamma, gm = gamma;
    gp(i) += h;
    gm(i) -= h;
    const double dp = solver.dual_value(gp).value;
    const double dm = solver.dual_value(gm).value;
    const double fd = (dp - dm) / (2.0 * h);
    const double analytic = evaluate(inst.constraint(i).form, *base.minimizer);
    const double rel = std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
    worst = std::max(worst, rel);
  }
  return worst;
}

namespace {

double penalty_value(const QcqpInstance& inst, const VectorXd& x, double rho) {
  double v = evaluate(inst.objective(), x);
  for (int i = 0; i < inst.m(); ++i) {
    const double q = evaluate(inst.constraint(i).form, x);
    const double viol =
        inst.constraint(i).sense == ConstraintSense::kEquality ? q : std::max(0.0, q);
    v += rho * viol * viol;
  }
  return v;
}

VectorXd penalty_gradient(const QcqpInstance& inst, const VectorXd& x, double rho) {
  VectorXd g = 2.0 * (inst.objective().A.mat() * x + inst.objective().b);
  for (int i = 0; i < inst.m(); ++i) {
    const auto& f = inst.constraint(i).form;
    const double q = evaluate(f, x);
    const double viol =
        inst.constraint(i).sense == ConstraintSense::kEquality ? q : std::max(0.0, q);
    if (viol != 0.0) {
      g += rho * 2.0 * viol * 2.0 * (f.A.mat() * x + f.b);
    }
  }
  return g;
}

// Gradient descent with backtracking on the penalty function.
VectorXd penalty_descent(const QcqpInstance& inst, VectorXd x, double rho,
                         int iters) {
  double step = 1.0;
  double fx = penalty_value(inst, x, rho);
  for (int it = 0; it < iters; ++it) {
    const VectorXd g = penalty_gradient(inst, x, rho);
    const double gn = g.norm();
    if (gn < 1e-12) break;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const VectorXd trial = x - step * g;
      const double ft = penalty_value(inst, trial, rho);
      if (ft < fx - 1e-4 * step * gn * gn) {
        x = trial;
        fx = ft;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

MultistartResult multistart_upper_bound(const QcqpInstance& inst, int starts,
                                        RngStream& rng, double tol,
                                        const std::optional<VectorXd>& hint) {
  MultistartResult out;
  out.value = kInf;
  std::vector<VectorXd> inits;
  if (hint) inits.push_back(*hint);
  for (int s = 0; s < starts; ++s) {
    VectorXd x(inst.n());
    for (int i = 0; i < inst.n(); ++i) x(i) = rng.normal();
    inits.push_back(x);
  }
  auto consider = [&](const VectorXd& x) {
    if (feasible(inst, x, tol)) {
      const double v = evaluate(inst.objective(), x);
      if (v < out.value) {
        out.value = v;
        out.argmin = x;
        out.found = true;
      }
    }
  };
  for (const VectorXd& x0 : inits) {
    consider(x0);
    VectorXd x = x0;
    for (double rho : {1e1, 1e3, 1e5, 1e7, 1e9}) {
      x = penalty_descent(inst, x, rho, 400);
    }
    consider(x);
  }
  return out;
}

}  // namespace qcqp
