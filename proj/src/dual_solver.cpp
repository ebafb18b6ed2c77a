#include "qcqp/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qcqp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// State shared by the barrier objective evaluations at a fixed gamma.
struct IterateData {
  MatrixXd a;       // A[gamma]
  VectorXd b;       // b[gamma]
  double c = 0.0;   // c[gamma]
  MatrixXd lower;   // Cholesky factor of a
  double logdet = 0.0;
};

// Builds A[gamma], b[gamma], c[gamma] without constructing a QuadraticForm.
void assemble(const QcqpInstance& inst, const VectorXd& gamma, MatrixXd& a,
              VectorXd& b, double& c) {
  a = inst.objective().A.mat();
  b = inst.objective().b;
  c = inst.objective().c;
  for (int i = 0; i < inst.m(); ++i) {
    const auto& f = inst.constraint(i).form;
    a += gamma(i) * f.A.mat();
    b += gamma(i) * f.b;
    c += gamma(i) * f.c;
  }
}

bool factorize(const QcqpInstance& inst, const VectorXd& gamma, IterateData& out) {
  assemble(inst, gamma, out.a, out.b, out.c);
  if (!cholesky(out.a, out.lower, 0.0)) return false;
  out.logdet = 0.0;
  for (int i = 0; i < out.a.rows(); ++i) {
    out.logdet += 2.0 * std::log(out.lower(i, i));
  }
  return true;
}

VectorXd chol_solve(const MatrixXd& lower, const VectorXd& v) {
  VectorXd y = lower.triangularView<Eigen::Lower>().solve(v);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

// Objective for the barrier maximization: either the dual function d(gamma)
// or a linear functional <gamma, qvec>.
struct Objective {
  bool linear = false;
  VectorXd qvec;  // linear coefficients (values q_i(x)) when linear

  double value(const VectorXd& gamma, const IterateData& it) const {
    if (linear) return gamma.dot(qvec);
    const VectorXd u = chol_solve(it.lower, it.b);
    return it.c - it.b.dot(u);
  }

  // Fills gradient and Hessian of the objective at gamma.
  void derivatives(const QcqpInstance& inst, const IterateData& it,
                   VectorXd& grad, MatrixXd& hess) const {
    const int m = inst.m();
    if (linear) {
      grad = qvec;
      hess = MatrixXd::Zero(m, m);
      return;
    }
    const VectorXd x = -chol_solve(it.lower, it.b);
    grad.resize(m);
    MatrixXd g(static_cast<int>(x.size()), m);  // columns A_i x + b_i
    for (int i = 0; i < m; ++i) {
      const auto& f = inst.constraint(i).form;
      grad(i) = evaluate(f, x);
      g.col(i) = f.A.mat() * x + f.b;
    }
    const MatrixXd w = it.lower.triangularView<Eigen::Lower>().solve(g);
    hess = -2.0 * (w.transpose() * w);
  }
};

struct BarrierConfig {
  double ball_radius = 0.0;  // 0 disables the ball barrier
};

// Barrier value mu * (logdet A[gamma] + sum_{i<=mI} log gamma_i
//                     [+ log(R^2 - |gamma|^2)]).
bool barrier_terms(const QcqpInstance& inst, const VectorXd& gamma,
                   const IterateData& it, const BarrierConfig& cfg, double& value,
                   VectorXd* grad, MatrixXd* hess) {
  const int m = inst.m();
  value = it.logdet;
  if (grad != nullptr) {
    grad->setZero(m);
    hess->setZero(m, m);
    // log det: grad_i = tr(A^{-1} A_i), hess_ij = -tr(A^{-1}A_i A^{-1}A_j).
    std::vector<MatrixXd> s(m);
    for (int i = 0; i < m; ++i) {
      const MatrixXd& ai = inst.constraint(i).form.A.mat();
      const MatrixXd t = it.lower.triangularView<Eigen::Lower>().solve(ai);
      s[i] = it.lower.triangularView<Eigen::Lower>().solve(t.transpose());
      (*grad)(i) = s[i].trace();
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        const double v = -(s[i].cwiseProduct(s[j].transpose())).sum();
        (*hess)(i, j) = v;
        (*hess)(j, i) = v;
      }
    }
  }
  for (int i = 0; i < inst.m_inequality(); ++i) {
    if (gamma(i) <= 0.0) return false;
    value += std::log(gamma(i));
    if (grad != nullptr) {
      (*grad)(i) += 1.0 / gamma(i);
      (*hess)(i, i) -= 1.0 / (gamma(i) * gamma(i));
    }
  }
  if (cfg.ball_radius > 0.0) {
    const double slack = cfg.ball_radius * cfg.ball_radius - gamma.squaredNorm();
    if (slack <= 0.0) return false;
    value += std::log(slack);
    if (grad != nullptr) {
      *grad += -2.0 / slack * gamma;
      *hess += -2.0 / slack * MatrixXd::Identity(m, m) -
               4.0 / (slack * slack) * (gamma * gamma.transpose());
    }
  }
  return true;
}

bool is_feasible(const QcqpInstance& inst, const VectorXd& gamma,
                 const BarrierConfig& cfg, IterateData& it) {
  for (int i = 0; i < inst.m_inequality(); ++i) {
    if (gamma(i) <= 0.0) return false;
  }
  if (cfg.ball_radius > 0.0 &&
      gamma.squaredNorm() >= cfg.ball_radius * cfg.ball_radius) {
    return false;
  }
  return factorize(inst, gamma, it);
}

struct BarrierResult {
  VectorXd gamma;
  double objective_value = 0.0;
  double mu_final = 0.0;
  bool completed_schedule = false;
  bool unbounded = false;
  bool drifted = false;
};

// Maximizes objective(gamma) + mu * barrier(gamma) over the interior of
// Gamma_P (optionally intersected with a ball), shrinking mu per schedule.
BarrierResult maximize_barrier(const QcqpInstance& inst, const Objective& obj,
                               const VectorXd& gamma0, const SolverOptions& opts,
                               const BarrierConfig& cfg,
                               bool detect_unbounded) {
  const int m = inst.m();
  BarrierResult res;
  res.gamma = gamma0;

  IterateData it;
  if (!is_feasible(inst, res.gamma, cfg, it)) {
    throw NotInGammaP("barrier start point is not strictly feasible");
  }

  double mu = opts.mu_init;
  double prev_stage_value = -kInf;
  double prev_stage_norm = res.gamma.norm();
  int growth_streak = 0;
  const double start_norm = std::max(1.0, prev_stage_norm);

  VectorXd grad_f(m), grad_b(m), grad(m);
  MatrixXd hess_f(m, m), hess_b(m, m);

  // Damped Newton stage at a fixed mu; stops on the Newton decrement.
  auto center = [&](double stage_mu, double tol, int iters) {
    for (int inner = 0; inner < iters; ++inner) {
      double bval;
      barrier_terms(inst, res.gamma, it, cfg, bval, &grad_b, &hess_b);
      obj.derivatives(inst, it, grad_f, hess_f);
      grad = grad_f + stage_mu * grad_b;
      MatrixXd neg_h = -(hess_f + stage_mu * hess_b);

      // neg_h is PSD in exact arithmetic; regularize if the factorization
      // stumbles numerically.
      Eigen::LLT<MatrixXd> llt(neg_h);
      double ridge = 1e-14 * std::max(1.0, neg_h.trace() / std::max(1, m));
      while (llt.info() != Eigen::Success && ridge < 1e30) {
        neg_h += ridge * MatrixXd::Identity(m, m);
        llt.compute(neg_h);
        ridge *= 10.0;
      }
      const VectorXd step = llt.solve(grad);
      const double decrement = grad.dot(step);
      if (decrement <= tol) break;

      const double f0 = obj.value(res.gamma, it) + stage_mu * bval;
      double alpha = 1.0;
      bool moved = false;
      IterateData trial_it;
      for (int bt = 0; bt < 60; ++bt) {
        const VectorXd trial = res.gamma + alpha * step;
        if (is_feasible(inst, trial, cfg, trial_it)) {
          double tbval;
          barrier_terms(inst, trial, trial_it, cfg, tbval, nullptr, nullptr);
          const double f1 = obj.value(trial, trial_it) + stage_mu * tbval;
          if (f1 >= f0 + 0.25 * alpha * decrement) {
            res.gamma = trial;
            it = trial_it;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
  };

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    center(mu, 2.0 * std::max(opts.newton_tol, 1e-3 * mu), opts.max_newton);

    const double value = obj.value(res.gamma, it);
    const double norm = res.gamma.norm();
    if (detect_unbounded) {
      // Numerical blow-up counts as divergence outright.
      if (!std::isfinite(value) || !std::isfinite(norm) || norm > 1e60 ||
          value > 1e60) {
        res.unbounded = true;
        res.mu_final = mu;
        res.objective_value = kInf;
        return res;
      }
      if (value > prev_stage_value + std::max(1.0, std::abs(prev_stage_value)) &&
          norm >= 2.0 * std::max(prev_stage_norm, 1e-8)) {
        ++growth_streak;
      } else {
        growth_streak = 0;
      }
      if (growth_streak >= 3) {
        res.unbounded = true;
        res.mu_final = mu;
        res.objective_value = value;
        return res;
      }
    }
    prev_stage_value = value;
    prev_stage_norm = norm;

    if (mu <= opts.mu_min) {
      // End-game polish: a few more Newton steps at the final mu drive the
      // gradient (for the dual objective, the constraint values at the
      // recovered minimizer) to machine level.
      const double fscale = std::max(1.0, std::abs(value));
      center(mu, 2e-16 * fscale, 25);
      res.completed_schedule = true;
      res.mu_final = mu;
      res.objective_value = obj.value(res.gamma, it);
      res.drifted = res.gamma.norm() > 1e8 * start_norm;
      return res;
    }
    mu = std::max(mu * opts.mu_shrink, opts.mu_min);
  }

  res.mu_final = mu;
  res.objective_value = obj.value(res.gamma, it);
  res.drifted = res.gamma.norm() > 1e8 * start_norm;
  return res;
}

}  // namespace

DualSolver::DualSolver(QcqpInstance inst, SolverOptions opts)
    : inst_(std::move(inst)), opts_(opts),
      strict_(strictly_feasible_multiplier(inst_)) {}

const Multiplier& DualSolver::strict_multiplier() const {
  if (!strict_.multiplier.has_value()) {
    throw AssumptionFailed(
        "no strictly feasible multiplier found (search inconclusive)");
  }
  return *strict_.multiplier;
}

DualValueResult DualSolver::dual_value(const VectorXd& gamma) const {
  if (gamma.size() != inst_.m()) {
    throw DimensionMismatch("dual_value: multiplier length mismatch");
  }
  const double tol = kDefaultMembershipTol;
  if (!gamma_membership(inst_, Multiplier::Projective(gamma), tol)) {
    throw NotInGammaP("dual_value: gamma is not in Gamma_P");
  }
  QuadraticForm agg = aggregate_projective(inst_, gamma);
  DualValueResult out;

  EigenDecomposition ed = eigh(agg.A);
  const double ptol = pd_tol(agg.A);
  if (ed.lambda_min() > ptol) {
    VectorXd x = -solve_pd(agg.A, agg.b);
    out.value = agg.c + agg.b.dot(x);
    out.minimizer = x;
    return out;
  }
  // Singular PSD case: split b along near-kernel and complement.
  const double scale = std::max(1.0, ed.lambda_max());
  const double cut = kDefaultKernelRelTol * scale;
  double kernel_mass = 0.0;
  VectorXd x = VectorXd::Zero(inst_.n());
  double quad = 0.0;
  for (int i = 0; i < inst_.n(); ++i) {
    const double proj = ed.eigenvectors.col(i).dot(agg.b);
    if (ed.eigenvalues(i) <= cut) {
      kernel_mass += proj * proj;
    } else {
      x -= (proj / ed.eigenvalues(i)) * ed.eigenvectors.col(i);
      quad += proj * proj / ed.eigenvalues(i);
    }
  }
  if (std::sqrt(kernel_mass) > tol * (1.0 + agg.b.norm())) {
    out.finite = false;
    out.value = -kInf;
    return out;
  }
  out.value = agg.c - quad;
  out.minimizer = x;  // least-norm stationary point
  return out;
}

DualSolution DualSolver::solve() const {
  const Multiplier& start = strict_multiplier();

  DualSolution sol;
  if (inst_.m() == 0) {
    DualValueResult v = dual_value(VectorXd());
    sol.opt_sdp = v.value;
    sol.gamma_star = Multiplier::Projective(VectorXd());
    sol.x_star = v.minimizer;
    if (v.minimizer) sol.x_path = *v.minimizer;
    sol.lambda_min_at_star = lambda_min(inst_.objective().A);
    sol.status = v.finite ? SolveStatus::kConverged : SolveStatus::kUnbounded;
    return sol;
  }

  Objective obj;  // dual function
  BarrierConfig cfg;
  BarrierResult res = maximize_barrier(inst_, obj, start.gamma, opts_, cfg,
                                       /*detect_unbounded=*/true);
  sol.gamma_star = Multiplier::Projective(res.gamma);
  if (res.unbounded) {
    sol.status = SolveStatus::kUnbounded;
    sol.opt_sdp = kInf;
    sol.lambda_min_at_star = 0.0;
    return sol;
  }

  QuadraticForm agg = aggregate_projective(inst_, res.gamma);
  EigenDecomposition ed = eigh(agg.A, /*with_vectors=*/false);
  sol.lambda_min_at_star = ed.lambda_min();

  DualValueResult v = dual_value(res.gamma);
  sol.opt_sdp = v.value;
  if (v.minimizer) sol.x_path = *v.minimizer;
  if (ed.lambda_min() > pd_tol(agg.A) && v.minimizer) sol.x_star = v.minimizer;
  sol.status = (res.completed_schedule && !res.drifted) ? SolveStatus::kConverged
                                                        : SolveStatus::kMaxIter;
  return sol;
}

EpigraphHeightResult DualSolver::epigraph_height(const VectorXd& x) const {
  if (x.size() != inst_.n()) {
    throw DimensionMismatch("epigraph_height: point dimension mismatch");
  }
  const Multiplier& start = strict_multiplier();
  const double qobj = evaluate(inst_.objective(), x);

  EpigraphHeightResult out;
  if (inst_.m() == 0) {
    out.tau = qobj;
    out.gamma_center = VectorXd();
    return out;
  }

  Objective obj;
  obj.linear = true;
  obj.qvec.resize(inst_.m());
  for (int i = 0; i < inst_.m(); ++i) {
    obj.qvec(i) = evaluate(inst_.constraint(i).form, x);
  }

  BarrierConfig cfg;
  cfg.ball_radius = std::max(2.0, 4.0 * start.gamma.norm());
  VectorXd gamma0 = start.gamma;
  double prev_value = -kInf;
  double prev_growth = kInf;
  int growth_streak = 0;
  const double scale = 1.0 + std::abs(qobj) + obj.qvec.cwiseAbs().sum();

  // The ball-constrained value is concave and nondecreasing in the radius:
  // it either flattens out (finite sup) or its per-doubling growth keeps
  // expanding geometrically (a recession direction with positive payoff).
  for (int round = 0; round < 44; ++round) {
    BarrierResult res =
        maximize_barrier(inst_, obj, gamma0, opts_, cfg, /*detect_unbounded=*/false);
    const double value = qobj + res.gamma.dot(obj.qvec);
    const bool interior = res.gamma.norm() <= 0.6 * cfg.ball_radius;
    const bool flat =
        round > 0 && value <= prev_value + 1e-9 * (1.0 + std::abs(value));
    if (interior || flat) {
      out.tau = value;
      out.gamma_center = res.gamma;
      out.mu_final = res.mu_final;
      out.status = res.completed_schedule ? SolveStatus::kConverged
                                          : SolveStatus::kMaxIter;
      return out;
    }
    if (!std::isfinite(value) || value > 1e10 * scale) break;
    const double growth = value - prev_value;
    const bool material = growth >= 1e-6 * (1.0 + std::abs(value));
    if (round >= 2 && material && growth >= 1.25 * prev_growth) {
      if (++growth_streak >= 3) break;
    } else if (round >= 2) {
      growth_streak = 0;
    }
    prev_value = value;
    prev_growth = growth;
    gamma0 = res.gamma;
    cfg.ball_radius *= 2.0;
  }
  out.finite = false;
  out.tau = kInf;
  out.gamma_center = gamma0;
  out.status = SolveStatus::kUnbounded;
  return out;
}

MembershipLabel DualSolver::membership(const EpigraphPoint& p) const {
  EpigraphHeightResult h = epigraph_height(p.x);
  if (!h.finite) return MembershipLabel::kOut;
  const double two_t = 2.0 * p.t;
  if (std::abs(two_t - h.tau) <= opts_.membership_tol * (1.0 + std::abs(h.tau))) {
    return MembershipLabel::kBoundary;
  }
  return two_t > h.tau ? MembershipLabel::kIn : MembershipLabel::kOut;
}

}  // namespace qcqp
