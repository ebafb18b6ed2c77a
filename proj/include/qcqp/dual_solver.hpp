#pragma once

#include <optional>

#include "qcqp/model.hpp"

namespace qcqp {

struct SolverOptions {
  double mu_shrink = 0.2;   // barrier schedule factor, in (0,1)
  double mu_init = 1.0;
  double mu_min = 1e-9;
  double newton_tol = 1e-9;
  int max_outer = 60;
  int max_newton = 50;
  double membership_tol = 1e-6;
};

enum class SolveStatus { kConverged, kUnbounded, kMaxIter };

struct DualSolution {
  double opt_sdp = 0.0;              // d(gamma_star); -inf/+inf via flags below
  Multiplier gamma_star;             // projective
  std::optional<VectorXd> x_star;    // -A[g*]^{-1} b[g*], only when PD margin holds
  VectorXd x_path;                   // minimizer at the last interior iterate
  double lambda_min_at_star = 0.0;
  SolveStatus status = SolveStatus::kMaxIter;
};

struct DualValueResult {
  bool finite = true;  // false means -inf
  double value = 0.0;
  std::optional<VectorXd> minimizer;
};

struct EpigraphHeightResult {
  bool finite = true;  // false means tau = +inf
  double tau = 0.0;    // sup_{gamma in Gamma_P} [gamma, q(x)]
  VectorXd gamma_center;  // final barrier iterate; rel-int proxy of the optimal face
  double mu_final = 0.0;
  SolveStatus status = SolveStatus::kConverged;
};

enum class MembershipLabel { kIn, kOut, kBoundary };

/// Dual-side solver for the SDP relaxation. Holds the instance plus the
/// Assumption-1 search result; all query methods are const and reentrant.
class DualSolver {
 public:
  explicit DualSolver(QcqpInstance inst, SolverOptions opts = {});

  const QcqpInstance& instance() const { return inst_; }
  const SolverOptions& options() const { return opts_; }

  bool assumption_holds() const { return strict_.multiplier.has_value(); }
  /// Strictly feasible projective multiplier; throws AssumptionFailed when
  /// the search stalled (inconclusive, not a disproof).
  const Multiplier& strict_multiplier() const;

  /// d(gamma) = inf_x [gamma, q(x)]. On the PD interior this is
  /// c[gamma] - b[gamma]^T A[gamma]^{-1} b[gamma] with minimizer
  /// -A[gamma]^{-1} b[gamma]; on the PSD boundary the value is -inf when
  /// b[gamma] has a kernel component, else the pseudo-inverse value with the
  /// least-norm stationary point. Throws NotInGammaP.
  DualValueResult dual_value(const VectorXd& gamma) const;

  /// Maximizes d over Gamma_P by a damped-Newton log-det barrier.
  DualSolution solve() const;

  /// tau(x) = sup_{gamma in Gamma_P} [gamma, q(x)], computed with the same
  /// barrier machinery on a linear objective over balls of doubling radius;
  /// +inf when the growth test detects a recession direction with positive
  /// payoff. (x,t) is in S_SDP iff 2t >= tau(x).
  EpigraphHeightResult epigraph_height(const VectorXd& x) const;

  /// Boundary when |2t - tau| <= membership_tol * (1 + |tau|).
  MembershipLabel membership(const EpigraphPoint& p) const;

 private:
  QcqpInstance inst_;
  SolverOptions opts_;
  StrictMultiplierSearch strict_;
};

}  // namespace qcqp
