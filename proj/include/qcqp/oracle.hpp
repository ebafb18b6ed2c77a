#pragma once

#include <optional>

#include "qcqp/dual_solver.hpp"
#include "qcqp/rng.hpp"
#include "qcqp/structured.hpp"

namespace qcqp {

struct GridSpec {
  VectorXd lower;
  VectorXd upper;
  int points_per_axis = 31;
  std::optional<double> feasibility_tol;  // default: 5*step*max_i(|A_i|*R+|b_i|)

  double step(int axis) const {
    return (upper(axis) - lower(axis)) / (points_per_axis - 1);
  }
};

struct GridResult {
  bool feasible_point_found = false;
  double value = 0.0;  // +inf when no feasible grid point
  VectorXd argmin;
  double feasibility_tol_used = 0.0;
};

/// Brute-force minimum of q_obj over the feasible grid points. Guards the
/// total grid size at 1e8 points (GridTooLarge).
GridResult grid_opt(const QcqpInstance& inst, const GridSpec& spec);

/// Exact minimum of (a^T x)^2 over {-1,1}^n; n <= 24 (TooLarge above).
double partition_enumerate(const PartitionInstance& pi);

/// Central-difference check of the envelope identity
/// d(gamma)/dgamma_i = q_i(x(gamma)) at an interior multiplier. Returns the
/// max relative error over coordinates. Requires lambda_min(A[gamma]) > 10h.
double fd_gradient_check(const DualSolver& solver, const VectorXd& gamma,
                         double h);

struct MultistartResult {
  bool found = false;
  double value = 0.0;  // upper bound on Opt when found
  VectorXd argmin;
};

/// Quadratic-penalty multistart local descent; returns the best point that is
/// feasible within tol. An upper bound only, used beyond the grid dimension
/// cap.
MultistartResult multistart_upper_bound(const QcqpInstance& inst, int starts,
                                        RngStream& rng, double tol = 1e-6,
                                        const std::optional<VectorXd>& hint = {});

}  // namespace qcqp
