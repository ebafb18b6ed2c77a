#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcqp/dual_solver.hpp"
#include "qcqp/rng.hpp"

namespace qcqp {

using nlohmann::json;

/// Normalized Gaussian Orthogonal Ensemble: diagonal entries N(0, 1/2n),
/// off-diagonal N(0, 1/4n), symmetric. The spectrum concentrates in [-1, 1].
SymmetricMatrix sample_ngoe(int n, RngStream& rng);

/// Euclidean distance minimization model: objective |x|^2 (A = I, b = 0,
/// c = 0) with m random equality constraints, A_i ~ NGOE(n),
/// b_i ~ N(0, I_n/n), c_i ~ N(0,1).
QcqpInstance gen_edm_instance(int n, int m, RngStream& rng);

/// Semi-random model: quadratic terms A_obj, A_1..A_m ~ NGOE(n); linear and
/// constant terms supplied by the caller (b_eq/c_eq have length m). The unit
/// ball constraint |x|^2 - 1 <= 0 is part of the model; it is stored first
/// (inequalities precede equalities), the m random-quadratic constraints
/// follow as equalities.
QcqpInstance gen_semirandom_instance(int n, int m, RngStream& rng,
                                     const VectorXd& b_obj, double c_obj,
                                     const std::vector<VectorXd>& b_eq,
                                     const std::vector<double>& c_eq);

/// Default stress adversary: b aligned with the top eigenvector of the
/// corresponding quadratic term, c = 1.
QcqpInstance gen_semirandom_default_adversary(int n, int m, RngStream& rng);

/// phi(r) = 2(sqrt(1 - r^2) - 1), the sphere-cap limit of
/// -b[gamma]^T A[gamma]^{-1} b[gamma] on the radius-r multiplier sphere.
double phi(double r);

/// Adaptive-quadrature evaluation of -∫ r^2/(1 + r s) dmu_nsc(s) against the
/// normalized semicircular measure; equals phi(r).
double phi_semicircle_quadrature(double r, double tol = 1e-10);

/// Tabular experiment report: config echo, one row per record, aggregates.
struct ExperimentReport {
  json config;
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json summary;

  /// CSV with a versioned tag line. The timing column ("millis", when
  /// present) is the only non-reproducible column; exclude it to compare
  /// runs byte-for-byte.
  std::string to_csv(bool include_timing = true) const;
};

/// Runs fn(0..count-1) on `workers` threads; callers store results by index
/// so the assembled report does not depend on scheduling.
void run_parallel(int count, int workers, const std::function<void(int)>& fn);

struct ConcentrationConfig {
  int n = 400;
  int m = 2;
  std::vector<double> radii = {0.3, 0.5, 0.8};
  int directions_per_radius = 20;
  uint64_t seed = 0;
  int workers = 1;
};

/// For each radius r and random unit direction scaled to r, samples a fresh
/// EDM-model draw and records lambda_min(A[gamma]) - (1 - r) and
/// (-b[gamma]^T A[gamma]^{-1} b[gamma]) - phi(r).
ExperimentReport concentration_sweep(const ConcentrationConfig& cfg);

struct EdmConfig {
  std::vector<int> n_list = {50, 100, 200};
  int m = 2;
  int trials = 50;
  uint64_t seed = 0;
  double delta = 1e-6;
  int workers = 1;
};

/// Per trial: generate, solve the dual, run the dual-interior certificate;
/// success means Certified with feasibility residual <= 1e-5. The summary
/// reports the success fraction per n.
ExperimentReport edm_exactness_experiment(const EdmConfig& cfg);

struct SemirandomConstruction {
  VectorXd x_tilde;
  VectorXd residuals;   // equality constraint values at x_tilde
  double opt_sdp = 0.0;
  double obj_gap = 0.0; // q_obj(x_tilde) - opt_sdp
  double x_norm = 0.0;
  double tau = 0.0;
  int w_dim = 0;
  bool degenerate = false;
  double orthogonality_residual = 0.0;
};

/// Proof construction for the semi-random model: solve the relaxation for the
/// saddle point x*, normalize the residual into a face direction, take the
/// near-null eigenspace W of the aggregated matrix (eigenvalues in [-eps,eps]),
/// project out the m+2 linear constraints, and move x* to the sphere along the
/// resulting direction. Throws SubspaceTooSmall when dim(W) < m + 3.
SemirandomConstruction semirandom_construction(const DualSolver& solver,
                                               double eps);

struct SemirandomConfig {
  int n = 300;
  int m = 2;
  double eps = 0.25;
  int trials = 20;
  uint64_t seed = 0;
  int workers = 1;
};

ExperimentReport semirandom_experiment(const SemirandomConfig& cfg);

}  // namespace qcqp
