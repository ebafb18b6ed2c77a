#pragma once

#include <vector>

#include "qcqp/certificates.hpp"
#include "qcqp/dual_solver.hpp"
#include "qcqp/rng.hpp"

namespace qcqp {

struct CertifyOptions {
  enum class FaceMode { kGeneric, kSoc, kPartition };
  FaceMode mode = FaceMode::kGeneric;

  double tol = 1e-6;             // S-membership + face complementarity tolerance
  double kernel_rel_tol = 1e-6;  // numerical-kernel cutoff for A[f]
  double nullspace_tol = 1e-7;   // rank cutoff for the rounding systems; must
                                 // absorb the O(mu_min) face-extraction error
  double alpha_init = 1.0;       // bidirectional witness check: starting step
  double alpha_min = 1e-6;       // witness rejected below this step
  double curvature_tol = 1e-4;   // PD margin of the boundary Hessian (partition)
};

/// Relative-interior multiplier of the conjugate face F(x,t) at a boundary
/// point, taken from the final barrier iterate of epigraph_height (the
/// central-path proxy for the analytic center of the optimal face). In SOC
/// mode the face-complement slice is exact (the orthogonal complement of the
/// residual ray); otherwise only span(F(x,t)) is available and the
/// description is flagged relaxed.
FaceDescription face_multiplier(const DualSolver& solver, const EpigraphPoint& p,
                                const CertifyOptions& opts = {});

/// Basis of the rounding-direction space at a boundary point:
///   x' in ker(A[f]),  <A[eta] x + b[eta], x'> - t' = 0 for the face slice.
/// Relaxed descriptions yield a superset of the exact rounding space.
RoundingSpace rounding_space(const DualSolver& solver, const EpigraphPoint& p,
                             const FaceDescription& face,
                             const CertifyOptions& opts = {});

/// Convex-hull-point certificate at p. Points of S and epigraph-interior
/// points certify trivially. On the boundary, exact modes (SOC residual ray,
/// partition closed form) can certify or refute; generic mode reports
/// Inconclusive with diagnostics, since the space it can compute is only a
/// superset of the exact rounding space.
Certificate certify_convex_hull_point(const DualSolver& solver,
                                      const EpigraphPoint& p,
                                      const CertifyOptions& opts = {});

struct HullSamplingConfig {
  VectorXd box_lo;
  VectorXd box_hi;
  int samples = 200;
  uint64_t seed = 0;
};

/// Whole-set convex-hull certification by boundary sampling: draw x from the
/// box, lift to (x, tau(x)/2), discard points of S, certify each.
Certificate certify_hull(const DualSolver& solver, const HullSamplingConfig& cfg,
                         const CertifyOptions& opts = {});

/// Certified iff lambda_min(A[gamma*]) >= delta; the recovered minimizer
/// x* = -A[gamma*]^{-1} b[gamma*] is then re-verified: feasible within tol
/// and q_obj(x*) = opt_sdp within tol. Inconclusive when the margin is
/// below delta.
Certificate dual_interior_certificate(const DualSolver& solver,
                                      const DualSolution& sol, double delta,
                                      double tol = 1e-6);

/// Kernel test at gamma in Gamma_P: ObstructionHolds when some kernel vector
/// of A[gamma] has nonzero inner product with b[gamma] (such gamma cannot be
/// a dual maximizer with primal stationarity), KernelOrthogonal otherwise,
/// FullRank when the kernel is empty.
Certificate kernel_obstruction(const DualSolver& solver, const VectorXd& gamma,
                               double tol = 1e-8);

/// Polyhedral-mode convex hull test: the user asserts that the supplied
/// generators span Gamma. For each boundary sample the exposed face is the
/// active generator subset; its relative interior is the normalized sum; the
/// per-face linear system must be nontrivial.
Certificate polyhedral_certify(const DualSolver& solver,
                               const std::vector<Multiplier>& generators,
                               const std::vector<EpigraphPoint>& samples,
                               const CertifyOptions& opts = {});

/// Steepness inequality along delta from gamma:
///   (-b[g+d]^T A[g+d]^{-1} b[g+d]) - (-b[g+2d]^T A[g+2d]^{-1} b[g+2d])
///     <= -|d|_2 sqrt(sum_i c_i^2).
/// Both sides are reported; gamma+delta and gamma+2delta must lie strictly
/// inside Gamma_P.
Certificate steepness_certificate(const DualSolver& solver, const VectorXd& gamma,
                                  const VectorXd& delta);

}  // namespace qcqp
