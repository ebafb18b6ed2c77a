#pragma once

#include <utility>
#include <vector>

#include "qcqp/certificates.hpp"
#include "qcqp/model.hpp"

namespace qcqp {

// ---------------------------------------------------------------------------
// Worked example: two inequality constraints over R^2 whose multiplier cone
// is a second-order cone in closed form.
//   q_obj = 2 x1 x2 - x2 - 1/4
//   q_1   = x1^2 - x2^2 - x1 + x2 - 1  (<= 0)
//   q_2   = x1^2 + x2^2 - 1            (<= 0)
// ---------------------------------------------------------------------------

QcqpInstance example1_instance();

/// Closed-form membership: gamma_2 >= sqrt(gamma_obj^2 + gamma_1^2) together
/// with gamma_obj, gamma_1, gamma_2 >= 0.
bool example1_gamma_membership(double gamma_obj, double gamma1, double gamma2);

// ---------------------------------------------------------------------------
// Mixed-binary on-off set:
//   q_obj = x2^2,  q_1 = x1(x1 - 1) = 0,  q_2 = sqrt(2) x2 (x1 - 1) = 0.
// Both Gamma and its polar are rotated second-order cones.
// ---------------------------------------------------------------------------

QcqpInstance mixed_binary_instance();

/// SOC membership formula for S_SDP:
/// -(q_obj - 2t) - q_1 >= sqrt((q_obj - 2t - q_1)^2 + 2 q_2^2).
bool mixed_binary_ssdp(double x1, double x2, double t);

/// Perspective-set membership: x2^2 - 2 t x1 <= 0 and 0 <= x1 <= 1.
bool mixed_binary_perspective(double x1, double x2, double t);

enum class MixedBinaryFaceCase {
  kPointInS,      // zero residual
  kConeInterior,  // residual in the interior of the polar cone
  kOneDimFace,    // residual on a one-dimensional face
  kOutside,       // residual not in the polar cone
};

MixedBinaryFaceCase mixed_binary_face_case(double x1, double x2, double t,
                                           double tol = 1e-9);

/// Orthonormal basis of the rounding space for the one-dimensional-face case: the
/// orthogonal complement of the four defining vectors
///   (2t,-x2,0), (-x2,x1,0), (t,-x2,x1),
///   (x2(x1-1+2t), -x1^2+x1-2tx1-2t, 2x2).
/// Throws WrongFaceCase unless the point is on a one-dimensional face.
MatrixXd mixed_binary_rounding_space(double x1, double x2, double t,
                                     double tol = 1e-9);

// ---------------------------------------------------------------------------
// Quadratic matrix programs: forms tr(X^T A X) + 2 tr(B^T X) + c over
// X in R^{r x k}, i.e. QCQPs whose matrices are I_k (x) A.
// ---------------------------------------------------------------------------

struct QmpBlock {
  SymmetricMatrix A = SymmetricMatrix::Zero(1);  // r x r
  MatrixXd B;                                    // r x k
  double c = 0.0;
};

struct QmpBlocks {
  int r = 0;
  int k = 0;
  QmpBlock objective;
  std::vector<std::pair<QmpBlock, ConstraintSense>> constraints;
};

/// Vectorized instance: A_i = I_k (x) blocks.A_i, b_i = vec(B_i)
/// (column-stacked), dimension n = r*k.
QcqpInstance qmp_build(const QmpBlocks& blocks);

struct QmpRoundingCandidates {
  // Candidate rounding directions (x', t'); empty means ker of the
  // aggregated block is trivial (fall back to the generic certifier).
  std::vector<std::pair<VectorXd, double>> candidates;
  bool trivial() const { return candidates.empty(); }
};

/// Builds rounding directions x' = w (x) y with y in ker(A_blocks[f]) and
/// (w,t') solving the <= m homogeneous equations induced by the face slice.
/// A nonzero solution exists whenever k + 1 exceeds the number of equations.
QmpRoundingCandidates qmp_rounding_direction(const QmpBlocks& blocks,
                                             const QcqpInstance& inst,
                                             const EpigraphPoint& p,
                                             const FaceDescription& face);

// ---------------------------------------------------------------------------
// Partition problem: minimize (a^T x)^2 subject to x_i^2 = 1.
// ---------------------------------------------------------------------------

struct PartitionInstance {
  VectorXd a;

  explicit PartitionInstance(VectorXd weights);
  int n() const { return static_cast<int>(a.size()); }
};

QcqpInstance partition_build(const PartitionInstance& pi);

/// Closed form Opt_SDP = max_i (a_i - sum_{j != i} a_j)_+^2.
double partition_opt_sdp(const PartitionInstance& pi);

/// a is balanced when a_i <= sum_{j != i} a_j for all i; equivalent to
/// Opt_SDP = 0.
bool partition_balanced(const PartitionInstance& pi);

/// Boundary function
/// f(x) = (a^T x)^2 + max_i (a_i sqrt(1-x_i^2) - sum_{j!=i} a_j sqrt(1-x_j^2))_+^2
/// for x in [-1,1]^n; +inf outside the box.
double partition_boundary_function(const PartitionInstance& pi, const VectorXd& x);

/// (x,t) in S_SDP iff x in [-1,1]^n and f(x) <= 2t.
bool partition_ssdp_membership(const PartitionInstance& pi, const VectorXd& x,
                               double t);

struct PartitionWitness {
  VectorXd x;                     // point in the open set U
  double t = 0.0;                 // boundary lift, t = f(x)/2
  double second_difference = 0.0; // second-difference quotient of f along x_1
  int coordinate = 0;             // differencing coordinate
};

/// Witness that the SDP epigraph is not polyhedral: a point where the
/// boundary function has a nonzero second difference along a coordinate, so
/// the boundary cannot be piecewise linear while conv(S) is a polytope lift.
PartitionWitness partition_nonexactness_witness(const PartitionInstance& pi);

}  // namespace qcqp
