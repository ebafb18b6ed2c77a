#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcqp/model.hpp"

namespace qcqp {

enum class Verdict { kCertified, kRefuted, kInconclusive };

enum class CertificateKind {
  kConvexHullPoint,
  kDualInterior,
  kKernelObstruction,
  kPolyhedral,
  kSteepness,
};

enum class KernelOutcome { kObstructionHolds, kKernelOrthogonal, kFullRank };

/// Outcome of an exactness test with its witness data. A Certified verdict
/// always carries a witness that re-verifies under the independent checks
/// documented per operation.
struct Certificate {
  Verdict verdict = Verdict::kInconclusive;
  CertificateKind kind = CertificateKind::kConvexHullPoint;

  std::optional<MatrixXd> rounding_basis;  // columns are (x', t') in R^{n+1}
  std::optional<VectorXd> witness_direction;  // verified (x', t')
  std::optional<VectorXd> witness_point;      // e.g. recovered optimizer x*
  std::optional<VectorXd> kernel_vector;
  std::optional<double> margin;
  std::optional<KernelOutcome> kernel_outcome;

  std::map<std::string, double> diagnostics;  // residual norms etc.
  std::string note;
};

const char* to_string(Verdict v);
const char* to_string(CertificateKind k);
const char* to_string(KernelOutcome k);

enum class FaceKind { kSocFace, kPolyhedralFace, kRelIntMultiplier };

/// Description of the conjugate face F(x,t) at a boundary point, carrying a
/// relative-interior multiplier f plus whatever slice of the residual
/// face's orthogonal complement is available. In generic mode only the span
/// of the conjugate face is known, so the resulting rounding space is a
/// superset of the exact one and gets flagged relaxed.
struct FaceDescription {
  FaceKind kind = FaceKind::kRelIntMultiplier;
  VectorXd multiplier_f;  // (1,f) in rint(F(x,t)), projective part

  // Affine slice of the face complement at gamma_obj = 1: the particular
  // point (1,eta0) plus directions (0,d_j).
  VectorXd eta0;
  MatrixXd directions;  // m x k, columns d_j

  bool relaxed = false;
  std::optional<VectorXd> residual_ray;     // SocFace payload
  std::vector<int> active_generators;       // PolyhedralFace payload
};

struct RoundingSpace {
  MatrixXd basis;  // (n+1) x dim, orthonormal columns (x', t')
  bool relaxed = false;

  int dim() const { return static_cast<int>(basis.cols()); }
};

}  // namespace qcqp
