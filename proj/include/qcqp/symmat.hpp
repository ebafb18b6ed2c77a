#pragma once

#include <Eigen/Dense>

#include "qcqp/errors.hpp"

namespace qcqp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Dense real symmetric matrix. Symmetry is enforced at construction by
/// replacing the input with (M + M^T)/2, so entries(i,j) == entries(j,i)
/// holds exactly.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const MatrixXd& m);
  static SymmetricMatrix Zero(int n) { return SymmetricMatrix(MatrixXd::Zero(n, n)); }
  static SymmetricMatrix Identity(int n) {
    return SymmetricMatrix(MatrixXd::Identity(n, n));
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const MatrixXd& mat() const { return mat_; }
  double operator()(int i, int j) const { return mat_(i, j); }

  double trace() const { return mat_.trace(); }
  double frobenius_norm() const { return mat_.norm(); }

 private:
  MatrixXd mat_;
};

/// Eigendecomposition S = Q diag(lambda) Q^T with eigenvalues ascending and
/// Q orthonormal (columns are eigenvectors).
struct EigenDecomposition {
  VectorXd eigenvalues;
  MatrixXd eigenvectors;

  double lambda_min() const { return eigenvalues(0); }
  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Orthonormal basis of the numerical kernel of a PSD matrix together with
/// the eigenvalue cutoff that was used. The basis may be empty (0 columns).
struct KernelBasis {
  MatrixXd vectors;
  double threshold = 0.0;

  int dim() const { return static_cast<int>(vectors.cols()); }
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Sweeps run until
/// the off-diagonal Frobenius norm falls below 1e-14 * ||S||_F, with a cap of
/// 30 sweeps (hitting the cap throws EigensolverFailure; it indicates an
/// internal bug, not bad input).
EigenDecomposition eigh(const SymmetricMatrix& s, bool with_vectors = true);

double lambda_min(const SymmetricMatrix& s);

/// Tolerance below which a Cholesky pivot is treated as non-positive:
/// 1e-10 * max(1, trace(S)/n).
double pd_tol(const SymmetricMatrix& s);

/// Solves S u = v for positive definite S via Cholesky. Throws
/// NotPositiveDefinite when a pivot falls below pd_tol(S).
VectorXd solve_pd(const SymmetricMatrix& s, const VectorXd& v);

/// In-place Cholesky with an explicit pivot floor. Returns false when some
/// pivot is <= floor (matrix not positive definite at that tolerance).
bool cholesky(const MatrixXd& m, MatrixXd& lower, double pivot_floor);

inline constexpr double kDefaultKernelRelTol = 1e-6;

/// Orthonormal basis of the eigenspace with eigenvalues <= rel_tol *
/// max(1, lambda_max). Requires S to be PSD up to the same tolerance, else
/// throws NotPsd.
KernelBasis kernel_basis(const SymmetricMatrix& s,
                         double rel_tol = kDefaultKernelRelTol);

/// Kronecker lift I_k (x) A: block diagonal with k copies of A.
SymmetricMatrix kron_identity(int k, const SymmetricMatrix& a);

/// Orthonormal basis of the null space of a general (not necessarily square)
/// matrix, via SVD; singular values <= tol * max(1, sigma_max) count as zero.
/// Helper shared by the certifier modules.
MatrixXd nullspace(const MatrixXd& m, double tol = 1e-10);

}  // namespace qcqp
