#include "qcqp/symmat.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qcqp {

SymmetricMatrix::SymmetricMatrix(const MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch("SymmetricMatrix requires a square matrix, n >= 1");
  }
  mat_ = 0.5 * (m + m.transpose());
}

namespace {

double offdiag_norm(const MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q), updating a symmetrically and
// accumulating the rotation into q_acc when present.
void jacobi_rotate(MatrixXd& a, MatrixXd* q_acc, int p, int q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e20) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const int n = static_cast<int>(a.rows());
  const double app = a(p, p);
  const double aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = akp - s * (akq + tau * akp);
    a(p, k) = a(k, p);
    a(k, q) = akq + s * (akp - tau * akq);
    a(q, k) = a(k, q);
  }
  if (q_acc != nullptr) {
    MatrixXd& v = *q_acc;
    for (int k = 0; k < n; ++k) {
      const double vkp = v(k, p);
      const double vkq = v(k, q);
      v(k, p) = vkp - s * (vkq + tau * vkp);
      v(k, q) = vkq + s * (vkp - tau * vkq);
    }
  }
}

}  // namespace

EigenDecomposition eigh(const SymmetricMatrix& s, bool with_vectors) {
  const int n = s.dim();
  MatrixXd a = s.mat();
  MatrixXd q;
  if (with_vectors) q = MatrixXd::Identity(n, n);

  const double fnorm = a.norm();
  const double stop = 1e-14 * fnorm;
  constexpr int kMaxSweeps = 30;

  if (n > 1 && fnorm > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_norm(a) <= stop) {
        converged = true;
        break;
      }
      for (int p = 0; p < n - 1; ++p) {
        for (int qq = p + 1; qq < n; ++qq) {
          if (std::abs(a(p, qq)) > 0.0) {
            jacobi_rotate(a, with_vectors ? &q : nullptr, p, qq);
          }
        }
      }
    }
    if (!converged && offdiag_norm(a) > stop) {
      throw EigensolverFailure("Jacobi sweep cap reached without convergence");
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) out.eigenvalues(i) = a(order[i], order[i]);
  if (with_vectors) {
    out.eigenvectors.resize(n, n);
    for (int i = 0; i < n; ++i) out.eigenvectors.col(i) = q.col(order[i]);
  }
  return out;
}

double lambda_min(const SymmetricMatrix& s) {
  return eigh(s, /*with_vectors=*/false).lambda_min();
}

double pd_tol(const SymmetricMatrix& s) {
  return 1e-10 * std::max(1.0, s.trace() / s.dim());
}

bool cholesky(const MatrixXd& m, MatrixXd& lower, double pivot_floor) {
  const int n = static_cast<int>(m.rows());
  lower = MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (d <= pivot_floor) return false;
    lower(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (int k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k);
      lower(i, j) = v / lower(j, j);
    }
  }
  return true;
}

VectorXd solve_pd(const SymmetricMatrix& s, const VectorXd& v) {
  if (v.size() != s.dim()) {
    throw DimensionMismatch("solve_pd: vector length does not match matrix");
  }
  MatrixXd lower;
  if (!cholesky(s.mat(), lower, pd_tol(s))) {
    throw NotPositiveDefinite("solve_pd: Cholesky pivot below pd_tol");
  }
  VectorXd y = lower.triangularView<Eigen::Lower>().solve(v);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

KernelBasis kernel_basis(const SymmetricMatrix& s, double rel_tol) {
  EigenDecomposition ed = eigh(s);
  const double scale = std::max(1.0, ed.lambda_max());
  const double threshold = rel_tol * scale;
  if (ed.lambda_min() < -threshold) {
    throw NotPsd("kernel_basis: matrix is not PSD at the given tolerance");
  }
  int k = 0;
  while (k < s.dim() && ed.eigenvalues(k) <= threshold) ++k;
  KernelBasis out;
  out.threshold = threshold;
  out.vectors = ed.eigenvectors.leftCols(k);
  return out;
}

SymmetricMatrix kron_identity(int k, const SymmetricMatrix& a) {
  if (k < 1) throw DimensionMismatch("kron_identity: k must be >= 1");
  const int r = a.dim();
  MatrixXd out = MatrixXd::Zero(k * r, k * r);
  for (int b = 0; b < k; ++b) out.block(b * r, b * r, r, r) = a.mat();
  return SymmetricMatrix(out);
}

MatrixXd nullspace(const MatrixXd& m, double tol) {
  if (m.rows() == 0) {
    // No constraints: the whole space.
    return MatrixXd::Identity(m.cols(), m.cols());
  }
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace qcqp
