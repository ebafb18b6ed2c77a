#include "qcqp/structured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

QcqpInstance example1_instance() {
  MatrixXd a_obj(2, 2);
  a_obj << 0, 1, 1, 0;
  VectorXd b_obj(2);
  b_obj << 0, -0.5;

  MatrixXd a1(2, 2);
  a1 << 1, 0, 0, -1;
  VectorXd b1(2);
  b1 << -0.5, 0.5;

  MatrixXd a2 = MatrixXd::Identity(2, 2);
  VectorXd b2 = VectorXd::Zero(2);

  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix(a1), b1, -1.0),
                  ConstraintSense::kInequality});
  cons.push_back({QuadraticForm(SymmetricMatrix(a2), b2, -1.0),
                  ConstraintSense::kInequality});
  return QcqpInstance(QuadraticForm(SymmetricMatrix(a_obj), b_obj, -0.25),
                      std::move(cons));
}

bool example1_gamma_membership(double gamma_obj, double gamma1, double gamma2) {
  if (gamma_obj < 0.0 || gamma1 < 0.0 || gamma2 < 0.0) return false;
  return gamma2 >= std::sqrt(gamma_obj * gamma_obj + gamma1 * gamma1);
}

QcqpInstance mixed_binary_instance() {
  const double s2 = std::sqrt(2.0);

  MatrixXd a_obj(2, 2);
  a_obj << 0, 0, 0, 1;

  MatrixXd a1(2, 2);
  a1 << 1, 0, 0, 0;
  VectorXd b1(2);
  b1 << -0.5, 0;

  MatrixXd a2(2, 2);
  a2 << 0, s2 / 2.0, s2 / 2.0, 0;
  VectorXd b2(2);
  b2 << 0, -s2 / 2.0;

  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix(a1), b1, 0.0),
                  ConstraintSense::kEquality});
  cons.push_back({QuadraticForm(SymmetricMatrix(a2), b2, 0.0),
                  ConstraintSense::kEquality});
  return QcqpInstance(QuadraticForm(SymmetricMatrix(a_obj), VectorXd::Zero(2), 0.0),
                      std::move(cons));
}

namespace {

// Residual (l_obj, l_1, l_2) = (q_obj - 2t, q_1, q_2) for the mixed-binary set.
Eigen::Vector3d mixed_binary_residual(double x1, double x2, double t) {
  return {x2 * x2 - 2.0 * t, x1 * (x1 - 1.0), std::sqrt(2.0) * x2 * (x1 - 1.0)};
}

}  // namespace

bool mixed_binary_ssdp(double x1, double x2, double t) {
  const Eigen::Vector3d l = mixed_binary_residual(x1, x2, t);
  const double lhs = -l(0) - l(1);
  const double rhs = std::sqrt((l(0) - l(1)) * (l(0) - l(1)) + 2.0 * l(2) * l(2));
  return lhs >= rhs;
}

bool mixed_binary_perspective(double x1, double x2, double t) {
  return x2 * x2 - 2.0 * t * x1 <= 0.0 && x1 >= 0.0 && x1 <= 1.0;
}

MixedBinaryFaceCase mixed_binary_face_case(double x1, double x2, double t,
                                           double tol) {
  const Eigen::Vector3d l = mixed_binary_residual(x1, x2, t);
  const double scale = 1.0 + l.norm();
  if (l.norm() <= tol * scale) return MixedBinaryFaceCase::kPointInS;
  const double lhs = -l(0) - l(1);
  const double rhs = std::sqrt((l(0) - l(1)) * (l(0) - l(1)) + 2.0 * l(2) * l(2));
  if (lhs < rhs - tol * scale) return MixedBinaryFaceCase::kOutside;
  if (lhs > rhs + tol * scale) return MixedBinaryFaceCase::kConeInterior;
  return MixedBinaryFaceCase::kOneDimFace;
}

MatrixXd mixed_binary_rounding_space(double x1, double x2, double t, double tol) {
  if (mixed_binary_face_case(x1, x2, t, tol) != MixedBinaryFaceCase::kOneDimFace) {
    throw WrongFaceCase(
        "mixed_binary_rounding_space: point is not on a one-dimensional face");
  }
  MatrixXd rows(4, 3);
  rows.row(0) << 2.0 * t, -x2, 0.0;
  rows.row(1) << -x2, x1, 0.0;
  rows.row(2) << t, -x2, x1;
  rows.row(3) << x2 * (x1 - 1.0 + 2.0 * t), -x1 * x1 + x1 - 2.0 * t * x1 - 2.0 * t,
      2.0 * x2;
  return nullspace(rows);
}

QcqpInstance qmp_build(const QmpBlocks& blocks) {
  if (blocks.r < 1 || blocks.k < 1) {
    throw DimensionMismatch("qmp_build: r and k must be >= 1");
  }
  auto lift = [&](const QmpBlock& blk) {
    if (blk.A.dim() != blocks.r || blk.B.rows() != blocks.r ||
        blk.B.cols() != blocks.k) {
      throw DimensionMismatch("qmp_build: block dimensions inconsistent");
    }
    SymmetricMatrix a = kron_identity(blocks.k, blk.A);
    VectorXd b(blocks.r * blocks.k);
    for (int j = 0; j < blocks.k; ++j) {
      b.segment(j * blocks.r, blocks.r) = blk.B.col(j);
    }
    return QuadraticForm(std::move(a), std::move(b), blk.c);
  };
  std::vector<Constraint> cons;
  for (const auto& [blk, sense] : blocks.constraints) {
    cons.push_back({lift(blk), sense});
  }
  return QcqpInstance(lift(blocks.objective), std::move(cons));
}

QmpRoundingCandidates qmp_rounding_direction(const QmpBlocks& blocks,
                                             const QcqpInstance& inst,
                                             const EpigraphPoint& p,
                                             const FaceDescription& face) {
  const int r = blocks.r;
  const int k = blocks.k;
  const int m = inst.m();
  QmpRoundingCandidates out;

  // Aggregate the r x r blocks at the face multiplier.
  MatrixXd ablk = blocks.objective.A.mat();
  for (int i = 0; i < m; ++i) {
    ablk += face.multiplier_f(i) * blocks.constraints[i].first.A.mat();
  }
  KernelBasis kb = kernel_basis(SymmetricMatrix(ablk));
  if (kb.dim() == 0) return out;  // trivial: generic certifier handles it

  // Reshape the point and the B blocks once.
  MatrixXd x_mat(r, k);
  for (int j = 0; j < k; ++j) x_mat.col(j) = p.x.segment(j * r, r);

  auto block_at = [&](double g_obj, const VectorXd& g) {
    MatrixXd a = g_obj * blocks.objective.A.mat();
    MatrixXd b = g_obj * blocks.objective.B;
    for (int i = 0; i < m; ++i) {
      a += g(i) * blocks.constraints[i].first.A.mat();
      b += g(i) * blocks.constraints[i].first.B;
    }
    return std::make_pair(a, b);
  };

  const int n_dirs = static_cast<int>(face.directions.cols());
  for (int yc = 0; yc < kb.dim(); ++yc) {
    const VectorXd y = kb.vectors.col(yc);
    // Equations over (w, t') in R^{k+1}: one row per face-slice vector.
    MatrixXd rows(1 + n_dirs, k + 1);
    {
      auto [a, b] = block_at(1.0, face.eta0);
      rows.block(0, 0, 1, k) = (y.transpose() * (a * x_mat + b));
      rows(0, k) = -1.0;
    }
    for (int d = 0; d < n_dirs; ++d) {
      auto [a, b] = block_at(0.0, face.directions.col(d));
      rows.block(1 + d, 0, 1, k) = (y.transpose() * (a * x_mat + b));
      rows(1 + d, k) = 0.0;
    }
    // The face multiplier carries O(mu_min) extraction error; match it.
    const MatrixXd sol = nullspace(rows, 1e-7);
    for (int c = 0; c < sol.cols(); ++c) {
      const VectorXd w = sol.col(c).head(k);
      if (w.norm() < 1e-12) continue;  // pure-t' solutions are not rounding
      VectorXd x_prime(r * k);
      for (int j = 0; j < k; ++j) x_prime.segment(j * r, r) = w(j) * y;
      out.candidates.emplace_back(std::move(x_prime), sol(k, c));
      if (out.candidates.size() >= 8) return out;
    }
  }
  return out;
}

PartitionInstance::PartitionInstance(VectorXd weights) : a(std::move(weights)) {
  if (a.size() < 2) throw InvalidInstance("partition requires n >= 2");
  for (int i = 0; i < a.size(); ++i) {
    if (!(a(i) > 0.0)) throw InvalidInstance("partition weights must be positive");
  }
}

QcqpInstance partition_build(const PartitionInstance& pi) {
  const int n = pi.n();
  MatrixXd a_obj = pi.a * pi.a.transpose();
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) {
    MatrixXd ai = MatrixXd::Zero(n, n);
    ai(i, i) = 1.0;
    cons.push_back({QuadraticForm(SymmetricMatrix(ai), VectorXd::Zero(n), -1.0),
                    ConstraintSense::kEquality});
  }
  return QcqpInstance(QuadraticForm(SymmetricMatrix(a_obj), VectorXd::Zero(n), 0.0),
                      std::move(cons));
}

double partition_opt_sdp(const PartitionInstance& pi) {
  const double total = pi.a.sum();
  double best = 0.0;
  for (int i = 0; i < pi.n(); ++i) {
    const double v = pi.a(i) - (total - pi.a(i));
    best = std::max(best, v > 0.0 ? v * v : 0.0);
  }
  return best;
}

bool partition_balanced(const PartitionInstance& pi) {
  const double total = pi.a.sum();
  for (int i = 0; i < pi.n(); ++i) {
    if (pi.a(i) > total - pi.a(i)) return false;
  }
  return true;
}

double partition_boundary_function(const PartitionInstance& pi, const VectorXd& x) {
  const int n = pi.n();
  if (x.size() != n) throw DimensionMismatch("partition: x dimension mismatch");
  for (int i = 0; i < n; ++i) {
    if (std::abs(x(i)) > 1.0) return kInf;
  }
  VectorXd radial(n);
  for (int i = 0; i < n; ++i) {
    radial(i) = pi.a(i) * std::sqrt(std::max(0.0, 1.0 - x(i) * x(i)));
  }
  const double total = radial.sum();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = radial(i) - (total - radial(i));
    best = std::max(best, v > 0.0 ? v * v : 0.0);
  }
  const double lin = pi.a.dot(x);
  return lin * lin + best;
}

bool partition_ssdp_membership(const PartitionInstance& pi, const VectorXd& x,
                               double t) {
  const double f = partition_boundary_function(pi, x);
  return f <= 2.0 * t;
}

PartitionWitness partition_nonexactness_witness(const PartitionInstance& pi) {
  const int n = pi.n();
  int top = 0;
  for (int i = 1; i < n; ++i) {
    if (pi.a(i) > pi.a(top)) top = i;
  }
  const double rest = pi.a.sum() - pi.a(top);

  // x_top = 0, every other coordinate at 1 - delta; delta shrinks until the
  // defining inequality of U holds with a factor-2 margin.
  double delta = 0.01;
  while (pi.a(top) <= 2.0 * rest * (2.0 * delta - delta * delta) && delta > 1e-12) {
    delta *= 0.5;
  }

  PartitionWitness w;
  w.x = VectorXd::Constant(n, 1.0 - delta);
  w.x(top) = 0.0;
  w.coordinate = top;
  const double f0 = partition_boundary_function(pi, w.x);
  w.t = 0.5 * f0;

  const double h = 1e-3;
  VectorXd xp = w.x, xm = w.x;
  xp(top) += h;
  xm(top) -= h;
  const double fp = partition_boundary_function(pi, xp);
  const double fm = partition_boundary_function(pi, xm);
  w.second_difference = (fp - 2.0 * f0 + fm) / (h * h);
  return w;
}

}  // namespace qcqp
