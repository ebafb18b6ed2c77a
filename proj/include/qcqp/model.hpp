#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcqp/symmat.hpp"

namespace qcqp {

/// q(x) = x^T A x + 2 b^T x + c.
struct QuadraticForm {
  SymmetricMatrix A;
  VectorXd b;
  double c = 0.0;

  QuadraticForm(SymmetricMatrix a, VectorXd b_in, double c_in)
      : A(std::move(a)), b(std::move(b_in)), c(c_in) {
    if (b.size() != A.dim()) {
      throw DimensionMismatch("QuadraticForm: b length does not match A");
    }
  }

  int dim() const { return A.dim(); }
};

enum class ConstraintSense { kInequality, kEquality };  // <= 0 | == 0

struct Constraint {
  QuadraticForm form;
  ConstraintSense sense;
};

/// A multiplier point (gamma_obj, gamma). Projective multipliers fix
/// gamma_obj = 1.
struct Multiplier {
  double gamma_obj = 1.0;
  VectorXd gamma;

  Multiplier() = default;
  Multiplier(double g_obj, VectorXd g) : gamma_obj(g_obj), gamma(std::move(g)) {}
  static Multiplier Projective(VectorXd g) { return Multiplier(1.0, std::move(g)); }
};

struct EpigraphPoint {
  VectorXd x;
  double t = 0.0;
};

/// QCQP instance: objective plus ordered constraints, inequalities first
/// (indices 1..m_I), then equalities (m_I+1..m).
class QcqpInstance {
 public:
  QcqpInstance(QuadraticForm objective, std::vector<Constraint> constraints);

  int n() const { return objective_.dim(); }
  int m() const { return static_cast<int>(constraints_.size()); }
  int m_inequality() const { return m_inequality_; }
  int m_equality() const { return m() - m_inequality_; }

  const QuadraticForm& objective() const { return objective_; }
  const Constraint& constraint(int i) const { return constraints_.at(i); }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Characteristic magnitude of the quadratic forms; used to scale
  /// tolerances.
  double scale() const { return scale_; }

 private:
  QuadraticForm objective_;
  std::vector<Constraint> constraints_;
  int m_inequality_ = 0;
  double scale_ = 1.0;
};

double evaluate(const QuadraticForm& f, const VectorXd& x);

/// Residual q(x) - 2t e_obj in R^{1+m}: component 0 is q_obj(x) - 2t,
/// component i is q_i(x).
VectorXd residual(const QcqpInstance& inst, const EpigraphPoint& p);

/// Aggregated form (A(gamma_obj,gamma), b(...), c(...)); linear in the
/// multiplier.
QuadraticForm aggregate(const QcqpInstance& inst, const Multiplier& w);

/// Projective aggregation A[gamma], b[gamma], c[gamma].
QuadraticForm aggregate_projective(const QcqpInstance& inst, const VectorXd& gamma);

inline constexpr double kDefaultMembershipTol = 1e-8;

/// Membership in Gamma: lambda_min(A(w)) >= -tol * max(1, lambda_max) and the
/// sign constraints gamma_obj >= -tol, gamma_i >= -tol for i <= m_I.
bool gamma_membership(const QcqpInstance& inst, const Multiplier& w,
                      double tol = kDefaultMembershipTol);

/// Feasibility of x for the constraints: q_i(x) <= tol for inequalities and
/// |q_i(x)| <= tol for equalities.
bool feasible(const QcqpInstance& inst, const VectorXd& x, double tol);

/// Whether (x,t) belongs to the epigraph set S (constraint feasibility plus
/// q_obj(x) <= 2t), all within tol.
bool in_epigraph_set(const QcqpInstance& inst, const EpigraphPoint& p, double tol);

struct StrictMultiplierSearch {
  std::optional<Multiplier> multiplier;  // projective, strict when present
  double lambda_min_achieved = 0.0;
  double target = 0.0;
  int iterations = 0;
};

/// Searches for a projective gamma* with A[gamma*] > 0 (Assumption 1) by
/// supergradient ascent on the concave map gamma -> lambda_min(A[gamma]),
/// Polyak steps toward the target delta_strict = 1e-6 * scale, iteration cap
/// 500, multi-started from 0 and from e_i for i <= m_I. A failed search is
/// inconclusive, not a disproof.
StrictMultiplierSearch strictly_feasible_multiplier(const QcqpInstance& inst);

}  // namespace qcqp
