#include <doctest.h>

#include <cmath>

#include "qcqp/oracle.hpp"

using namespace qcqp;

namespace {

QcqpInstance trust_region_1d() {
  MatrixXd ao(1, 1), a1(1, 1);
  ao << 1;
  a1 << 1;
  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix(a1), VectorXd::Zero(1), -1.0),
                  ConstraintSense::kInequality});
  return QcqpInstance(
      QuadraticForm(SymmetricMatrix(ao), (VectorXd(1) << -1).finished(), 0.0),
      std::move(cons));
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("grid_opt on the 1-D trust region") {
  GridSpec spec;
  spec.lower = (VectorXd(1) << -1.5).finished();
  spec.upper = (VectorXd(1) << 1.5).finished();
  spec.points_per_axis = 3001;
  GridResult r = grid_opt(trust_region_1d(), spec);
  REQUIRE(r.feasible_point_found);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(r.argmin(0) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("grid_opt reports infeasible systems") {
  MatrixXd ao(1, 1), a1(1, 1);
  ao << 1;
  a1 << 1;
  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix(a1), VectorXd::Zero(1), 1.0),
                  ConstraintSense::kEquality});
  QcqpInstance inst(QuadraticForm(SymmetricMatrix(ao), VectorXd::Zero(1), 0.0),
                    std::move(cons));
  GridSpec spec;
  spec.lower = (VectorXd(1) << -2).finished();
  spec.upper = (VectorXd(1) << 2).finished();
  spec.points_per_axis = 101;
  spec.feasibility_tol = 1e-3;
  GridResult r = grid_opt(inst, spec);
  CHECK_FALSE(r.feasible_point_found);
  CHECK(std::isinf(r.value));
}

TEST_CASE("grid_opt guards the total size") {
  MatrixXd a = MatrixXd::Identity(6, 6);
  QcqpInstance inst(QuadraticForm(SymmetricMatrix(a), VectorXd::Zero(6), 0.0), {});
  GridSpec spec;
  spec.lower = VectorXd::Constant(6, -1.0);
  spec.upper = VectorXd::Constant(6, 1.0);
  spec.points_per_axis = 101;  // 101^6 > 1e8
  CHECK_THROWS_AS(grid_opt(inst, spec), GridTooLarge);
}

TEST_CASE("grid refinement never increases the value materially") {
  QcqpInstance inst = trust_region_1d();
  GridSpec coarse;
  coarse.lower = (VectorXd(1) << -1.5).finished();
  coarse.upper = (VectorXd(1) << 1.5).finished();
  coarse.points_per_axis = 61;
  GridSpec fine = coarse;
  fine.points_per_axis = 121;  // nested refinement includes the coarse points
  fine.feasibility_tol = coarse.feasibility_tol;
  GridResult rc = grid_opt(inst, coarse);
  GridResult rf = grid_opt(inst, fine);
  REQUIRE(rc.feasible_point_found);
  REQUIRE(rf.feasible_point_found);
  // The finer feasibility tolerance can only shrink the feasible grid set; the
  // value may only increase by the tolerance effect.
  CHECK(rf.value <= rc.value + rc.feasibility_tol_used);
}

TEST_CASE("partition enumeration") {
  CHECK(partition_enumerate(PartitionInstance((VectorXd(3) << 1, 1, 1).finished())) ==
        doctest::Approx(1.0));
  CHECK(partition_enumerate(PartitionInstance((VectorXd(3) << 3, 1, 1).finished())) ==
        doctest::Approx(1.0));
  CHECK(partition_enumerate(PartitionInstance((VectorXd(2) << 1, 1).finished())) ==
        doctest::Approx(0.0));
  VectorXd big = VectorXd::Constant(25, 1.0);
  CHECK_THROWS_AS(partition_enumerate(PartitionInstance(big)), TooLarge);
}

TEST_CASE("fd_gradient_check on a quadratic-in-gamma toy") {
  // q_obj = x^2 - 2x, q_1 = x^2 - 1: d(gamma) = -1/(1+gamma) - gamma is
  // analytic, so central differences match the envelope gradient tightly.
  DualSolver solver(trust_region_1d());
  const double err =
      fd_gradient_check(solver, (VectorXd(1) << 0.5).finished(), 1e-5);
  CHECK(err <= 1e-8);
}

TEST_CASE("fd_gradient_check guards the interior") {
  DualSolver solver(trust_region_1d());
  CHECK_THROWS_AS(
      fd_gradient_check(solver, (VectorXd(1) << 1e-9).finished(), 1e-5),
      NotInterior);
}

TEST_CASE("multistart upper bound dominates the optimum") {
  QcqpInstance inst = trust_region_1d();
  RngStream rng(5, 0);
  MultistartResult r = multistart_upper_bound(inst, 10, rng);
  REQUIRE(r.found);
  CHECK(r.value >= -1.0 - 1e-8);
  CHECK(r.value <= -1.0 + 1e-4);
}

}  // TEST_SUITE
