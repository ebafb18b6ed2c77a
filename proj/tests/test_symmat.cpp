#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "qcqp/symmat.hpp"

using namespace qcqp;

namespace {

MatrixXd random_symmetric(int n, std::mt19937& gen) {
  std::normal_distribution<double> dist;
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = dist(gen);
  }
  return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_SUITE("symmat") {

TEST_CASE("eigh 2x2 reflection") {
  MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  EigenDecomposition ed = eigh(SymmetricMatrix(m));
  CHECK(ed.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ed.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigh identity") {
  EigenDecomposition ed = eigh(SymmetricMatrix::Identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(ed.eigenvalues(i) == doctest::Approx(1.0));
  }
  CHECK((ed.eigenvectors.transpose() * ed.eigenvectors -
         MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("eigh 2x2 characteristic polynomial") {
  MatrixXd m(2, 2);
  m << 2, 1, 1, 0;
  EigenDecomposition ed = eigh(SymmetricMatrix(m));
  CHECK(ed.eigenvalues(0) == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ed.eigenvalues(1) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("eigh reconstruction and orthogonality on random matrices") {
  std::mt19937 gen(7);
  for (int n : {2, 5, 11, 24, 40}) {
    for (int rep = 0; rep < 25; ++rep) {
      SymmetricMatrix s(random_symmetric(n, gen));
      EigenDecomposition ed = eigh(s);
      const MatrixXd recon = ed.eigenvectors *
                             ed.eigenvalues.asDiagonal() *
                             ed.eigenvectors.transpose();
      CHECK((recon - s.mat()).norm() <=
            1e-10 * std::max(1.0, s.frobenius_norm()));
      CHECK((ed.eigenvectors.transpose() * ed.eigenvectors -
             MatrixXd::Identity(n, n)).norm() <= 1e-10);
      CHECK(std::is_sorted(ed.eigenvalues.begin(), ed.eigenvalues.end()));

      // Cross-check against an independent solver.
      Eigen::SelfAdjointEigenSolver<MatrixXd> ref(s.mat());
      CHECK((ed.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <
            1e-9 * std::max(1.0, s.frobenius_norm()));
    }
  }
}

TEST_CASE("solve_pd identity and diagonal") {
  VectorXd v(2);
  v << 3, 4;
  CHECK((solve_pd(SymmetricMatrix::Identity(2), v) - v).norm() < 1e-12);

  MatrixXd d(2, 2);
  d << 2, 0, 0, 4;
  VectorXd rhs(2);
  rhs << 2, 4;
  VectorXd u = solve_pd(SymmetricMatrix(d), rhs);
  CHECK(u(0) == doctest::Approx(1.0));
  CHECK(u(1) == doctest::Approx(1.0));
}

TEST_CASE("solve_pd rejects singular matrices") {
  MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  VectorXd v(2);
  v << 1, 0;
  CHECK_THROWS_AS(solve_pd(SymmetricMatrix(m), v), NotPositiveDefinite);
}

TEST_CASE("solve_pd accuracy on random PD systems") {
  std::mt19937 gen(11);
  std::normal_distribution<double> dist;
  for (int n : {3, 10, 30}) {
    MatrixXd g = random_symmetric(n, gen);
    SymmetricMatrix s(g * g.transpose() + MatrixXd::Identity(n, n));
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = dist(gen);
    VectorXd u = solve_pd(s, v);
    CHECK((s.mat() * u - v).norm() <=
          1e-9 * (1.0 + s.mat().operatorNorm()) * v.norm());
  }
}

TEST_CASE("kernel_basis rank-one") {
  MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  KernelBasis kb = kernel_basis(SymmetricMatrix(m));
  REQUIRE(kb.dim() == 1);
  VectorXd expect(2);
  expect << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(kb.vectors.col(0).dot(expect)) - 1.0) < 1e-10);
}

TEST_CASE("kernel_basis full rank and diagonal") {
  CHECK(kernel_basis(SymmetricMatrix::Identity(2)).dim() == 0);

  MatrixXd d = MatrixXd::Zero(3, 3);
  d(2, 2) = 5.0;
  KernelBasis kb = kernel_basis(SymmetricMatrix(d));
  REQUIRE(kb.dim() == 2);
  for (int c = 0; c < 2; ++c) {
    CHECK(std::abs(kb.vectors(2, c)) < 1e-12);
  }
}

TEST_CASE("kernel_basis rejects indefinite input") {
  MatrixXd m(2, 2);
  m << 1, 0, 0, -1;
  CHECK_THROWS_AS(kernel_basis(SymmetricMatrix(m)), NotPsd);
}

TEST_CASE("kernel dimension equals count of small eigenvalues") {
  std::mt19937 gen(3);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 6;
    MatrixXd g = random_symmetric(n, gen);
    // PSD with deliberate rank deficiency 2.
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g * g.transpose());
    VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    vals(0) = 0.0;
    vals(1) = 0.0;
    SymmetricMatrix s(es.eigenvectors() * vals.asDiagonal() *
                      es.eigenvectors().transpose());
    KernelBasis kb = kernel_basis(s);
    EigenDecomposition ed = eigh(s);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (ed.eigenvalues(i) <= kb.threshold) ++count;
    }
    CHECK(kb.dim() == count);
    for (int c = 0; c < kb.dim(); ++c) {
      CHECK((s.mat() * kb.vectors.col(c)).norm() <=
            kb.threshold * (1.0 + ed.lambda_max()));
    }
  }
}

TEST_CASE("kron_identity examples") {
  MatrixXd one(1, 1);
  one << 3;
  SymmetricMatrix k2 = kron_identity(2, SymmetricMatrix(one));
  CHECK(k2.dim() == 2);
  CHECK(k2(0, 0) == 3.0);
  CHECK(k2(1, 1) == 3.0);
  CHECK(k2(0, 1) == 0.0);

  MatrixXd a(2, 2);
  a << 1, 2, 2, -1;
  CHECK((kron_identity(1, SymmetricMatrix(a)).mat() - a).norm() == 0.0);

  MatrixXd flip(2, 2);
  flip << 0, 1, 1, 0;
  EigenDecomposition ed = eigh(kron_identity(2, SymmetricMatrix(flip)));
  CHECK(ed.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(ed.eigenvalues(1) == doctest::Approx(-1.0));
  CHECK(ed.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(ed.eigenvalues(3) == doctest::Approx(1.0));
}

TEST_CASE("kron_identity spectrum is k-fold spectrum") {
  std::mt19937 gen(19);
  SymmetricMatrix a(random_symmetric(3, gen));
  EigenDecomposition base = eigh(a);
  EigenDecomposition lifted = eigh(kron_identity(4, a));
  std::vector<double> expect;
  for (int rep = 0; rep < 4; ++rep) {
    for (int i = 0; i < 3; ++i) expect.push_back(base.eigenvalues(i));
  }
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 12; ++i) {
    CHECK(lifted.eigenvalues(i) == doctest::Approx(expect[i]).epsilon(1e-10));
  }
}

TEST_CASE("symmetrization at construction") {
  MatrixXd m(2, 2);
  m << 1, 2, 0, 1;
  SymmetricMatrix s(m);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 0) == 1.0);
}

}  // TEST_SUITE
