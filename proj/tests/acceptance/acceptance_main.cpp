// Acceptance suite: one self-contained check per criterion, each printing a
// single pass/fail line with its runtime and headline numbers. Run with no
// arguments for the full suite or with a list of criterion numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcqp/certifier.hpp"
#include "qcqp/dual_solver.hpp"
#include "qcqp/json_io.hpp"
#include "qcqp/oracle.hpp"
#include "qcqp/random_experiments.hpp"
#include "qcqp/structured.hpp"

using namespace qcqp;

namespace {

struct Budget {
  double seconds;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using CriterionFn = std::function<Outcome()>;

// --- 1: worked-example cone equivalence -------------------------------------

Outcome criterion1() {
  QcqpInstance inst = example1_instance();
  std::mt19937 gen(101);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int compared = 0, skipped = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const double go = u(gen), g1 = u(gen), g2 = u(gen);
    // Margin band 1e-9 around every defining surface of the closed form.
    const double slack = g2 - std::sqrt(go * go + g1 * g1);
    if (std::abs(slack) < 1e-9 || std::abs(go) < 1e-9 || std::abs(g1) < 1e-9 ||
        std::abs(g2) < 1e-9) {
      ++skipped;
      continue;
    }
    const bool closed = example1_gamma_membership(go, g1, g2);
    const bool eig = gamma_membership(
        inst, Multiplier(go, (VectorXd(2) << g1, g2).finished()), 1e-9);
    if (closed != eig) {
      std::ostringstream ss;
      ss << "disagreement at (" << go << "," << g1 << "," << g2 << ")";
      return {false, ss.str()};
    }
    ++compared;
  }
  std::ostringstream ss;
  ss << compared << " samples agreed (" << skipped << " in the margin band)";
  return {true, ss.str()};
}

// --- 2: mixed-binary triple agreement + rounding directions -----------------

bool mixed_binary_ssdp_with_slack(double x1, double x2, double t, double tol) {
  const double l0 = x2 * x2 - 2.0 * t;
  const double l1 = x1 * (x1 - 1.0);
  const double l2 = std::sqrt(2.0) * x2 * (x1 - 1.0);
  const double lhs = -l0 - l1;
  const double rhs = std::sqrt((l0 - l1) * (l0 - l1) + 2.0 * l2 * l2);
  return lhs >= rhs - tol;
}

Outcome criterion2() {
  DualSolver solver(mixed_binary_instance());
  std::mt19937 gen(202);
  std::uniform_real_distribution<double> u(-1.0, 2.0);

  int compared = 0, band = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const double x1 = u(gen), x2 = u(gen), t = u(gen);
    const bool soc = mixed_binary_ssdp(x1, x2, t);
    const bool persp = mixed_binary_perspective(x1, x2, t);
    if (soc != persp) {
      return {false, "SOC and perspective formulas disagree"};
    }
    MembershipLabel label =
        solver.membership({(VectorXd(2) << x1, x2).finished(), t});
    if (label == MembershipLabel::kBoundary) {
      ++band;  // inside the +-1e-6 margin band
      continue;
    }
    if (soc != (label == MembershipLabel::kIn)) {
      std::ostringstream ss;
      ss << "dual solver disagrees at (" << x1 << "," << x2 << "," << t << ")";
      return {false, ss.str()};
    }
    ++compared;
  }

  // Rounding directions on 10^3 boundary samples.
  std::uniform_real_distribution<double> ux1(0.05, 0.95);
  std::uniform_real_distribution<double> ux2(-0.95, 0.95);
  int verified = 0, sampled = 0;
  while (sampled < 1000) {
    const double x1 = ux1(gen);
    const double x2 = ux2(gen);
    const double t = 0.5 * x2 * x2 / x1;
    if (mixed_binary_face_case(x1, x2, t) != MixedBinaryFaceCase::kOneDimFace) {
      continue;
    }
    ++sampled;
    MatrixXd basis = mixed_binary_rounding_space(x1, x2, t);
    if (basis.cols() == 0) continue;
    bool ok = false;
    for (int c = 0; c < basis.cols() && !ok; ++c) {
      const double n1 = basis.col(c).head(2).norm();
      if (n1 < 1e-12) continue;
      double alpha = 0.5;
      while (alpha >= 1e-6 && !ok) {
        const VectorXd d = alpha * basis.col(c);
        ok = mixed_binary_ssdp_with_slack(x1 + d(0), x2 + d(1), t + d(2), 1e-9) &&
             mixed_binary_ssdp_with_slack(x1 - d(0), x2 - d(1), t - d(2), 1e-9);
        alpha *= 0.5;
      }
    }
    if (ok) ++verified;
  }
  std::ostringstream ss;
  ss << compared << " triples agreed (" << band << " in band); " << verified
     << "/1000 rounding directions verified";
  return {verified == 1000, ss.str()};
}

// --- 3: partition suite ------------------------------------------------------

Outcome criterion3() {
  std::mt19937 gen(303);
  std::uniform_real_distribution<double> uw(0.05, 1.0);
  std::uniform_int_distribution<int> un(2, 8);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = un(gen);
    VectorXd a(n);
    for (int i = 0; i < n; ++i) a(i) = uw(gen);
    PartitionInstance pi(a);
    const double closed = partition_opt_sdp(pi);

    DualSolver solver(partition_build(pi));
    DualSolution sol = solver.solve();
    if (std::abs(sol.opt_sdp - closed) > 1e-5) {
      std::ostringstream ss;
      ss << "solver " << sol.opt_sdp << " vs closed form " << closed
         << " at rep " << rep;
      return {false, ss.str()};
    }
    const bool bal = partition_balanced(pi);
    if (bal != (closed <= 1e-10)) {
      return {false, "balanced(a) does not match Opt_SDP = 0"};
    }
    if (partition_enumerate(pi) < closed - 1e-9) {
      return {false, "brute force below the relaxation value"};
    }
    PartitionWitness w = partition_nonexactness_witness(pi);
    if (std::abs(w.second_difference) <= 1e-4) {
      return {false, "nonexactness witness too flat"};
    }
  }

  PartitionInstance ones((VectorXd(3) << 1, 1, 1).finished());
  const double gap_opt = partition_enumerate(ones);
  const double gap_sdp = partition_opt_sdp(ones);
  if (std::abs(gap_opt - 1.0) > 1e-12 || std::abs(gap_sdp) > 1e-12) {
    return {false, "a=(1,1,1) gap Opt=1 vs Opt_SDP=0 not reproduced"};
  }
  return {true, "100 random instances + the (1,1,1) gap"};
}

// --- 4: trust-region / S-lemma sanity ----------------------------------------

Outcome criterion4() {
  std::mt19937 gen(404);
  std::normal_distribution<double> dist;
  std::uniform_int_distribution<int> un(1, 4);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = un(gen);
    MatrixXd g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = dist(gen);
    }
    VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = dist(gen);
    std::vector<Constraint> cons;
    cons.push_back({QuadraticForm(SymmetricMatrix::Identity(n),
                                  VectorXd::Zero(n), -1.0),
                    ConstraintSense::kInequality});
    QcqpInstance inst(
        QuadraticForm(SymmetricMatrix(0.5 * (g + g.transpose())), b, 0.0),
        std::move(cons));

    DualSolver solver(inst);
    DualSolution sol = solver.solve();

    GridSpec spec;
    spec.lower = VectorXd::Constant(n, -1.05);
    spec.upper = VectorXd::Constant(n, 1.05);
    spec.points_per_axis = (n == 1) ? 2001 : (n == 2 ? 201 : (n == 3 ? 71 : 41));
    GridResult grid = grid_opt(inst, spec);
    if (!grid.feasible_point_found) return {false, "grid found no feasible point"};

    const double step = spec.step(0);
    const double radius = std::sqrt(static_cast<double>(n)) * 1.05;
    const double lip_obj =
        2.0 * (inst.objective().A.mat().operatorNorm() * radius + b.norm());
    const double bound =
        lip_obj * (std::sqrt(static_cast<double>(n)) * step +
                   grid.feasibility_tol_used);
    const double diff = std::abs(sol.opt_sdp - grid.value);
    worst = std::max(worst, diff / bound);
    if (diff > 2.0 * bound) {
      std::ostringstream ss;
      ss << "gap " << diff << " exceeds 2x bound " << bound << " (n=" << n
         << ", rep " << rep << ")";
      return {false, ss.str()};
    }
  }
  std::ostringstream ss;
  ss << "100 instances; worst gap at " << worst << "x the resolution bound";
  return {true, ss.str()};
}

// --- 5: dual-function calculus ------------------------------------------------

Outcome criterion5() {
  std::mt19937 gen(505);
  std::normal_distribution<double> dist;
  int checked = 0;
  double worst_fd = 0.0;
  while (checked < 100) {
    const int n = 3, m = 2;
    auto rand_sym = [&](double shift) {
      MatrixXd g(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = dist(gen);
      }
      return MatrixXd(0.5 * (g + g.transpose()) + shift * MatrixXd::Identity(n, n));
    };
    auto rand_vec = [&]() {
      VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = dist(gen);
      return v;
    };
    QuadraticForm obj(SymmetricMatrix(rand_sym(4.0)), rand_vec(), 0.0);
    std::vector<Constraint> cons;
    for (int i = 0; i < m; ++i) {
      cons.push_back({QuadraticForm(SymmetricMatrix(rand_sym(0.0)), rand_vec(),
                                    dist(gen)),
                      ConstraintSense::kEquality});
    }
    QcqpInstance inst(std::move(obj), std::move(cons));
    DualSolver solver(inst);

    std::uniform_real_distribution<double> u(-0.05, 0.05);
    VectorXd gamma(m);
    gamma << u(gen), u(gen);
    QuadraticForm agg = aggregate_projective(inst, gamma);
    if (lambda_min(agg.A) <= 1e-3) continue;

    const double err = fd_gradient_check(solver, gamma, 1e-5);
    worst_fd = std::max(worst_fd, err);
    if (err > 1e-5) {
      std::ostringstream ss;
      ss << "envelope gradient error " << err;
      return {false, ss.str()};
    }

    VectorXd g2(m);
    g2 << u(gen), u(gen);
    const double mid = solver.dual_value(0.5 * (gamma + g2)).value;
    const double avg =
        0.5 * (solver.dual_value(gamma).value + solver.dual_value(g2).value);
    if (mid < avg - 1e-9) {
      return {false, "concavity midpoint probe violated"};
    }
    ++checked;
  }
  std::ostringstream ss;
  ss << "100 interior multipliers; worst FD error " << worst_fd;
  return {true, ss.str()};
}

// --- 6: QMP exactness ----------------------------------------------------------

Outcome criterion6() {
  std::mt19937 gen(606);
  std::normal_distribution<double> dist;
  const int r = 3, k = 3, m = 2;

  int verified = 0, tested = 0, obj_checked = 0;
  for (int rep = 0; rep < 20; ++rep) {
    QmpBlocks blocks;
    blocks.r = r;
    blocks.k = k;
    auto rand_block = [&](bool pd) {
      MatrixXd g(r, r);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) g(i, j) = dist(gen);
      }
      MatrixXd s = 0.5 * (g + g.transpose());
      if (pd) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
        s += (std::abs(es.eigenvalues()(0)) + 1.0) * MatrixXd::Identity(r, r);
      }
      MatrixXd bb(r, k);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < k; ++j) bb(i, j) = dist(gen);
      }
      return QmpBlock{SymmetricMatrix(s), bb, 0.0};
    };
    blocks.objective = rand_block(true);
    MatrixXd x0(r, k);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < k; ++j) x0(i, j) = 0.3 * dist(gen);
    }
    for (int ci = 0; ci < m; ++ci) {
      QmpBlock blk = rand_block(false);
      const double quad = (x0.transpose() * blk.A.mat() * x0).trace() +
                          2.0 * (blk.B.transpose() * x0).trace();
      blk.c = -quad;  // x0 is feasible
      blocks.constraints.emplace_back(blk, ConstraintSense::kEquality);
    }

    QcqpInstance inst = qmp_build(blocks);
    DualSolver solver(inst);
    DualSolution sol = solver.solve();

    // Objective value exactness via an oracle upper bound.
    RngStream oracle_rng(606, static_cast<uint64_t>(rep));
    std::optional<VectorXd> hint;
    if (sol.x_star) hint = sol.x_star;
    MultistartResult up = multistart_upper_bound(inst, 15, oracle_rng, 1e-6, hint);
    if (up.found && std::abs(up.value - sol.opt_sdp) <= 1e-5 * (1.0 + std::abs(sol.opt_sdp))) {
      ++obj_checked;
    }

    // Boundary non-S samples and rounding directions.
    CertifyOptions opts;
    for (int s = 0; s < 10; ++s) {
      VectorXd x(inst.n());
      for (int i = 0; i < inst.n(); ++i) x(i) = 0.5 * dist(gen);
      if (sol.x_path.size() == inst.n()) x += sol.x_path;
      EpigraphHeightResult h = solver.epigraph_height(x);
      if (!h.finite) continue;
      EpigraphPoint p{x, 0.5 * h.tau};
      if (in_epigraph_set(inst, p, 1e-8)) continue;
      ++tested;
      try {
        FaceDescription face = face_multiplier(solver, p, opts);
        QmpRoundingCandidates cands = qmp_rounding_direction(blocks, inst, p, face);
        bool ok = false;
        for (const auto& [xp, tp] : cands.candidates) {
          double alpha = 1.0;
          while (alpha >= 1e-6 && !ok) {
            const bool inp = solver.membership({p.x + alpha * xp, p.t + alpha * tp}) !=
                             MembershipLabel::kOut;
            const bool inm = solver.membership({p.x - alpha * xp, p.t - alpha * tp}) !=
                             MembershipLabel::kOut;
            ok = inp && inm;
            alpha *= 0.5;
          }
          if (ok) break;
        }
        if (ok) ++verified;
      } catch (const Error&) {
        // Extraction failures count against the success rate.
      }
    }
  }
  std::ostringstream ss;
  ss << verified << "/" << tested << " rounding directions verified; "
     << obj_checked << "/20 objective gaps within 1e-5";
  const double fraction = tested > 0 ? static_cast<double>(verified) / tested : 0.0;
  return {fraction >= 0.99 && obj_checked == 20, ss.str()};
}

// --- 7: random EDM optimizer exactness -----------------------------------------

Outcome criterion7() {
  EdmConfig cfg;
  cfg.n_list = {50, 100, 200};
  cfg.m = 2;
  cfg.trials = 50;
  cfg.seed = 707;
  cfg.delta = 1e-6;
  cfg.workers = 8;
  ExperimentReport rep = edm_exactness_experiment(cfg);
  std::vector<double> fractions;
  for (const auto& entry : rep.summary.at("per_n")) {
    fractions.push_back(entry.at("success_fraction").get<double>());
  }
  std::ostringstream ss;
  ss << "success fractions";
  for (double f : fractions) ss << " " << f;
  ss << " (our finite-n calibration of an asymptotic claim)";
  bool pass = fractions.back() >= 0.9;
  for (size_t i = 1; i < fractions.size(); ++i) {
    if (fractions[i] < fractions[i - 1] - 0.1) pass = false;  // noise band
  }
  return {pass, ss.str()};
}

// --- 8: concentration + quadrature ----------------------------------------------

Outcome criterion8() {
  ConcentrationConfig cfg;
  cfg.n = 400;
  cfg.m = 2;
  cfg.radii = {0.3, 0.5, 0.8};
  cfg.directions_per_radius = 20;
  cfg.seed = 808;
  cfg.workers = 8;
  ExperimentReport rep = concentration_sweep(cfg);
  double worst_l = 0.0, worst_c = 0.0;
  std::ostringstream per_r;
  for (const auto& entry : rep.summary.at("per_radius")) {
    const double l = entry.at("max_lambda_min_dev").get<double>();
    const double c = entry.at("max_cap_dev").get<double>();
    worst_l = std::max(worst_l, l);
    worst_c = std::max(worst_c, c);
    per_r << " r=" << entry.at("r").get<double>() << ": |l|" << l << " |cap|" << c
          << ";";
  }
  double worst_quad = 0.0;
  for (double r = 0.1; r < 0.95; r += 0.1) {
    worst_quad = std::max(worst_quad,
                          std::abs(phi_semicircle_quadrature(r) - phi(r)));
  }
  std::ostringstream ss;
  ss << "max |lambda_min dev| " << worst_l << ", max |cap dev| " << worst_c
     << ", max quadrature err " << worst_quad << " —" << per_r.str();
  return {worst_l <= 0.1 && worst_c <= 0.1 && worst_quad <= 1e-6, ss.str()};
}

// --- 9: semi-random construction -------------------------------------------------

Outcome criterion9() {
  SemirandomConfig cfg;
  cfg.n = 300;
  cfg.m = 2;
  cfg.eps = 0.25;
  cfg.trials = 20;
  cfg.seed = 909;
  cfg.workers = 8;
  ExperimentReport rep = semirandom_experiment(cfg);
  const int constructed = rep.summary.at("constructed").get<int>();
  const double max_c = rep.summary.at("max_envelope_constant").get<double>();

  // The default adversary typically lands on interior dual optima (the
  // degenerate branch); the homogeneous instances below force a genuine
  // relaxation gap so the sphere-shift construction itself is exercised.
  double max_c_hom = 0.0;
  int constructed_hom = 0;
  bool ball_ok = true;
  for (int trial = 0; trial < 5; ++trial) {
    RngStream rng(cfg.seed + 1, static_cast<uint64_t>(trial));
    std::vector<VectorXd> b_eq(cfg.m, VectorXd::Zero(cfg.n));
    std::vector<double> c_eq(cfg.m, 0.0);
    QcqpInstance inst = gen_semirandom_instance(cfg.n, cfg.m, rng,
                                                VectorXd::Zero(cfg.n), 0.0,
                                                b_eq, c_eq);
    DualSolver solver(std::move(inst));
    try {
      SemirandomConstruction c = semirandom_construction(solver, cfg.eps);
      if (c.x_norm > 1.0 + 1e-9) ball_ok = false;
      const double resid =
          c.residuals.size() > 0 ? c.residuals.cwiseAbs().maxCoeff() : 0.0;
      max_c_hom = std::max(
          max_c_hom, std::max(resid, std::max(0.0, c.obj_gap)) / std::sqrt(cfg.eps));
      if (!c.degenerate) ++constructed_hom;
    } catch (const Error&) {
      ball_ok = false;
    }
  }

  std::ostringstream ss;
  ss << constructed << "/20 adversary trials ok (constant " << max_c << "); "
     << constructed_hom << "/5 homogeneous constructions ok (constant "
     << max_c_hom << "; the asymptotic constant is unstated, 5 is the desk-scale"
     << " envelope)";
  return {constructed == 20 && max_c <= 5.0 && constructed_hom == 5 &&
              max_c_hom <= 5.0 && ball_ok,
          ss.str()};
}

// --- 10: infrastructure -----------------------------------------------------------

Outcome criterion10() {
  std::mt19937 gen(1010);
  std::normal_distribution<double> dist;
  for (int n = 2; n <= 40; ++n) {
    for (int rep = 0; rep < 1000; ++rep) {
      MatrixXd g(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = dist(gen);
      }
      SymmetricMatrix s(0.5 * (g + g.transpose()));
      EigenDecomposition ed = eigh(s);
      const double scale = std::max(1.0, s.frobenius_norm());
      const MatrixXd recon = ed.eigenvectors * ed.eigenvalues.asDiagonal() *
                             ed.eigenvectors.transpose();
      if ((recon - s.mat()).norm() > 1e-10 * scale) {
        std::ostringstream ss;
        ss << "reconstruction bound violated at n=" << n;
        return {false, ss.str()};
      }
      if ((ed.eigenvectors.transpose() * ed.eigenvectors -
           MatrixXd::Identity(n, n)).norm() > 1e-10) {
        std::ostringstream ss;
        ss << "orthogonality bound violated at n=" << n;
        return {false, ss.str()};
      }
    }
  }

  // Reproducibility: identical seeds give identical reports for 1 vs 8
  // workers (timing column aside, which measures wall time).
  EdmConfig cfg;
  cfg.n_list = {30};
  cfg.m = 2;
  cfg.trials = 8;
  cfg.seed = 4242;
  cfg.workers = 1;
  ExperimentReport serial = edm_exactness_experiment(cfg);
  cfg.workers = 8;
  ExperimentReport parallel = edm_exactness_experiment(cfg);
  if (serial.to_csv(false) != parallel.to_csv(false)) {
    return {false, "CSV differs between 1 and 8 workers"};
  }
  return {true, "39000 eigendecompositions within bounds; CSV reproducible"};
}

struct Criterion {
  int id;
  const char* name;
  Budget budget;
  CriterionFn fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "worked-example cone equivalence", {5}, criterion1},
      {2, "mixed-binary triple agreement", {120}, criterion2},
      {3, "partition suite", {120}, criterion3},
      {4, "trust-region grid sanity", {300}, criterion4},
      {5, "dual-function calculus", {300}, criterion5},
      {6, "QMP rounding and exactness", {300}, criterion6},
      {7, "random EDM optimizer exactness", {600}, criterion7},
      {8, "concentration and quadrature", {300}, criterion8},
      {9, "semi-random construction", {600}, criterion9},
      {10, "infrastructure", {600}, criterion10},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_budget = secs <= c.budget.seconds;
    const bool pass = out.pass && in_budget;
    std::printf("[%s] criterion %d: %s (%.1fs%s) — %s\n",
                pass ? "PASS" : "FAIL", c.id, c.name, secs,
                in_budget ? "" : ", OVER BUDGET", out.detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures;
}
