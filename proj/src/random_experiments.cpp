#include "qcqp/random_experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "qcqp/certifier.hpp"
#include "qcqp/json_io.hpp"

namespace qcqp {

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

SymmetricMatrix sample_ngoe(int n, RngStream& rng) {
  if (n < 1) throw DimensionMismatch("sample_ngoe: n >= 1 required");
  const double diag_sd = std::sqrt(1.0 / (2.0 * n));
  const double off_sd = std::sqrt(1.0 / (4.0 * n));
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = diag_sd * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const double v = off_sd * rng.normal();
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return SymmetricMatrix(a);
}

QcqpInstance gen_edm_instance(int n, int m, RngStream& rng) {
  QuadraticForm obj(SymmetricMatrix::Identity(n), VectorXd::Zero(n), 0.0);
  std::vector<Constraint> cons;
  const double b_sd = std::sqrt(1.0 / n);
  for (int i = 0; i < m; ++i) {
    SymmetricMatrix a = sample_ngoe(n, rng);
    VectorXd b(n);
    for (int j = 0; j < n; ++j) b(j) = b_sd * rng.normal();
    const double c = rng.normal();
    cons.push_back({QuadraticForm(std::move(a), std::move(b), c),
                    ConstraintSense::kEquality});
  }
  return QcqpInstance(std::move(obj), std::move(cons));
}

QcqpInstance gen_semirandom_instance(int n, int m, RngStream& rng,
                                     const VectorXd& b_obj, double c_obj,
                                     const std::vector<VectorXd>& b_eq,
                                     const std::vector<double>& c_eq) {
  if (b_obj.size() != n || static_cast<int>(b_eq.size()) != m ||
      static_cast<int>(c_eq.size()) != m) {
    throw DimensionMismatch("gen_semirandom_instance: supplied terms mismatch");
  }
  QuadraticForm obj(sample_ngoe(n, rng), b_obj, c_obj);
  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix::Identity(n), VectorXd::Zero(n), -1.0),
                  ConstraintSense::kInequality});  // unit ball, stored first
  for (int i = 0; i < m; ++i) {
    if (b_eq[i].size() != n) {
      throw DimensionMismatch("gen_semirandom_instance: b_eq dimension");
    }
    cons.push_back({QuadraticForm(sample_ngoe(n, rng), b_eq[i], c_eq[i]),
                    ConstraintSense::kEquality});
  }
  return QcqpInstance(std::move(obj), std::move(cons));
}

QcqpInstance gen_semirandom_default_adversary(int n, int m, RngStream& rng) {
  // Sample the quadratic terms first, then align each linear term with the
  // top eigenvector of its quadratic term (stress case), c = 1.
  std::vector<SymmetricMatrix> mats;
  mats.reserve(m + 1);
  for (int i = 0; i < m + 1; ++i) mats.push_back(sample_ngoe(n, rng));

  auto top_eigvec = [](const SymmetricMatrix& a) {
    EigenDecomposition ed = eigh(a);
    return VectorXd(ed.eigenvectors.col(a.dim() - 1));
  };

  QuadraticForm obj(mats[0], top_eigvec(mats[0]), 1.0);
  std::vector<Constraint> cons;
  cons.push_back({QuadraticForm(SymmetricMatrix::Identity(n), VectorXd::Zero(n), -1.0),
                  ConstraintSense::kInequality});
  for (int i = 0; i < m; ++i) {
    cons.push_back({QuadraticForm(mats[i + 1], top_eigvec(mats[i + 1]), 1.0),
                    ConstraintSense::kEquality});
  }
  return QcqpInstance(std::move(obj), std::move(cons));
}

double phi(double r) {
  if (r < 0.0 || r >= 1.0) throw InvalidInstance("phi: r must be in [0,1)");
  return 2.0 * (std::sqrt(1.0 - r * r) - 1.0);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double fm, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 40);
}

}  // namespace

double phi_semicircle_quadrature(double r, double tol) {
  if (r < 0.0 || r >= 1.0) throw InvalidInstance("quadrature: r must be in [0,1)");
  if (r == 0.0) return 0.0;
  // -∫ r^2/(1+rs) (2/pi) sqrt(1-s^2) ds over [-1,1], after s = -cos(theta):
  // the integrand becomes smooth.
  auto f = [r](double theta) {
    const double sin_t = std::sin(theta);
    return -(2.0 / M_PI) * r * r * sin_t * sin_t / (1.0 - r * std::cos(theta));
  };
  return integrate(f, 0.0, M_PI, tol);
}

std::string ExperimentReport::to_csv(bool include_timing) const {
  std::ostringstream out;
  out << "# qcqp_exact_csv v1 experiment=" << experiment << "\n";
  bool first = true;
  for (const auto& c : columns) {
    if (!include_timing && c == "millis") continue;
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << "\n";
  for (const auto& row : rows) {
    first = true;
    for (size_t i = 0; i < row.size(); ++i) {
      if (!include_timing && columns[i] == "millis") continue;
      out << (first ? "" : ",") << row[i];
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

void run_parallel(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

ExperimentReport concentration_sweep(const ConcentrationConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "concentration";
  rep.config = {{"n", cfg.n},
                {"m", cfg.m},
                {"radii", cfg.radii},
                {"directions_per_radius", cfg.directions_per_radius},
                {"seed", cfg.seed}};
  rep.columns = {"seed", "n",          "m",   "r",      "lambda_min",
                 "lambda_min_dev", "cap", "cap_dev", "millis"};

  const int total = static_cast<int>(cfg.radii.size()) * cfg.directions_per_radius;
  rep.rows.resize(total);

  run_parallel(total, cfg.workers, [&](int idx) {
    const auto t0 = std::chrono::steady_clock::now();
    const int ri = idx / cfg.directions_per_radius;
    const double r = cfg.radii[ri];
    RngStream rng(cfg.seed, static_cast<uint64_t>(idx));

    std::vector<SymmetricMatrix> a;
    std::vector<VectorXd> b;
    const double b_sd = std::sqrt(1.0 / cfg.n);
    for (int i = 0; i < cfg.m; ++i) {
      a.push_back(sample_ngoe(cfg.n, rng));
      VectorXd bi(cfg.n);
      for (int j = 0; j < cfg.n; ++j) bi(j) = b_sd * rng.normal();
      b.push_back(bi);
    }
    VectorXd dir(cfg.m);
    for (int i = 0; i < cfg.m; ++i) dir(i) = rng.normal();
    dir.normalize();
    const VectorXd gamma = r * dir;

    MatrixXd agg = MatrixXd::Identity(cfg.n, cfg.n);
    VectorXd bg = VectorXd::Zero(cfg.n);
    for (int i = 0; i < cfg.m; ++i) {
      agg += gamma(i) * a[i].mat();
      bg += gamma(i) * b[i];
    }
    const SymmetricMatrix s(agg);
    const double lmin = eigh(s, /*with_vectors=*/false).lambda_min();
    double cap = 0.0;
    if (r > 0.0) {
      const VectorXd u = solve_pd(s, bg);
      cap = -bg.dot(u);
    }
    const double lmin_dev = lmin - (1.0 - r);
    const double cap_dev = cap - phi(r);
    rep.rows[idx] = {std::to_string(cfg.seed ^ static_cast<uint64_t>(idx)),
                     std::to_string(cfg.n),
                     std::to_string(cfg.m),
                     format_double(r),
                     format_double(lmin),
                     format_double(lmin_dev),
                     format_double(cap),
                     format_double(cap_dev),
                     format_double(elapsed_ms(t0))};
  });

  json per_radius = json::array();
  for (size_t ri = 0; ri < cfg.radii.size(); ++ri) {
    double max_l = 0.0, max_c = 0.0;
    for (int d = 0; d < cfg.directions_per_radius; ++d) {
      const auto& row = rep.rows[ri * cfg.directions_per_radius + d];
      max_l = std::max(max_l, std::abs(std::stod(row[5])));
      max_c = std::max(max_c, std::abs(std::stod(row[7])));
    }
    per_radius.push_back({{"r", cfg.radii[ri]},
                          {"max_lambda_min_dev", max_l},
                          {"max_cap_dev", max_c}});
  }
  rep.summary = {{"per_radius", per_radius}};
  return rep;
}

ExperimentReport edm_exactness_experiment(const EdmConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "edm";
  rep.config = {{"n_list", cfg.n_list}, {"m", cfg.m},       {"trials", cfg.trials},
                {"seed", cfg.seed},     {"delta", cfg.delta}};
  rep.columns = {"seed", "n", "m", "opt_sdp", "verdict", "margin", "residual",
                 "millis"};
  const int total = static_cast<int>(cfg.n_list.size()) * cfg.trials;
  rep.rows.resize(total);

  run_parallel(total, cfg.workers, [&](int idx) {
    const auto t0 = std::chrono::steady_clock::now();
    const int ni = idx / cfg.trials;
    const int n = cfg.n_list[ni];
    RngStream rng(cfg.seed, static_cast<uint64_t>(idx));
    std::string verdict = "Error";
    double opt_sdp = 0.0, margin = 0.0, residual = -1.0;
    try {
      QcqpInstance inst = gen_edm_instance(n, cfg.m, rng);
      DualSolver solver(std::move(inst));
      DualSolution sol = solver.solve();
      opt_sdp = sol.opt_sdp;
      Certificate cert = dual_interior_certificate(solver, sol, cfg.delta);
      verdict = to_string(cert.verdict);
      margin = sol.lambda_min_at_star;
      if (cert.diagnostics.count("feasibility_residual")) {
        residual = cert.diagnostics.at("feasibility_residual");
      }
    } catch (const Error& e) {
      verdict = std::string("Error:") + e.code();
    }
    rep.rows[idx] = {std::to_string(cfg.seed ^ static_cast<uint64_t>(idx)),
                     std::to_string(n),
                     std::to_string(cfg.m),
                     format_double(opt_sdp),
                     verdict,
                     format_double(margin),
                     format_double(residual),
                     format_double(elapsed_ms(t0))};
  });

  json per_n = json::array();
  for (size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    int success = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto& row = rep.rows[ni * cfg.trials + t];
      if (row[4] == "Certified" && std::stod(row[6]) <= 1e-5) ++success;
    }
    per_n.push_back({{"n", cfg.n_list[ni]},
                     {"success_fraction",
                      static_cast<double>(success) / cfg.trials}});
  }
  rep.summary = {{"per_n", per_n}};
  return rep;
}

SemirandomConstruction semirandom_construction(const DualSolver& solver,
                                               double eps) {
  const QcqpInstance& inst = solver.instance();
  const int n = inst.n();
  const int m = inst.m() - 1;  // equalities; constraint 0 is the unit ball
  if (m < 0 || inst.m_inequality() != 1) {
    throw InvalidInstance("semirandom_construction: expected ball + equalities");
  }

  DualSolution sol = solver.solve();
  if (sol.x_path.size() != n) {
    throw AssumptionFailed("semirandom_construction: no interior path point");
  }
  const VectorXd x_star = sol.x_path;
  const double two_t = sol.opt_sdp;

  SemirandomConstruction out;
  out.opt_sdp = sol.opt_sdp;
  out.residuals.resize(m);

  const double res_obj = evaluate(inst.objective(), x_star) - two_t;
  VectorXd res_eq(m);
  for (int i = 0; i < m; ++i) {
    res_eq(i) = evaluate(inst.constraint(1 + i).form, x_star);
  }
  const double tau = std::sqrt(res_obj * res_obj + res_eq.squaredNorm());
  out.tau = tau;

  // Interior dual optima leave a stationarity-level residual (O(mu n)); the
  // saddle point is then already feasible and there is nothing to move.
  if (tau <= 1e-5 * (1.0 + std::abs(two_t))) {
    // Saddle point already (near-)feasible: nothing to construct.
    out.x_tilde = x_star;
    for (int i = 0; i < m; ++i) out.residuals(i) = res_eq(i);
    out.obj_gap = res_obj;
    out.x_norm = x_star.norm();
    out.degenerate = true;
    return out;
  }

  // Face direction (f_obj, f, 1) and the aggregated matrix
  // f_obj A_obj + sum f_i A_i + I.
  const double f_obj = res_obj / tau;
  const VectorXd f = res_eq / tau;
  MatrixXd agg = f_obj * inst.objective().A.mat() + MatrixXd::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    agg += f(i) * inst.constraint(1 + i).form.A.mat();
  }
  EigenDecomposition ed = eigh(SymmetricMatrix(agg));

  std::vector<int> near_null;
  for (int i = 0; i < n; ++i) {
    if (std::abs(ed.eigenvalues(i)) <= eps) near_null.push_back(i);
  }
  out.w_dim = static_cast<int>(near_null.size());
  if (out.w_dim < m + 3) {
    throw SubspaceTooSmall(
        "semirandom_construction: dim(W) < m + 3; rerun with larger n");
  }
  MatrixXd w_basis(n, out.w_dim);
  for (int i = 0; i < out.w_dim; ++i) {
    w_basis.col(i) = ed.eigenvectors.col(near_null[i]);
  }

  // The m + 2 linear constraints: w ⊥ A_obj x* + b_obj, A_i x* + b_i, x*.
  MatrixXd constraints(m + 2, n);
  constraints.row(0) =
      (inst.objective().A.mat() * x_star + inst.objective().b).transpose();
  for (int i = 0; i < m; ++i) {
    const auto& fi = inst.constraint(1 + i).form;
    constraints.row(1 + i) = (fi.A.mat() * x_star + fi.b).transpose();
  }
  constraints.row(m + 1) = x_star.transpose();  // ball: A = I, b = 0

  const MatrixXd reduced = constraints * w_basis;
  const MatrixXd null = nullspace(reduced);
  if (null.cols() == 0) {
    throw SubspaceTooSmall("semirandom_construction: projection left no direction");
  }
  VectorXd w = w_basis * null.col(0);
  w.normalize();
  out.orthogonality_residual = (constraints * w).cwiseAbs().maxCoeff();

  const double alpha = std::sqrt(std::max(0.0, 1.0 - x_star.squaredNorm()));
  out.x_tilde = x_star + alpha * w;
  for (int i = 0; i < m; ++i) {
    out.residuals(i) = evaluate(inst.constraint(1 + i).form, out.x_tilde);
  }
  out.obj_gap = evaluate(inst.objective(), out.x_tilde) - two_t;
  out.x_norm = out.x_tilde.norm();
  return out;
}

ExperimentReport semirandom_experiment(const SemirandomConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "semirandom";
  rep.config = {{"n", cfg.n},       {"m", cfg.m},     {"eps", cfg.eps},
                {"trials", cfg.trials}, {"seed", cfg.seed}};
  rep.columns = {"seed",    "n",       "m",      "opt_sdp", "verdict",
                 "margin",  "residual", "millis"};
  rep.rows.resize(cfg.trials);

  run_parallel(cfg.trials, cfg.workers, [&](int idx) {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(cfg.seed, static_cast<uint64_t>(idx));
    std::string verdict;
    double opt_sdp = 0.0, constant = 0.0, max_resid = 0.0;
    try {
      QcqpInstance inst = gen_semirandom_default_adversary(cfg.n, cfg.m, rng);
      DualSolver solver(std::move(inst));
      SemirandomConstruction c = semirandom_construction(solver, cfg.eps);
      opt_sdp = c.opt_sdp;
      max_resid = c.residuals.size() > 0 ? c.residuals.cwiseAbs().maxCoeff() : 0.0;
      constant = std::max(max_resid, std::max(0.0, c.obj_gap)) /
                 std::sqrt(cfg.eps);
      verdict = c.degenerate ? "Degenerate" : "Constructed";
      if (c.x_norm > 1.0 + 1e-9) verdict = "BallViolated";
    } catch (const Error& e) {
      verdict = std::string("Error:") + e.code();
    }
    rep.rows[idx] = {std::to_string(cfg.seed ^ static_cast<uint64_t>(idx)),
                     std::to_string(cfg.n),
                     std::to_string(cfg.m),
                     format_double(opt_sdp),
                     verdict,
                     format_double(constant),
                     format_double(max_resid),
                     format_double(elapsed_ms(t0))};
  });

  int ok = 0;
  double max_constant = 0.0;
  for (const auto& row : rep.rows) {
    if (row[4] == "Constructed" || row[4] == "Degenerate") {
      ++ok;
      max_constant = std::max(max_constant, std::stod(row[5]));
    }
  }
  rep.summary = {{"constructed", ok},
                 {"trials", cfg.trials},
                 {"max_envelope_constant", max_constant}};
  return rep;
}

}  // namespace qcqp
