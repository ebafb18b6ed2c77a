#include "qcqp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qcqp/certifier.hpp"
#include "qcqp/json_io.hpp"
#include "qcqp/oracle.hpp"
#include "qcqp/random_experiments.hpp"
#include "qcqp/structured.hpp"

namespace qcqp::cli {

namespace {

int log_level() {
  const char* env = std::getenv("QCQP_EXACT_LOG");
  if (env == nullptr) return 1;  // warn
  const std::string v(env);
  if (v == "debug") return 3;
  if (v == "info") return 2;
  if (v == "warn") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[qcqp_exact] " << msg << "\n";
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot open output path: " + out_path);
    f << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot open output path: " + out_path);
    f << text;
  }
}

VectorXd to_vector(const std::vector<double>& v) {
  VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

json cert_to_json(const Certificate& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["kind"] = to_string(c.kind);
  if (c.kernel_outcome) j["kernel_outcome"] = to_string(*c.kernel_outcome);
  if (c.margin) j["margin"] = *c.margin;
  if (c.witness_direction) j["witness_direction"] = vector_to_json(*c.witness_direction);
  if (c.witness_point) j["witness_point"] = vector_to_json(*c.witness_point);
  if (c.kernel_vector) j["kernel_vector"] = vector_to_json(*c.kernel_vector);
  if (c.rounding_basis) j["rounding_basis"] = matrix_to_json(*c.rounding_basis);
  j["diagnostics"] = c.diagnostics;
  j["note"] = c.note;
  return j;
}

json solution_to_json(const DualSolution& sol) {
  json j;
  j["opt_sdp"] = sol.opt_sdp;
  j["gamma_star"] = vector_to_json(sol.gamma_star.gamma);
  j["lambda_min"] = sol.lambda_min_at_star;
  switch (sol.status) {
    case SolveStatus::kConverged: j["status"] = "Converged"; break;
    case SolveStatus::kUnbounded: j["status"] = "Unbounded"; break;
    case SolveStatus::kMaxIter: j["status"] = "MaxIter"; break;
  }
  if (sol.x_star) j["x_star"] = vector_to_json(*sol.x_star);
  return j;
}

CertifyOptions::FaceMode parse_mode(const std::string& mode) {
  if (mode == "generic") return CertifyOptions::FaceMode::kGeneric;
  if (mode == "soc") return CertifyOptions::FaceMode::kSoc;
  if (mode == "partition") return CertifyOptions::FaceMode::kPartition;
  throw UsageError("unknown face mode: " + mode);
}

QmpBlocks qmp_blocks_from_json(const json& j) {
  QmpBlocks blocks;
  blocks.r = j.at("r").get<int>();
  blocks.k = j.at("k").get<int>();
  auto block_of = [&](const json& bj) {
    QmpBlock b{SymmetricMatrix(matrix_from_json(bj.at("A"))),
               matrix_from_json(bj.at("B")), bj.at("c").get<double>()};
    return b;
  };
  blocks.objective = block_of(j.at("objective"));
  for (const auto& cj : j.at("constraints")) {
    const std::string sense = cj.at("sense").get<std::string>();
    blocks.constraints.emplace_back(block_of(cj),
                                    sense == "le" ? ConstraintSense::kInequality
                                                  : ConstraintSense::kEquality);
  }
  return blocks;
}

json experiment_output(const ExperimentReport& rep, const std::string& format,
                       const std::string& out_path) {
  if (format == "csv") {
    emit_text(rep.to_csv(), out_path);
    return rep.summary;
  }
  json full;
  full["config"] = rep.config;
  full["experiment"] = rep.experiment;
  full["columns"] = rep.columns;
  full["rows"] = rep.rows;
  full["summary"] = rep.summary;
  emit(full, out_path);
  return rep.summary;
}

struct CommonArgs {
  std::string instance_path;
  std::string out_path;
  std::string format = "json";
  double tol = 1e-6;
  uint64_t seed = 0;
  int workers = 1;
};

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"QCQP modeling, Shor-SDP dual solving and exactness certification"};
  app.require_subcommand(1);

  CommonArgs common;

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "maximize the dual over Gamma_P");
  solve_cmd->add_option("--instance", common.instance_path)->required();
  solve_cmd->add_option("--out", common.out_path);
  solve_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    emit(solution_to_json(solver.solve()), common.out_path);
  });

  // --- membership ----------------------------------------------------------
  std::vector<double> point;
  double t_value = 0.0;
  auto* member_cmd =
      app.add_subcommand("membership", "classify (x,t) against S_SDP");
  member_cmd->add_option("--instance", common.instance_path)->required();
  member_cmd->add_option("--point", point)->required()->expected(-1);
  member_cmd->add_option("--t", t_value)->required();
  member_cmd->add_option("--out", common.out_path);
  member_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    EpigraphHeightResult h = solver.epigraph_height(to_vector(point));
    MembershipLabel label = solver.membership({to_vector(point), t_value});
    json j;
    j["tau"] = h.finite ? json(h.tau) : json("inf");
    j["two_t"] = 2.0 * t_value;
    j["label"] = label == MembershipLabel::kIn
                     ? "In"
                     : (label == MembershipLabel::kOut ? "Out" : "Boundary");
    emit(j, common.out_path);
  });

  // --- certify-point -------------------------------------------------------
  std::string mode = "generic";
  auto* cpoint_cmd =
      app.add_subcommand("certify-point", "convex-hull-point certificate");
  cpoint_cmd->add_option("--instance", common.instance_path)->required();
  cpoint_cmd->add_option("--point", point)->required()->expected(-1);
  cpoint_cmd->add_option("--t", t_value)->required();
  cpoint_cmd->add_option("--mode", mode)->check(CLI::IsMember({"generic", "soc", "partition"}));
  cpoint_cmd->add_option("--tol", common.tol);
  cpoint_cmd->add_option("--out", common.out_path);
  cpoint_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    CertifyOptions opts;
    opts.mode = parse_mode(mode);
    opts.tol = common.tol;
    Certificate c =
        certify_convex_hull_point(solver, {to_vector(point), t_value}, opts);
    emit(cert_to_json(c), common.out_path);
  });

  // --- certify-hull ----------------------------------------------------------
  std::vector<double> box_lo, box_hi;
  int samples = 200;
  auto* chull_cmd = app.add_subcommand(
      "certify-hull", "convex hull exactness by boundary sampling");
  chull_cmd->add_option("--instance", common.instance_path)->required();
  chull_cmd->add_option("--box-lo", box_lo)->required()->expected(-1);
  chull_cmd->add_option("--box-hi", box_hi)->required()->expected(-1);
  chull_cmd->add_option("--samples", samples);
  chull_cmd->add_option("--seed", common.seed)->required();
  chull_cmd->add_option("--mode", mode)->check(CLI::IsMember({"generic", "soc", "partition"}));
  chull_cmd->add_option("--tol", common.tol);
  chull_cmd->add_option("--out", common.out_path);
  chull_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    HullSamplingConfig cfg;
    cfg.box_lo = to_vector(box_lo);
    cfg.box_hi = to_vector(box_hi);
    cfg.samples = samples;
    cfg.seed = common.seed;
    CertifyOptions opts;
    opts.mode = parse_mode(mode);
    opts.tol = common.tol;
    emit(cert_to_json(certify_hull(solver, cfg, opts)), common.out_path);
  });

  // --- certify-objective -----------------------------------------------------
  double delta = 1e-6;
  auto* cobj_cmd = app.add_subcommand(
      "certify-objective", "objective/optimizer exactness via the dual");
  cobj_cmd->add_option("--instance", common.instance_path)->required();
  cobj_cmd->add_option("--delta", delta);
  cobj_cmd->add_option("--tol", common.tol);
  cobj_cmd->add_option("--out", common.out_path);
  cobj_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    DualSolution sol = solver.solve();
    json j;
    j["solution"] = solution_to_json(sol);
    j["dual_interior"] =
        cert_to_json(dual_interior_certificate(solver, sol, delta, common.tol));
    if (sol.lambda_min_at_star < delta && sol.status != SolveStatus::kUnbounded) {
      j["kernel_obstruction"] =
          cert_to_json(kernel_obstruction(solver, sol.gamma_star.gamma));
    }
    emit(j, common.out_path);
  });

  // --- polyhedral ------------------------------------------------------------
  std::string generators_path, samples_path;
  auto* poly_cmd = app.add_subcommand(
      "polyhedral", "convex hull test with user-supplied Gamma generators");
  poly_cmd->add_option("--instance", common.instance_path)->required();
  poly_cmd->add_option("--generators", generators_path)->required();
  poly_cmd->add_option("--samples-file", samples_path);
  poly_cmd->add_option("--box-lo", box_lo)->expected(-1);
  poly_cmd->add_option("--box-hi", box_hi)->expected(-1);
  poly_cmd->add_option("--samples", samples);
  poly_cmd->add_option("--seed", common.seed);
  poly_cmd->add_option("--tol", common.tol);
  poly_cmd->add_option("--out", common.out_path);
  poly_cmd->callback([&]() {
    DualSolver solver(load_instance(common.instance_path));
    std::ifstream g(generators_path);
    if (!g) throw UsageError("cannot open generators file");
    json gj;
    g >> gj;
    std::vector<Multiplier> gens;
    for (const auto& row : gj) {
      VectorXd v = vector_from_json(row);
      if (v.size() != solver.instance().m() + 1) {
        throw UsageError("generator length must be 1 + m");
      }
      gens.emplace_back(v(0), VectorXd(v.tail(solver.instance().m())));
    }
    std::vector<EpigraphPoint> pts;
    if (!samples_path.empty()) {
      std::ifstream s(samples_path);
      if (!s) throw UsageError("cannot open samples file");
      json sj;
      s >> sj;
      for (const auto& pj : sj) {
        pts.push_back({vector_from_json(pj.at("x")), pj.at("t").get<double>()});
      }
    } else {
      if (box_lo.empty() || box_hi.empty()) {
        throw UsageError("either --samples-file or --box-lo/--box-hi required");
      }
      RngStream rng(common.seed, 0xB0D1E5);
      for (int s = 0; s < samples; ++s) {
        VectorXd x(solver.instance().n());
        for (int i = 0; i < x.size(); ++i) {
          x(i) = rng.uniform(box_lo[i], box_hi[i]);
        }
        EpigraphHeightResult h = solver.epigraph_height(x);
        if (h.finite) pts.push_back({x, 0.5 * h.tau});
      }
    }
    CertifyOptions opts;
    opts.tol = common.tol;
    emit(cert_to_json(polyhedral_certify(solver, gens, pts, opts)),
         common.out_path);
  });

  // --- partition ---------------------------------------------------------------
  std::vector<double> weights;
  bool with_witness = false, with_enumerate = false, with_solve = false;
  auto* part_cmd = app.add_subcommand("partition", "partition QCQP closed forms");
  part_cmd->add_option("--a", weights)->required()->expected(-1);
  part_cmd->add_flag("--witness", with_witness);
  part_cmd->add_flag("--enumerate", with_enumerate);
  part_cmd->add_flag("--solve", with_solve);
  part_cmd->add_option("--out", common.out_path);
  part_cmd->callback([&]() {
    PartitionInstance pi(to_vector(weights));
    json j;
    j["a"] = weights;
    j["opt_sdp_closed_form"] = partition_opt_sdp(pi);
    j["balanced"] = partition_balanced(pi);
    if (with_enumerate) j["opt_enumerate"] = partition_enumerate(pi);
    if (with_witness) {
      PartitionWitness w = partition_nonexactness_witness(pi);
      j["witness"] = {{"x", vector_to_json(w.x)},
                      {"t", w.t},
                      {"second_difference", w.second_difference},
                      {"coordinate", w.coordinate}};
    }
    if (with_solve) {
      DualSolver solver(partition_build(pi));
      j["solver"] = solution_to_json(solver.solve());
    }
    emit(j, common.out_path);
  });

  // --- mixed-binary ---------------------------------------------------------
  auto* mb_cmd = app.add_subcommand("mixed-binary", "on-off set closed forms");
  mb_cmd->add_option("--point", point)->required()->expected(3);
  mb_cmd->add_option("--out", common.out_path);
  mb_cmd->callback([&]() {
    const double x1 = point[0], x2 = point[1], tt = point[2];
    json j;
    j["ssdp"] = mixed_binary_ssdp(x1, x2, tt);
    j["perspective"] = mixed_binary_perspective(x1, x2, tt);
    const MixedBinaryFaceCase fc = mixed_binary_face_case(x1, x2, tt);
    const char* fc_name = fc == MixedBinaryFaceCase::kPointInS      ? "PointInS"
                          : fc == MixedBinaryFaceCase::kConeInterior ? "ConeInterior"
                          : fc == MixedBinaryFaceCase::kOneDimFace   ? "OneDimFace"
                                                                     : "Outside";
    j["face_case"] = fc_name;
    j["boundary"] = fc == MixedBinaryFaceCase::kOneDimFace;
    if (fc == MixedBinaryFaceCase::kOneDimFace) {
      MatrixXd basis = mixed_binary_rounding_space(x1, x2, tt);
      j["rounding_dim"] = basis.cols();
      j["rounding_basis"] = matrix_to_json(basis);
    } else if (fc == MixedBinaryFaceCase::kConeInterior) {
      j["rounding_dim"] = 3;
    } else {
      j["rounding_dim"] = 0;
    }
    emit(j, common.out_path);
  });

  // --- qmp -------------------------------------------------------------------
  auto* qmp_cmd = app.add_subcommand("qmp", "quadratic matrix program analysis");
  qmp_cmd->add_option("--instance", common.instance_path)->required();
  qmp_cmd->add_option("--samples", samples)->default_val(10);
  qmp_cmd->add_option("--seed", common.seed)->required();
  qmp_cmd->add_option("--out", common.out_path);
  qmp_cmd->callback([&]() {
    std::ifstream f(common.instance_path);
    if (!f) throw UsageError("cannot open qmp file");
    json qj;
    f >> qj;
    QmpBlocks blocks = qmp_blocks_from_json(qj);
    QcqpInstance inst = qmp_build(blocks);
    DualSolver solver(inst);
    DualSolution sol = solver.solve();
    json j;
    j["n"] = inst.n();
    j["solution"] = solution_to_json(sol);
    RngStream rng(common.seed, 0x9A9A);
    int verified = 0, tested = 0;
    json rows = json::array();
    CertifyOptions opts;
    for (int s = 0; s < samples; ++s) {
      VectorXd x(inst.n());
      for (int i = 0; i < inst.n(); ++i) x(i) = rng.normal();
      if (sol.x_path.size() == inst.n()) x += sol.x_path;
      EpigraphHeightResult h = solver.epigraph_height(x);
      if (!h.finite) continue;
      EpigraphPoint p{x, 0.5 * h.tau};
      if (in_epigraph_set(inst, p, opts.tol)) continue;
      ++tested;
      json row;
      try {
        FaceDescription face = face_multiplier(solver, p, opts);
        QmpRoundingCandidates cands = qmp_rounding_direction(blocks, inst, p, face);
        bool ok = false;
        for (const auto& [xp, tp] : cands.candidates) {
          double alpha = 1.0;
          while (alpha >= 1e-6 && !ok) {
            const bool in_plus =
                solver.membership({p.x + alpha * xp, p.t + alpha * tp}) !=
                MembershipLabel::kOut;
            const bool in_minus =
                solver.membership({p.x - alpha * xp, p.t - alpha * tp}) !=
                MembershipLabel::kOut;
            if (in_plus && in_minus) ok = true;
            alpha *= 0.5;
          }
          if (ok) break;
        }
        row["trivial"] = cands.trivial();
        row["verified"] = ok;
        if (ok) ++verified;
      } catch (const Error& e) {
        row["error"] = e.code();
      }
      rows.push_back(row);
    }
    j["samples"] = rows;
    j["tested"] = tested;
    j["verified"] = verified;
    emit(j, common.out_path);
  });

  // --- experiments -------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "randomized experiments");
  exp_cmd->require_subcommand(1);

  std::vector<int> n_list = {50, 100, 200};
  int m = 2, trials = 50, n_single = 400, directions = 20;
  int n_semi = 300, trials_semi = 20;
  std::vector<double> radii = {0.3, 0.5, 0.8};
  double eps = 0.25;

  auto* edm_cmd = exp_cmd->add_subcommand("edm", "optimizer exactness rates");
  edm_cmd->add_option("--n", n_list)->expected(-1);
  edm_cmd->add_option("--m", m);
  edm_cmd->add_option("--trials", trials);
  edm_cmd->add_option("--seed", common.seed)->required();
  edm_cmd->add_option("--delta", delta);
  edm_cmd->add_option("--workers", common.workers);
  edm_cmd->add_option("--out", common.out_path);
  edm_cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  edm_cmd->callback([&]() {
    EdmConfig cfg;
    cfg.n_list = n_list;
    cfg.m = m;
    cfg.trials = trials;
    cfg.seed = common.seed;
    cfg.delta = delta;
    cfg.workers = common.workers;
    log_info("running edm experiment");
    ExperimentReport rep = edm_exactness_experiment(cfg);
    json summary = experiment_output(rep, common.format, common.out_path);
    if (common.format == "csv") emit(summary, "");
  });

  auto* conc_cmd =
      exp_cmd->add_subcommand("concentration", "lambda_min and sphere-cap sweeps");
  conc_cmd->add_option("--n", n_single);
  conc_cmd->add_option("--m", m);
  conc_cmd->add_option("--radii", radii)->expected(-1);
  conc_cmd->add_option("--directions", directions);
  conc_cmd->add_option("--seed", common.seed)->required();
  conc_cmd->add_option("--workers", common.workers);
  conc_cmd->add_option("--out", common.out_path);
  conc_cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  conc_cmd->callback([&]() {
    ConcentrationConfig cfg;
    cfg.n = n_single;
    cfg.m = m;
    cfg.radii = radii;
    cfg.directions_per_radius = directions;
    cfg.seed = common.seed;
    cfg.workers = common.workers;
    log_info("running concentration sweep");
    ExperimentReport rep = concentration_sweep(cfg);
    json summary = experiment_output(rep, common.format, common.out_path);
    if (common.format == "csv") emit(summary, "");
  });

  auto* semi_cmd =
      exp_cmd->add_subcommand("semirandom", "almost-exactness construction");
  semi_cmd->add_option("--n", n_semi);
  semi_cmd->add_option("--m", m);
  semi_cmd->add_option("--eps", eps);
  semi_cmd->add_option("--trials", trials_semi);
  semi_cmd->add_option("--seed", common.seed)->required();
  semi_cmd->add_option("--workers", common.workers);
  semi_cmd->add_option("--out", common.out_path);
  semi_cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  semi_cmd->callback([&]() {
    SemirandomConfig cfg;
    cfg.n = n_semi;
    cfg.m = m;
    cfg.eps = eps;
    cfg.trials = trials_semi;
    cfg.seed = common.seed;
    cfg.workers = common.workers;
    log_info("running semirandom construction");
    ExperimentReport rep = semirandom_experiment(cfg);
    json summary = experiment_output(rep, common.format, common.out_path);
    if (common.format == "csv") emit(summary, "");
  });

  // --- oracle -------------------------------------------------------------------
  int points_per_axis = 31, starts = 20;
  bool use_multistart = false;
  std::optional<double> grid_tol;
  double grid_tol_value = 0.0;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  oracle_cmd->add_option("--instance", common.instance_path)->required();
  oracle_cmd->add_option("--box-lo", box_lo)->expected(-1);
  oracle_cmd->add_option("--box-hi", box_hi)->expected(-1);
  oracle_cmd->add_option("--points", points_per_axis);
  auto* tol_opt = oracle_cmd->add_option("--tol", grid_tol_value);
  oracle_cmd->add_flag("--multistart", use_multistart);
  oracle_cmd->add_option("--starts", starts);
  oracle_cmd->add_option("--seed", common.seed);
  oracle_cmd->add_option("--out", common.out_path);
  oracle_cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  oracle_cmd->callback([&]() {
    QcqpInstance inst = load_instance(common.instance_path);
    json j;
    if (use_multistart) {
      RngStream rng(common.seed, 0x0AC1E);
      MultistartResult r = multistart_upper_bound(inst, starts, rng);
      j["method"] = "multistart";
      j["label"] = "UpperBoundOnly";
      j["found"] = r.found;
      if (r.found) {
        j["value"] = r.value;
        j["argmin"] = vector_to_json(r.argmin);
      }
    } else {
      if (box_lo.empty() || box_hi.empty()) {
        throw UsageError("grid oracle requires --box-lo/--box-hi");
      }
      GridSpec spec;
      spec.lower = to_vector(box_lo);
      spec.upper = to_vector(box_hi);
      spec.points_per_axis = points_per_axis;
      if (tol_opt->count() > 0) spec.feasibility_tol = grid_tol_value;
      GridResult r = grid_opt(inst, spec);
      j["method"] = "grid";
      j["label"] = "exact-grid";
      j["feasibility_tol"] = r.feasibility_tol_used;
      j["found"] = r.feasible_point_found;
      if (r.feasible_point_found) {
        j["value"] = r.value;
        j["argmin"] = vector_to_json(r.argmin);
      } else {
        j["value"] = "inf";
      }
    }
    if (common.format == "csv") {
      std::ostringstream csv;
      csv << "# qcqp_exact_csv v1 experiment=oracle\n";
      csv << "method,label,found,value";
      for (int i = 0; i < inst.n(); ++i) csv << ",x" << i;
      csv << "\n";
      csv << j["method"].get<std::string>() << "," << j["label"].get<std::string>()
          << "," << (j["found"].get<bool>() ? 1 : 0) << ",";
      csv << (j["value"].is_number() ? format_double(j["value"].get<double>())
                                     : std::string("inf"));
      for (int i = 0; i < inst.n(); ++i) {
        csv << ","
            << (j.contains("argmin") ? format_double(j["argmin"][i].get<double>())
                                     : std::string(""));
      }
      csv << "\n";
      emit_text(csv.str(), common.out_path);
    } else {
      emit(j, common.out_path);
    }
  });

  // --- phi -----------------------------------------------------------------------
  double r_value = 0.5;
  auto* phi_cmd = app.add_subcommand("phi", "sphere-cap function and quadrature");
  phi_cmd->add_option("--r", r_value)->required();
  phi_cmd->add_option("--out", common.out_path);
  phi_cmd->callback([&]() {
    json j;
    j["r"] = r_value;
    j["phi"] = phi(r_value);
    j["quadrature"] = phi_semicircle_quadrature(r_value);
    j["abs_err"] = std::abs(j["phi"].get<double>() - j["quadrature"].get<double>());
    emit(j, common.out_path);
  });

  std::vector<const char*> argv;
  argv.push_back("qcqp_exact");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"] = "UsageError";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}

}  // namespace qcqp::cli
