#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcqp/certifier.hpp"
#include "qcqp/cli.hpp"
#include "qcqp/dual_solver.hpp"
#include "qcqp/json_io.hpp"
#include "qcqp/oracle.hpp"
#include "qcqp/random_experiments.hpp"
#include "qcqp/structured.hpp"

namespace py = pybind11;
using namespace qcqp;

namespace {

py::object json_to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json cert_json(const Certificate& c) {
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

json solution_json(const DualSolution& sol) {
  json j;
  j["opt_sdp"] = sol.opt_sdp;
  j["gamma_star"] = vector_to_json(sol.gamma_star.gamma);
  j["lambda_min"] = sol.lambda_min_at_star;
  j["status"] = sol.status == SolveStatus::kConverged
                    ? "Converged"
                    : (sol.status == SolveStatus::kUnbounded ? "Unbounded"
                                                             : "MaxIter");
  if (sol.x_star) j["x_star"] = vector_to_json(*sol.x_star);
  return j;
}

ConstraintSense sense_of(const std::string& s) {
  if (s == "le") return ConstraintSense::kInequality;
  if (s == "eq") return ConstraintSense::kEquality;
  throw UsageError("sense must be 'le' or 'eq'");
}

CertifyOptions::FaceMode mode_of(const std::string& s) {
  if (s == "generic") return CertifyOptions::FaceMode::kGeneric;
  if (s == "soc") return CertifyOptions::FaceMode::kSoc;
  if (s == "partition") return CertifyOptions::FaceMode::kPartition;
  throw UsageError("mode must be generic|soc|partition");
}

json report_json(const ExperimentReport& rep) {
  json j;
  j["experiment"] = rep.experiment;
  j["config"] = rep.config;
  j["columns"] = rep.columns;
  j["rows"] = rep.rows;
  j["summary"] = rep.summary;
  return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QCQP modeling, Shor-SDP dual solving and exactness certification";

  py::register_exception<Error>(m, "QcqpError");

  // --- linear algebra kernel -------------------------------------------------
  m.def(
      "eigh",
      [](const MatrixXd& s) {
        EigenDecomposition ed = eigh(SymmetricMatrix(s));
        return py::make_tuple(ed.eigenvalues, ed.eigenvectors);
      },
      py::arg("matrix"),
      "Eigendecomposition of a symmetric matrix; ascending eigenvalues.");
  m.def(
      "solve_pd",
      [](const MatrixXd& s, const VectorXd& v) {
        return solve_pd(SymmetricMatrix(s), v);
      },
      py::arg("matrix"), py::arg("rhs"));
  m.def(
      "kernel_basis",
      [](const MatrixXd& s, double rel_tol) {
        return kernel_basis(SymmetricMatrix(s), rel_tol).vectors;
      },
      py::arg("matrix"), py::arg("rel_tol") = kDefaultKernelRelTol);
  m.def(
      "kron_identity",
      [](int k, const MatrixXd& a) {
        return kron_identity(k, SymmetricMatrix(a)).mat();
      },
      py::arg("k"), py::arg("matrix"));

  // --- instance model ----------------------------------------------------------
  py::class_<QcqpInstance>(m, "Instance")
      .def_property_readonly("n", &QcqpInstance::n)
      .def_property_readonly("m", &QcqpInstance::m)
      .def_property_readonly("m_inequality", &QcqpInstance::m_inequality)
      .def_property_readonly("m_equality", &QcqpInstance::m_equality)
      .def("to_json", [](const QcqpInstance& inst) {
        return instance_to_json(inst).dump();
      })
      .def_static("from_json", [](const std::string& text) {
        return instance_from_json(json::parse(text));
      })
      .def("objective_value",
           [](const QcqpInstance& inst, const VectorXd& x) {
             return evaluate(inst.objective(), x);
           })
      .def("constraint_value",
           [](const QcqpInstance& inst, int i, const VectorXd& x) {
             return evaluate(inst.constraint(i).form, x);
           })
      .def("residual",
           [](const QcqpInstance& inst, const VectorXd& x, double t) {
             return residual(inst, {x, t});
           })
      .def("feasible",
           [](const QcqpInstance& inst, const VectorXd& x, double tol) {
             return feasible(inst, x, tol);
           },
           py::arg("x"), py::arg("tol") = 1e-8)
      .def("aggregate",
           [](const QcqpInstance& inst, double gamma_obj, const VectorXd& gamma) {
             QuadraticForm f = aggregate(inst, Multiplier(gamma_obj, gamma));
             return py::make_tuple(f.A.mat(), f.b, f.c);
           })
      .def("gamma_membership",
           [](const QcqpInstance& inst, double gamma_obj, const VectorXd& gamma,
              double tol) {
             return gamma_membership(inst, Multiplier(gamma_obj, gamma), tol);
           },
           py::arg("gamma_obj"), py::arg("gamma"),
           py::arg("tol") = kDefaultMembershipTol)
      .def("strictly_feasible_multiplier", [](const QcqpInstance& inst) {
        StrictMultiplierSearch res = strictly_feasible_multiplier(inst);
        json j;
        j["found"] = res.multiplier.has_value();
        j["lambda_min"] = res.lambda_min_achieved;
        j["target"] = res.target;
        if (res.multiplier) j["gamma"] = vector_to_json(res.multiplier->gamma);
        return json_to_py(j);
      });

  m.def(
      "build_instance",
      [](const MatrixXd& a_obj, const VectorXd& b_obj, double c_obj,
         const std::vector<std::tuple<MatrixXd, VectorXd, double, std::string>>&
             constraints) {
        std::vector<Constraint> cons;
        for (const auto& [a, b, c, sense] : constraints) {
          cons.push_back({QuadraticForm(SymmetricMatrix(a), b, c), sense_of(sense)});
        }
        return QcqpInstance(QuadraticForm(SymmetricMatrix(a_obj), b_obj, c_obj),
                            std::move(cons));
      },
      py::arg("A_obj"), py::arg("b_obj"), py::arg("c_obj"), py::arg("constraints"));

  // --- dual solver ----------------------------------------------------------------
  py::class_<DualSolver>(m, "Solver")
      .def(py::init([](const QcqpInstance& inst) { return DualSolver(inst); }))
      .def_property_readonly("assumption_holds", &DualSolver::assumption_holds)
      .def("solve",
           [](const DualSolver& s) { return json_to_py(solution_json(s.solve())); })
      .def("dual_value",
           [](const DualSolver& s, const VectorXd& gamma) {
             DualValueResult v = s.dual_value(gamma);
             json j;
             j["finite"] = v.finite;
             j["value"] = v.finite ? json(v.value) : json("-inf");
             if (v.minimizer) j["minimizer"] = vector_to_json(*v.minimizer);
             return json_to_py(j);
           })
      .def("epigraph_height",
           [](const DualSolver& s, const VectorXd& x) {
             EpigraphHeightResult h = s.epigraph_height(x);
             json j;
             j["finite"] = h.finite;
             j["tau"] = h.finite ? json(h.tau) : json("inf");
             j["gamma_center"] = vector_to_json(h.gamma_center);
             return json_to_py(j);
           })
      .def("membership", [](const DualSolver& s, const VectorXd& x, double t) {
        MembershipLabel label = s.membership({x, t});
        return label == MembershipLabel::kIn
                   ? "In"
                   : (label == MembershipLabel::kOut ? "Out" : "Boundary");
      });

  // --- certification ------------------------------------------------------------
  m.def(
      "certify_point",
      [](const DualSolver& solver, const VectorXd& x, double t,
         const std::string& mode) {
        CertifyOptions opts;
        opts.mode = mode_of(mode);
        return json_to_py(cert_json(certify_convex_hull_point(solver, {x, t}, opts)));
      },
      py::arg("solver"), py::arg("x"), py::arg("t"), py::arg("mode") = "generic");
  m.def(
      "certify_hull",
      [](const DualSolver& solver, const VectorXd& lo, const VectorXd& hi,
         int samples, uint64_t seed, const std::string& mode) {
        HullSamplingConfig cfg{lo, hi, samples, seed};
        CertifyOptions opts;
        opts.mode = mode_of(mode);
        return json_to_py(cert_json(certify_hull(solver, cfg, opts)));
      },
      py::arg("solver"), py::arg("box_lo"), py::arg("box_hi"),
      py::arg("samples") = 200, py::arg("seed") = 0, py::arg("mode") = "generic");
  m.def(
      "certify_objective",
      [](const DualSolver& solver, double delta) {
        DualSolution sol = solver.solve();
        json j;
        j["solution"] = solution_json(sol);
        j["dual_interior"] = cert_json(dual_interior_certificate(solver, sol, delta));
        return json_to_py(j);
      },
      py::arg("solver"), py::arg("delta") = 1e-6);
  m.def(
      "kernel_obstruction",
      [](const DualSolver& solver, const VectorXd& gamma) {
        return json_to_py(cert_json(kernel_obstruction(solver, gamma)));
      },
      py::arg("solver"), py::arg("gamma"));
  m.def(
      "steepness_certificate",
      [](const DualSolver& solver, const VectorXd& gamma, const VectorXd& delta) {
        return json_to_py(cert_json(steepness_certificate(solver, gamma, delta)));
      },
      py::arg("solver"), py::arg("gamma"), py::arg("delta"));
  m.def(
      "polyhedral_certify",
      [](const DualSolver& solver, const std::vector<VectorXd>& generators,
         const std::vector<std::pair<VectorXd, double>>& samples) {
        std::vector<Multiplier> gens;
        for (const auto& g : generators) {
          if (g.size() != solver.instance().m() + 1) {
            throw UsageError("generator length must be 1 + m");
          }
          gens.emplace_back(g(0), VectorXd(g.tail(solver.instance().m())));
        }
        std::vector<EpigraphPoint> pts;
        for (const auto& [x, t] : samples) pts.push_back({x, t});
        return json_to_py(cert_json(polyhedral_certify(solver, gens, pts)));
      },
      py::arg("solver"), py::arg("generators"), py::arg("samples"),
      "Generators are (gamma_obj, gamma...) rows; samples are (x, t) pairs.");

  // --- structured forms ------------------------------------------------------------
  m.def("example1_instance", &example1_instance);
  m.def("example1_gamma_membership", &example1_gamma_membership);
  m.def("mixed_binary_instance", &mixed_binary_instance);
  m.def("mixed_binary_ssdp", &mixed_binary_ssdp);
  m.def("mixed_binary_perspective", &mixed_binary_perspective);
  m.def(
      "mixed_binary_rounding_space",
      [](double x1, double x2, double t) {
        return mixed_binary_rounding_space(x1, x2, t);
      },
      py::arg("x1"), py::arg("x2"), py::arg("t"));
  m.def("partition_instance", [](const VectorXd& a) {
    return partition_build(PartitionInstance(a));
  });
  m.def("partition_opt_sdp",
        [](const VectorXd& a) { return partition_opt_sdp(PartitionInstance(a)); });
  m.def("partition_balanced",
        [](const VectorXd& a) { return partition_balanced(PartitionInstance(a)); });
  m.def("partition_ssdp_membership",
        [](const VectorXd& a, const VectorXd& x, double t) {
          return partition_ssdp_membership(PartitionInstance(a), x, t);
        });
  m.def("partition_witness", [](const VectorXd& a) {
    PartitionWitness w = partition_nonexactness_witness(PartitionInstance(a));
    json j;
    j["x"] = vector_to_json(w.x);
    j["t"] = w.t;
    j["second_difference"] = w.second_difference;
    j["coordinate"] = w.coordinate;
    return json_to_py(j);
  });
  m.def("partition_enumerate",
        [](const VectorXd& a) { return partition_enumerate(PartitionInstance(a)); });
  m.def(
      "build_qmp",
      [](int r, int k, const MatrixXd& a_obj, const MatrixXd& b_obj, double c_obj,
         const std::vector<std::tuple<MatrixXd, MatrixXd, double, std::string>>&
             constraints) {
        QmpBlocks blocks;
        blocks.r = r;
        blocks.k = k;
        blocks.objective = {SymmetricMatrix(a_obj), b_obj, c_obj};
        for (const auto& [a, b, c, sense] : constraints) {
          blocks.constraints.emplace_back(QmpBlock{SymmetricMatrix(a), b, c},
                                          sense_of(sense));
        }
        return qmp_build(blocks);
      },
      py::arg("r"), py::arg("k"), py::arg("A_obj"), py::arg("B_obj"),
      py::arg("c_obj"), py::arg("constraints"));

  // --- oracles -----------------------------------------------------------------------
  m.def(
      "grid_opt",
      [](const QcqpInstance& inst, const VectorXd& lo, const VectorXd& hi,
         int points, std::optional<double> tol) {
        GridSpec spec;
        spec.lower = lo;
        spec.upper = hi;
        spec.points_per_axis = points;
        spec.feasibility_tol = tol;
        GridResult r = grid_opt(inst, spec);
        json j;
        j["found"] = r.feasible_point_found;
        j["value"] = r.feasible_point_found ? json(r.value) : json("inf");
        j["feasibility_tol"] = r.feasibility_tol_used;
        if (r.feasible_point_found) j["argmin"] = vector_to_json(r.argmin);
        return json_to_py(j);
      },
      py::arg("instance"), py::arg("box_lo"), py::arg("box_hi"),
      py::arg("points_per_axis") = 31, py::arg("feasibility_tol") = std::nullopt);
  m.def(
      "fd_gradient_check",
      [](const DualSolver& solver, const VectorXd& gamma, double h) {
        return fd_gradient_check(solver, gamma, h);
      },
      py::arg("solver"), py::arg("gamma"), py::arg("h") = 1e-5);

  // --- random experiments ---------------------------------------------------------
  m.def("phi", &phi, py::arg("r"));
  m.def("phi_semicircle_quadrature", &phi_semicircle_quadrature, py::arg("r"),
        py::arg("tol") = 1e-10);
  m.def(
      "sample_ngoe",
      [](int n, uint64_t seed, uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_ngoe(n, rng).mat();
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "gen_edm_instance",
      [](int n, int m_cons, uint64_t seed, uint64_t stream) {
        RngStream rng(seed, stream);
        return gen_edm_instance(n, m_cons, rng);
      },
      py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "run_edm_experiment",
      [](const std::vector<int>& n_list, int m_cons, int trials, uint64_t seed,
         double delta, int workers) {
        EdmConfig cfg{n_list, m_cons, trials, seed, delta, workers};
        return json_to_py(report_json(edm_exactness_experiment(cfg)));
      },
      py::arg("n_list"), py::arg("m") = 2, py::arg("trials") = 50,
      py::arg("seed") = 0, py::arg("delta") = 1e-6, py::arg("workers") = 1);
  m.def(
      "run_concentration",
      [](int n, int m_cons, const std::vector<double>& radii, int directions,
         uint64_t seed, int workers) {
        ConcentrationConfig cfg{n, m_cons, radii, directions, seed, workers};
        return json_to_py(report_json(concentration_sweep(cfg)));
      },
      py::arg("n") = 400, py::arg("m") = 2,
      py::arg("radii") = std::vector<double>{0.3, 0.5, 0.8},
      py::arg("directions") = 20, py::arg("seed") = 0, py::arg("workers") = 1);
  m.def(
      "run_semirandom",
      [](int n, int m_cons, double eps, int trials, uint64_t seed, int workers) {
        SemirandomConfig cfg{n, m_cons, eps, trials, seed, workers};
        return json_to_py(report_json(semirandom_experiment(cfg)));
      },
      py::arg("n") = 300, py::arg("m") = 2, py::arg("eps") = 0.25,
      py::arg("trials") = 20, py::arg("seed") = 0, py::arg("workers") = 1);

  // --- CLI passthrough -------------------------------------------------------------
  m.def("cli_run", &qcqp::cli::run, py::arg("args"),
        "Run the command-line interface in-process; returns the exit code.");
}
