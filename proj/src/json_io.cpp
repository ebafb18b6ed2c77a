#include "qcqp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace qcqp {

namespace {

void require_fields(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw InvalidInstance("unknown field '" + it.key() + "' in " + where);
    }
  }
}

QuadraticForm form_from_json(const json& j, const std::string& where) {
  require_fields(j, {"A", "b", "c", "sense"}, where);
  if (!j.contains("A") || !j.contains("b") || !j.contains("c")) {
    throw InvalidInstance(where + " must contain A, b, c");
  }
  MatrixXd a = matrix_from_json(j.at("A"));
  if (a.rows() != a.cols()) {
    throw InvalidInstance(where + ": A must be square");
  }
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw InvalidInstance(where + ": A is not symmetric (tolerance 1e-12)");
  }
  VectorXd b = vector_from_json(j.at("b"));
  return QuadraticForm(SymmetricMatrix(a), b, j.at("c").get<double>());
}

}  // namespace

json vector_to_json(const VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInstance("expected array for vector");
  VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

json matrix_to_json(const MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(m(i, j2));
    out.push_back(row);
  }
  return out;
}

MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInstance("expected 2-D array");
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw InvalidInstance("ragged matrix rows");
    }
    for (size_t k = 0; k < cols; ++k) {
      m(static_cast<int>(i), static_cast<int>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

QcqpInstance instance_from_json(const json& j) {
  require_fields(j, {"n", "objective", "constraints"}, "instance");
  if (!j.contains("n") || !j.contains("objective") || !j.contains("constraints")) {
    throw InvalidInstance("instance must contain n, objective, constraints");
  }
  const int n = j.at("n").get<int>();
  QuadraticForm obj = form_from_json(j.at("objective"), "objective");
  if (j.at("objective").contains("sense")) {
    throw InvalidInstance("objective must not carry a sense");
  }
  if (obj.dim() != n) throw InvalidInstance("objective dimension != n");

  std::vector<Constraint> constraints;
  for (const auto& cj : j.at("constraints")) {
    QuadraticForm f = form_from_json(cj, "constraint");
    if (!cj.contains("sense")) throw InvalidInstance("constraint missing sense");
    const std::string sense = cj.at("sense").get<std::string>();
    ConstraintSense s;
    if (sense == "le") {
      s = ConstraintSense::kInequality;
    } else if (sense == "eq") {
      s = ConstraintSense::kEquality;
    } else {
      throw InvalidInstance("sense must be 'le' or 'eq'");
    }
    if (f.dim() != n) throw InvalidInstance("constraint dimension != n");
    constraints.push_back(Constraint{std::move(f), s});
  }
  return QcqpInstance(std::move(obj), std::move(constraints));
}

json instance_to_json(const QcqpInstance& inst) {
  json j;
  j["n"] = inst.n();
  j["objective"] = {{"A", matrix_to_json(inst.objective().A.mat())},
                    {"b", vector_to_json(inst.objective().b)},
                    {"c", inst.objective().c}};
  j["constraints"] = json::array();
  for (int i = 0; i < inst.m(); ++i) {
    const auto& c = inst.constraint(i);
    j["constraints"].push_back(
        {{"A", matrix_to_json(c.form.A.mat())},
         {"b", vector_to_json(c.form.b)},
         {"c", c.form.c},
         {"sense", c.sense == ConstraintSense::kInequality ? "le" : "eq"}});
  }
  return j;
}

QcqpInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open instance file: " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

void save_instance(const QcqpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInstance("cannot open output file: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qcqp
