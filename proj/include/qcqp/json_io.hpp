#pragma once

#include <string>

#include <json.hpp>

#include "qcqp/model.hpp"

namespace qcqp {

using nlohmann::json;

/// Instance schema:
///   { "n": int,
///     "objective":   {"A": [[..]], "b": [..], "c": f},
///     "constraints": [{"A": .., "b": .., "c": .., "sense": "le"|"eq"}, ..] }
/// A is dense row-major; asymmetry beyond 1e-12 (relative) is rejected, as
/// are unknown fields.
QcqpInstance instance_from_json(const json& j);
json instance_to_json(const QcqpInstance& inst);

QcqpInstance load_instance(const std::string& path);
void save_instance(const QcqpInstance& inst, const std::string& path);

json vector_to_json(const VectorXd& v);
VectorXd vector_from_json(const json& j);
json matrix_to_json(const MatrixXd& m);
MatrixXd matrix_from_json(const json& j);

/// Floating-point to string with 17 significant digits (re-checkable output).
std::string format_double(double v);

}  // namespace qcqp
