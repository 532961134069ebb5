#pragma once

#include <string>

#include <json.hpp>

#include "nevpick/lifter.hpp"
#include "nevpick/pick.hpp"

namespace nevpick::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Complex scalars are [re, im]; matrices are arrays of rows.
json complex_to_json(cplx v);
json matrix_to_json(const CMatrix& a);
json vector_to_json(const std::vector<cplx>& v);

cplx parse_complex(const json& j);
/// Rejects shapes other than rows x cols; rows == 0 or cols == 0 accepts [].
CMatrix parse_matrix(const json& j, Eigen::Index rows, Eigen::Index cols);
/// Infers the shape from the first row.
CMatrix parse_matrix(const json& j);

/// {"type":"power","lambda":x} or {"type":"diagonal","coefficients":[..],"truncation":D}
json kernel_to_json(const DiagonalKernel& k);
/// allow_zero_lambda admits the constant kernel {"type":"power","lambda":0}.
DiagonalKernel parse_kernel(const json& j, bool allow_zero_lambda = false);

json problem_to_json(const InterpolationProblem& problem);
/// All schema violations surface as Errc::invalid_input.
InterpolationProblem parse_problem(const json& j);

json solution_to_json(const RealizedMultiplier& rm);
RealizedMultiplier parse_solution(const json& j);

/// Reads and parses a JSON file; unreadable files and syntax errors are
/// Errc::invalid_input.
json read_json_file(const std::string& path);

}  // namespace nevpick::io
