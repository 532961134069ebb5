#include "nevpick/io.hpp"

#include <cmath>
#include <fstream>

namespace nevpick::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::invalid_input, msg); }

double parse_finite(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(std::string(what) + " must be finite");
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

Eigen::Index parse_index(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) bad(std::string(what) + " must be nonnegative");
  return static_cast<Eigen::Index>(v);
}

std::vector<BallPoint> parse_nodes(const json& j, int n) {
  if (!j.is_array() || j.empty()) bad("\"nodes\" must be a nonempty array");
  std::vector<BallPoint> nodes;
  for (const json& pt : j) {
    if (!pt.is_array() || static_cast<int>(pt.size()) != n) {
      bad("every node needs exactly n = " + std::to_string(n) + " coordinates");
    }
    std::vector<cplx> c;
    for (const json& x : pt) c.push_back(parse_complex(x));
    nodes.emplace_back(std::move(c));
  }
  return nodes;
}

json nodes_to_json(const std::vector<BallPoint>& nodes) {
  json out = json::array();
  for (const BallPoint& z : nodes) out.push_back(vector_to_json(z.coords()));
  return out;
}

}  // namespace

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json vector_to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& c : v) out.push_back(complex_to_json(c));
  return out;
}

json matrix_to_json(const CMatrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

cplx parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("complex scalars are [re, im] pairs");
  return {parse_finite(j[0], "real part"), parse_finite(j[1], "imaginary part")};
}

CMatrix parse_matrix(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  if (rows == 0 || cols == 0) {
    if (!j.empty() && static_cast<Eigen::Index>(j.size()) != rows) bad("matrix shape mismatch");
    for (const json& row : j) {
      if (!row.is_array() || !row.empty()) bad("matrix shape mismatch");
    }
    return CMatrix(rows, cols);
  }
  if (static_cast<Eigen::Index>(j.size()) != rows) bad("matrix has wrong number of rows");
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      bad("matrix has wrong number of columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) out(i, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return out;
}

CMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    bad("matrix must be a nonempty array of nonempty rows");
  }
  return parse_matrix(j, static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
}

json kernel_to_json(const DiagonalKernel& k) {
  json out;
  if (k.closed_form()) {
    out["type"] = "power";
    out["lambda"] = *k.closed_form();
  } else {
    out["type"] = "diagonal";
    out["coefficients"] = k.coefficients(k.truncation());
    out["truncation"] = k.truncation();
  }
  return out;
}

DiagonalKernel parse_kernel(const json& j, bool allow_zero_lambda) {
  const json& type = field(j, "type");
  if (!type.is_string()) bad("kernel \"type\" must be a string");
  const auto t = type.get<std::string>();
  if (t == "power") {
    const double lambda = parse_finite(field(j, "lambda"), "lambda");
    return allow_zero_lambda ? DiagonalKernel::power_unchecked(lambda) : DiagonalKernel::power(lambda);
  }
  if (t == "diagonal") {
    const json& cs = field(j, "coefficients");
    if (!cs.is_array()) bad("\"coefficients\" must be an array");
    std::vector<double> a;
    for (const json& c : cs) a.push_back(parse_finite(c, "coefficient"));
    std::optional<int> trunc;
    if (j.contains("truncation")) trunc = static_cast<int>(parse_index(j["truncation"], "truncation"));
    return DiagonalKernel::from_coefficients(std::move(a), trunc);
  }
  bad("unknown kernel type \"" + t + "\"");
}

json problem_to_json(const InterpolationProblem& problem) {
  json out;
  out["n"] = problem.n();
  out["kernel"] = kernel_to_json(problem.kernel());
  out["nodes"] = nodes_to_json(problem.nodes());
  json targets = json::array();
  for (const CMatrix& w : problem.targets()) targets.push_back(matrix_to_json(w));
  out["targets"] = std::move(targets);
  return out;
}

InterpolationProblem parse_problem(const json& j) {
  const json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) bad("\"n\" must be an integer >= 1");
  const int n = nj.get<int>();
  DiagonalKernel kernel = parse_kernel(field(j, "kernel"));
  std::vector<BallPoint> nodes = parse_nodes(field(j, "nodes"), n);
  const json& tj = field(j, "targets");
  if (!tj.is_array()) bad("\"targets\" must be an array");
  std::vector<CMatrix> targets;
  for (const json& w : tj) targets.push_back(parse_matrix(w));
  return InterpolationProblem(n, std::move(kernel), std::move(nodes), std::move(targets));
}

json solution_to_json(const RealizedMultiplier& rm) {
  json out;
  out["schema"] = kSchemaVersion;
  out["problem_hash"] = rm.problem_hash;
  out["dims"] = {{"n", rm.dims.n}, {"m", rm.dims.m}, {"p", rm.dims.p}, {"q", rm.dims.q}, {"r", rm.dims.r}};
  out["colligation"] = {{"A", matrix_to_json(rm.colligation.a)},
                        {"B", matrix_to_json(rm.colligation.b)},
                        {"C", matrix_to_json(rm.colligation.c)},
                        {"D", matrix_to_json(rm.colligation.d)}};
  out["ktilde"] = kernel_to_json(rm.ktilde_model.kernel);
  out["ktilde_factor"] = matrix_to_json(rm.ktilde_model.chol);
  out["nodes"] = nodes_to_json(rm.ktilde_model.nodes);
  return out;
}

RealizedMultiplier parse_solution(const json& j) {
  const json& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion) {
    bad("unsupported solution schema");
  }
  RealizedMultiplier rm;
  const json& hash = field(j, "problem_hash");
  if (!hash.is_string()) bad("\"problem_hash\" must be a string");
  rm.problem_hash = hash.get<std::string>();

  const json& dims = field(j, "dims");
  const Eigen::Index n = parse_index(field(dims, "n"), "n");
  if (n < 1) bad("dims.n must be >= 1");
  rm.dims.n = static_cast<int>(n);
  rm.dims.m = parse_index(field(dims, "m"), "m");
  rm.dims.p = parse_index(field(dims, "p"), "p");
  rm.dims.q = parse_index(field(dims, "q"), "q");
  rm.dims.r = parse_index(field(dims, "r"), "r");
  const auto [dn, m, p, q, r] = rm.dims;
  if (m < 1 || p < 1 || q < 1) bad("dims m, p, q must be >= 1");

  const json& coll = field(j, "colligation");
  rm.colligation.a = parse_matrix(field(coll, "A"), r, dn * r);
  rm.colligation.b = parse_matrix(field(coll, "B"), r, m * q);
  rm.colligation.c = parse_matrix(field(coll, "C"), p, dn * r);
  rm.colligation.d = parse_matrix(field(coll, "D"), p, m * q);

  DiagonalKernel ktilde = parse_kernel(field(j, "ktilde"), true);
  std::vector<BallPoint> nodes = parse_nodes(field(j, "nodes"), dn);
  if (static_cast<Eigen::Index>(nodes.size()) != m) bad("node count does not match dims.m");
  CMatrix chol = parse_matrix(field(j, "ktilde_factor"), m, m);
  HermitianMatrix g = gram(ktilde, nodes);
  rm.ktilde_model = NodeSpanModel{std::move(ktilde), std::move(nodes), q, std::move(g), std::move(chol)};
  return rm;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace nevpick::io
