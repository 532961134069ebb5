#include "nevpick/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "nevpick/io.hpp"
#include "nevpick/lifter.hpp"
#include "nevpick/model.hpp"
#include "nevpick/pick.hpp"

namespace nevpick::cli {

namespace {

using io::json;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::not_psd: return kNegative;
    case Errc::gram_singular:
    case Errc::gram_mismatch: return kNumericError;
    case Errc::invalid_input:
    case Errc::not_regular:
    case Errc::monomial_absent: return kInputError;
  }
  return kInputError;
}

json header(const std::string& command) {
  json j;
  j["schema"] = io::kSchemaVersion;
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int fail(std::ostream& out, std::ostream& err, const std::string& command, const Error& e) {
  json j = header(command);
  j["error"] = {{"kind", errc_name(e.code())}, {"message", e.what()}};
  emit(out, j);
  err << "nevpick " << command << ": " << e.what() << '\n';
  return exit_code_for(e.code());
}

json spectrum_to_json(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  std::vector<cplx> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return io::vector_to_json(ev);
}

double max_node_residual(const InterpolationProblem& problem, const RealizedMultiplier& rm) {
  double res = 0.0;
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    res = std::max(res, spectral_norm(evaluate_multiplier(rm, problem.node(i)) - problem.target(i)));
  }
  return res;
}

int cmd_check(const std::string& path, double tol, std::ostream& out) {
  const InterpolationProblem problem = io::parse_problem(io::read_json_file(path));
  const FeasibilityReport rep = check_feasible(problem, tol);
  json j = header("check");
  j["feasible"] = rep.feasible();
  j["min_eigenvalue"] = rep.report.min_eig;
  j["threshold"] = rep.report.threshold();
  j["rank"] = rep.report.rank;
  j["dim"] = rep.pick.dim();
  j["tol"] = tol;
  j["problem_hash"] = problem_hash(problem);
  emit(out, j);
  return rep.feasible() ? kOk : kNegative;
}

int cmd_solve(const std::string& path, const std::string& out_path, double tol, std::ostream& out) {
  const InterpolationProblem problem = io::parse_problem(io::read_json_file(path));
  const FeasibilityReport rep = check_feasible(problem, tol);
  json j = header("solve");
  j["feasible"] = rep.feasible();
  j["min_eigenvalue"] = rep.report.min_eig;
  j["tol"] = tol;
  if (!rep.feasible()) {
    emit(out, j);
    return kNegative;
  }
  const RealizedMultiplier rm = realize(problem, rep, tol);
  std::ofstream file(out_path);
  if (!file) throw Error(Errc::invalid_input, "cannot write solution to " + out_path);
  file << io::solution_to_json(rm).dump(2) << '\n';
  file.close();
  if (!file) throw Error(Errc::invalid_input, "failed writing solution to " + out_path);
  j["rank"] = rm.dims.r;
  j["node_residual"] = max_node_residual(problem, rm);
  j["colligation_norm"] = rm.colligation.norm();
  j["problem_hash"] = rm.problem_hash;
  j["solution"] = out_path;
  emit(out, j);
  return kOk;
}

int cmd_verify(const std::string& problem_path, const std::string& solution_path,
               const VerifyOptions& opts, std::ostream& out) {
  const InterpolationProblem problem = io::parse_problem(io::read_json_file(problem_path));
  const RealizedMultiplier rm = io::parse_solution(io::read_json_file(solution_path));
  const std::string hash = problem_hash(problem);
  if (rm.problem_hash != hash) {
    throw Error(Errc::invalid_input, "solution was built for problem " + rm.problem_hash +
                                         ", not " + hash);
  }
  if (rm.dims.n != problem.n() || rm.dims.m != problem.m() || rm.dims.p != problem.p() ||
      rm.dims.q != problem.q()) {
    throw Error(Errc::invalid_input, "solution dimensions do not match the problem");
  }
  const VerificationReport rep = verify_solution(problem, rm, opts);
  json j = header("verify");
  j["passed"] = rep.passed();
  j["node_residual"] = rep.node_residual;
  j["node_tol"] = opts.node_tol;
  j["colligation_norm"] = rep.colligation_norm;
  j["defect_min_eigenvalue"] = rep.defect_min_eig;
  j["defect_threshold"] = rep.defect_threshold;
  j["defect_dim"] = rep.defect_dim;
  j["samples"] = opts.samples;
  j["seed"] = opts.seed;
  j["radius"] = opts.radius;
  j["tol"] = opts.tol;
  j["problem_hash"] = hash;
  emit(out, j);
  return rep.passed() ? kOk : kNegative;
}

std::vector<double> parse_coefficient_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(Errc::invalid_input, "bad coefficient \"" + item + "\"");
    }
    if (used != item.size()) throw Error(Errc::invalid_input, "bad coefficient \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::invalid_input, "empty coefficient list");
  return out;
}

int cmd_kernel_factor(const std::optional<double>& lambda,
                      const std::optional<std::string>& coefficients,
                      const std::optional<int>& truncation, int degree, std::ostream& out,
                      std::ostream& err) {
  if (lambda.has_value() == coefficients.has_value()) {
    throw Error(Errc::invalid_input, "give exactly one of --lambda or --coefficients");
  }
  if (degree < 0) throw Error(Errc::invalid_input, "--degree must be >= 0");
  const DiagonalKernel k = lambda ? DiagonalKernel::power(*lambda)
                                  : DiagonalKernel::from_coefficients(
                                        parse_coefficient_list(*coefficients), truncation);
  json j = header("kernel factor");
  j["kernel"] = io::kernel_to_json(k);
  j["degree"] = degree;
  try {
    const DiagonalKernel kt = factor_regular(k);
    j["regular"] = true;
    j["ktilde"] = io::kernel_to_json(kt);
    j["coefficients"] = kt.coefficients(degree);
    emit(out, j);
    return kOk;
  } catch (const Error& e) {
    if (e.code() != Errc::not_regular) throw;
    j["regular"] = false;
    j["error"] = {{"kind", errc_name(e.code())}, {"message", e.what()}};
    emit(out, j);
    err << "nevpick kernel factor: " << e.what() << '\n';
    return kNegative;
  }
}

json model_summary(const NodeSpanModel& model) {
  json j;
  j["gram"] = io::matrix_to_json(model.gram.matrix());
  j["cholesky"] = io::matrix_to_json(model.chol);
  json shifts = json::array();
  for (int l = 0; l < model.n(); ++l) {
    const CMatrix s = compressed_shift(model, l);
    shifts.push_back({{"coordinate", l}, {"matrix", io::matrix_to_json(s)}, {"spectrum", spectrum_to_json(s)}});
  }
  j["shifts"] = std::move(shifts);
  j["row_contraction_min_eigenvalue"] = row_contraction_min_eig(model);
  return j;
}

int cmd_model(const std::string& path, std::ostream& out) {
  const InterpolationProblem problem = io::parse_problem(io::read_json_file(path));
  const IntertwinerModel xm = intertwiner_X(problem);
  const NodeSpanModel kt = build_factor_model(problem.ktilde(), problem.nodes(), problem.q());
  const DilationResiduals dil = dilation_check(problem);
  const PsdReport gap = psd_report(xm.contraction_gap, kDefaultTol);

  json j = header("model");
  j["n"] = problem.n();
  j["m"] = problem.m();
  j["p"] = problem.p();
  j["q"] = problem.q();
  j["kernel"] = io::kernel_to_json(problem.kernel());
  j["ktilde"] = io::kernel_to_json(problem.ktilde());
  j["source"] = model_summary(xm.source);
  j["dest"] = model_summary(xm.dest);
  j["ktilde_gram"] = io::matrix_to_json(kt.gram.matrix());
  j["intertwiner"] = {{"x", io::matrix_to_json(xm.x_mat)},
                      {"contraction_gap", io::matrix_to_json(xm.contraction_gap.matrix())},
                      {"min_eigenvalue", gap.min_eig},
                      {"contractive", gap.is_psd}};
  j["dilation"] = {{"isometry_residual", dil.isometry}, {"intertwining_residual", dil.intertwining}};
  emit(out, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nevanlinna-Pick interpolation from the Drury-Arveson space into regular kernel spaces",
               "nevpick"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::string problem_path;
  std::string solution_path;
  std::string out_path;
  VerifyOptions vopts;
  std::optional<double> lambda;
  std::optional<std::string> coefficients;
  std::optional<int> truncation;
  int degree = 10;

  auto* check = app.add_subcommand("check", "Decide feasibility from the Pick matrix");
  check->add_option("problem", problem_path, "Problem JSON")->required();
  check->add_option("--tol", tol, "Relative PSD tolerance")->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "Construct an interpolating multiplier");
  solve_cmd->add_option("problem", problem_path, "Problem JSON")->required();
  solve_cmd->add_option("--out", out_path, "Solution JSON to write")->required();
  solve_cmd->add_option("--tol", tol, "Relative PSD tolerance")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check a solution against its problem");
  verify->add_option("problem", problem_path, "Problem JSON")->required();
  verify->add_option("solution", solution_path, "Solution JSON")->required();
  verify->add_option("--samples", vopts.samples, "Defect-kernel sample points")->capture_default_str();
  verify->add_option("--seed", vopts.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--radius", vopts.radius, "Sampling radius in (0, 1)")->capture_default_str();
  verify->add_option("--tol", vopts.tol, "Relative PSD tolerance")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "Kernel utilities");
  kernel->require_subcommand(1);
  auto* factor = kernel->add_subcommand("factor", "Factor k = k_1 * ktilde");
  factor->add_option("--lambda", lambda, "Power kernel weight");
  factor->add_option("--coefficients", coefficients, "Comma-separated a_0,a_1,...");
  factor->add_option("--truncation", truncation, "Truncation degree for --coefficients");
  factor->add_option("--degree", degree, "Coefficients to print")->capture_default_str();

  auto* model = app.add_subcommand("model", "Inspect node-span models");
  model->add_option("problem", problem_path, "Problem JSON")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("nevpick");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "nevpick: " << e.what() << '\n' << app.help();
    return kInputError;
  }

  std::string command = "nevpick";
  const auto started = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (check->parsed()) {
      command = "check";
      code = cmd_check(problem_path, tol, out);
    } else if (solve_cmd->parsed()) {
      command = "solve";
      code = cmd_solve(problem_path, out_path, tol, out);
    } else if (verify->parsed()) {
      command = "verify";
      code = cmd_verify(problem_path, solution_path, vopts, out);
    } else if (factor->parsed()) {
      command = "kernel factor";
      code = cmd_kernel_factor(lambda, coefficients, truncation, degree, out, err);
    } else if (model->parsed()) {
      command = "model";
      code = cmd_model(problem_path, out);
    }
  } catch (const Error& e) {
    return fail(out, err, command, e);
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  err << "nevpick " << command << ": " << elapsed.count() << " ms\n";
  return code;
}

}  // namespace nevpick::cli
