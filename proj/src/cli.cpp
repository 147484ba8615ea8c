#include "ccb/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccb/ccb.hpp"
#include "ccb/core.hpp"
#include "ccb/hardness.hpp"
#include "ccb/io.hpp"
#include "ccb/oracle.hpp"
#include "ccb/planar.hpp"
#include "ccb/uq.hpp"

namespace ccb::cli {

using nlohmann::json;

namespace {

struct Flags {
  std::string file;
  std::string out;
  std::string format = "json";
  std::string method;
  double tol = 1e-9;
  double eps = 1e-5;
  std::uint64_t seed = 1;
  int max_iter = 0;
  long long budget = 10'000'000;
  int samples = 10000;
  double grid_step = 0.01;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_text(const std::string& text, const Flags& f, std::ostream& out, std::ostream& err) {
  if (!f.out.empty()) {
    std::ofstream file(f.out);
    if (!file) throw SolverError(ErrorCode::Usage, "cannot write '" + f.out + "'");
    file << text << "\n";
  } else {
    out << text << "\n";
  }
  (void)err;
}

void emit_result(json result, const Flags& f, const Timer& timer, const std::string& summary,
                 std::ostream& out, std::ostream& err) {
  result["wall_ms"] = timer.ms();
  result["seed"] = f.seed;
  result["tolerances"] = {{"tol", f.tol}, {"eps", f.eps}, {"budget", f.budget}};
  if (!result.contains("status")) result["status"] = "ok";
  err << summary << "\n";
  if (f.format == "text")
    write_text(summary, f, out, err);
  else
    write_text(result.dump(), f, out, err);
}

CcbInstance require_ccb(const io::Instance& inst) {
  if (const CcbInstance* p = std::get_if<CcbInstance>(&inst)) return *p;
  throw SolverError(ErrorCode::Usage, "this command expects a ball instance (kind 'ccb')");
}

UqInstance require_uq(const io::Instance& inst) {
  if (const UqInstance* p = std::get_if<UqInstance>(&inst)) return *p;
  throw SolverError(ErrorCode::Usage, "this command expects kind 'uq'");
}

const char* trichotomy_name(TrichotomyCase c) {
  switch (c) {
    case TrichotomyCase::LpTight: return "A";
    case TrichotomyCase::SdpTight: return "B";
    case TrichotomyCase::LpEqualsSdp: return "C";
    case TrichotomyCase::Unbounded: return "unbounded";
  }
  return "?";
}

json uq_solution_json(const UqSolution& sol) {
  json cert;
  switch (sol.certificate) {
    case UqCertificate::ExactEnumeration:
      cert = {{"type", "enumeration"}, {"active_set", sol.active_set}, {"root", sol.root_index}};
      break;
    case UqCertificate::ExactLpTight:
      cert = {{"type", "lp_tight"}};
      break;
    case UqCertificate::ApproxRatio:
      cert = {{"type", "approx_ratio"}, {"ratio", sol.ratio}, {"upper_bound", sol.upper_bound}};
      break;
  }
  return {{"value", sol.value}, {"point", sol.x}, {"certificate", cert}};
}

json ratio_certificate_json(const RatioCertificate& cert) {
  return {{"gamma", cert.gamma},
          {"gamma_source",
           cert.gamma_source == RatioCertificate::Source::ChebOptimal ? "cheb_optimal" : "dmax"},
          {"gamma_below_one", cert.gamma_below_one},
          {"ratio", cert.ratio},
          {"lower", cert.lower},
          {"upper", cert.upper},
          {"achieved", cert.achieved}};
}

int cmd_solve_ccb(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const CcbInstance inst = require_ccb(io::load_instance(f.file));
  validate(inst);
  SolveOptions sopts;
  sopts.budget = f.budget;
  std::string method = f.method;
  if (method.empty()) method = (inst.dim == 2) ? "planar" : "ellipsoid";

  json result;
  std::ostringstream summary;
  if (method == "planar") {
    const CcbSolution sol = planar::solve_planar(inst, sopts);
    result["method"] = "planar";
    result["value"] = sol.squared_radius;
    result["point"] = sol.center;
    result["certificate"] = {{"fallback_used", sol.fallback_used}};
    summary << "planar center, squared radius " << sol.squared_radius;
  } else if (method == "ellipsoid") {
    CcbEllipsoidOptions eopts;
    eopts.eps = f.eps;
    eopts.max_iter = f.max_iter;
    eopts.inner = sopts;
    const CcbSolution sol = solve_ccb_ellipsoid(inst, eopts);
    result["method"] = "ellipsoid";
    result["value"] = sol.squared_radius;
    result["point"] = sol.center;
    result["certificate"] = {{"eps", sol.eps_bound}, {"iterations", sol.iterations}};
    if (!sol.converged) result["status"] = "iteration_limit";
    summary << "ellipsoid center, squared radius " << sol.squared_radius << " (eps "
            << sol.eps_bound << ")";
  } else if (method == "sqp") {
    const SqpResult sqp = solve_sqp(inst);
    const RatioCertificate cert = sqp_certificate(inst, sqp, sopts);
    result["method"] = "sqp";
    result["value"] = cert.achieved;
    result["point"] = sqp.z_bar;
    result["certificate"] = ratio_certificate_json(cert);
    summary << "sqp center, squared radius " << cert.achieved << " (ratio " << cert.ratio << ")";
  } else {
    throw SolverError(ErrorCode::Usage, "unknown --method '" + method + "'");
  }
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_solve_uq(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const UqInstance uq = require_uq(io::load_instance(f.file));
  SolveOptions sopts;
  sopts.budget = f.budget;
  json result;
  std::ostringstream summary;
  try {
    const UqSolution sol = solve_exact(uq, sopts);
    result = uq_solution_json(sol);
    result["method"] = "enumeration";
    summary << "exact value " << sol.value;
  } catch (const SolverError& e) {
    if (e.code() != ErrorCode::NoCandidate) throw;
    // degenerate instance: report the failure but answer with the sampling
    // oracle's lower bound
    oracle::OracleConfig cfg;
    cfg.grid_step = f.grid_step;
    cfg.samples = f.samples;
    cfg.seed = f.seed;
    const oracle::OracleValue ov = oracle::oracle_uq(uq, cfg);
    result["method"] = "enumeration";
    result["status"] = "no_candidate_oracle_fallback";
    result["value"] = ov.value;
    result["point"] = ov.point;
    result["certificate"] = {{"type", "oracle_lower_bound"}, {"resolution", ov.resolution}};
    summary << "enumeration found no candidate; oracle lower bound " << ov.value;
  }
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_relax_lp(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const UqInstance uq = require_uq(io::load_instance(f.file));
  SolveOptions sopts;
  sopts.budget = f.budget;
  const TrichotomyResult tri = trichotomy(uq);
  const DualityConditionReport rep = duality_conditions(uq);
  json cert = {{"trichotomy", trichotomy_name(tri.kind)},
               {"duality",
                {{"outside_hull", rep.outside_hull},
                 {"nontrivial_cone", rep.nontrivial_cone},
                 {"strong_duality_guaranteed", rep.strong_duality_guaranteed}}}};
  json result;
  result["method"] = "relax-lp";
  std::ostringstream summary;
  if (tri.kind == TrichotomyCase::Unbounded) {
    cert["lp"] = "unbounded";
    cert["sdp"] = sdp_value(uq, sopts);
    result["value"] = cert["sdp"];
    result["point"] = json::array();
    summary << "lp unbounded, sdp " << cert["sdp"].get<double>();
  } else {
    cert["lp"] = tri.lp_value;
    cert["sdp"] = sdp_value(uq, sopts);
    result["value"] = tri.lp_value;
    Vec point = tri.x;
    point.push_back(tri.y);
    result["point"] = point;
    summary << "lp " << tri.lp_value << ", sdp " << cert["sdp"].get<double>() << ", case "
            << trichotomy_name(tri.kind);
  }
  result["certificate"] = std::move(cert);
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_relax_sqp(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const CcbInstance inst = require_ccb(io::load_instance(f.file));
  validate(inst);
  const SqpResult sqp = solve_sqp(inst);
  json result;
  result["method"] = "relax-sqp";
  result["value"] = sqp.value;
  result["point"] = sqp.z_bar;
  result["certificate"] = {{"lambda", sqp.lambda},
                           {"stationarity_gap", sqp.stationarity_gap},
                           {"iterations", sqp.iterations}};
  std::ostringstream summary;
  summary << "sqp value " << sqp.value;
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_planar(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const CcbInstance inst = require_ccb(io::load_instance(f.file));
  validate(inst);
  SolveOptions sopts;
  sopts.budget = f.budget;
  planar::PlanarStats stats;
  const CcbSolution sol = planar::solve_planar(inst, sopts, &stats);
  json result;
  result["method"] = "planar";
  result["value"] = sol.squared_radius;
  result["point"] = sol.center;
  result["certificate"] = {{"pair_evaluations", stats.pair_evaluations},
                           {"endpoints", stats.endpoint_count},
                           {"shortcut", stats.shortcut},
                           {"fallback_used", sol.fallback_used}};
  std::ostringstream summary;
  summary << "planar squared radius " << sol.squared_radius;
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_approx(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const UqInstance uq = require_uq(io::load_instance(f.file));
  SolveOptions sopts;
  sopts.budget = f.budget;
  const UqSolution sol = approx_round(uq, sopts);
  json result = uq_solution_json(sol);
  result["method"] = "approx";
  std::ostringstream summary;
  summary << "feasible value " << sol.value;
  if (sol.certificate == UqCertificate::ApproxRatio)
    summary << " (>= " << sol.ratio << " * " << sol.upper_bound << ")";
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_certify(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const CcbInstance inst = require_ccb(io::load_instance(f.file));
  validate(inst);
  SolveOptions sopts;
  sopts.budget = f.budget;
  const SqpResult sqp = solve_sqp(inst);
  const RatioCertificate cert = sqp_certificate(inst, sqp, sopts);
  json result;
  result["method"] = "certify";
  result["value"] = cert.achieved;
  result["point"] = sqp.z_bar;
  result["certificate"] = ratio_certificate_json(cert);
  std::ostringstream summary;
  summary << "achieved " << cert.achieved << " in [" << cert.lower << ", " << cert.upper << "]";
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_reduce_partition(const Flags& f, const std::string& kind, std::ostream& out,
                         std::ostream& err) {
  std::ifstream in(f.file);
  if (!in) throw SolverError(ErrorCode::Usage, "cannot open '" + f.file + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SolverError(ErrorCode::ParseError, e.what());
  }
  if (j.is_object() && j.contains("a")) j = j["a"];
  if (!j.is_array()) throw SolverError(ErrorCode::ParseError, "expected an integer vector");
  hardness::PartitionInput input;
  for (const auto& x : j) {
    if (!x.is_number_integer())
      throw SolverError(ErrorCode::ParseError, "partition entries must be integers");
    input.a.push_back(x.get<long long>());
  }
  auto [uq, inst] = hardness::reduce_partition(input);
  const std::string text =
      (kind == "uq") ? io::to_canonical_json(uq) : io::to_canonical_json(inst);
  write_text(text, f, out, err);
  err << "reduced " << input.n() << "-entry vector to " << uq.p() << " constraints\n";
  return 0;
}

int cmd_oracle(const Flags& f, std::ostream& out, std::ostream& err) {
  Timer timer;
  const io::Instance inst = io::load_instance(f.file);
  oracle::OracleConfig cfg;
  cfg.samples = f.samples;
  cfg.grid_step = f.grid_step;
  cfg.seed = f.seed;
  json result;
  std::ostringstream summary;
  if (const CcbInstance* ci = std::get_if<CcbInstance>(&inst)) {
    validate(*ci);
    const oracle::OracleBall ball = oracle::oracle_ccb(*ci, cfg);
    result["method"] = "oracle-ccb";
    result["value"] = ball.squared_radius;
    result["point"] = ball.center;
    result["certificate"] = {{"resolution", ball.resolution}, {"samples", cfg.samples}};
    summary << "sampled squared radius " << ball.squared_radius;
  } else {
    const UqInstance& uq = std::get<UqInstance>(inst);
    const oracle::OracleValue val = oracle::oracle_uq(uq, cfg);
    result["method"] = "oracle-uq";
    result["value"] = val.value;
    result["point"] = val.point;
    result["certificate"] = {{"resolution", val.resolution}, {"grid_step", cfg.grid_step}};
    summary << "sampled value " << val.value;
  }
  emit_result(std::move(result), f, timer, summary.str(), out, err);
  return 0;
}

int cmd_gen(const Flags& f, int dim, int balls, double spread, double margin, std::ostream& out,
            std::ostream& err) {
  const CcbInstance inst = io::gen(dim, balls, f.seed, spread, margin);
  write_text(io::to_canonical_json(inst), f, out, err);
  err << "generated " << balls << " balls in dimension " << dim << " (seed " << f.seed << ")\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev center of ball intersections: exact solvers, relaxations, oracles"};
  app.require_subcommand(1);

  Flags f;
  int gen_dim = 2, gen_balls = 4;
  double gen_spread = 1.0, gen_margin = 0.5;
  std::string reduce_kind = "ccb";

  auto add_common = [&](CLI::App* sub, bool with_file = true) {
    if (with_file) sub->add_option("file", f.file, "instance file")->required();
    sub->add_option("--out", f.out, "write the result here instead of stdout");
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--tol", f.tol, "feasibility tolerance");
    sub->add_option("--eps", f.eps, "target accuracy for iterative solvers");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--max-iter", f.max_iter, "iteration cap (0 = from the accuracy bound)");
    sub->add_option("--budget", f.budget, "enumeration budget");
  };

  CLI::App* solve_ccb = app.add_subcommand("solve-ccb", "smallest enclosing ball of a ball intersection");
  add_common(solve_ccb);
  solve_ccb->add_option("--method", f.method, "planar, ellipsoid or sqp")
      ->check(CLI::IsMember({"planar", "ellipsoid", "sqp"}));

  CLI::App* solve_uq = app.add_subcommand("solve-uq", "exact inner maximization by enumeration");
  add_common(solve_uq);

  CLI::App* relax_lp = app.add_subcommand("relax-lp", "LP relaxation, classification and SDP value");
  add_common(relax_lp);

  CLI::App* relax_sqp = app.add_subcommand("relax-sqp", "simplex-constrained QP relaxation");
  add_common(relax_sqp);

  CLI::App* planar_cmd = app.add_subcommand("planar", "exact planar solver with arc statistics");
  add_common(planar_cmd);

  CLI::App* approx = app.add_subcommand("approx", "feasible rounding with a guaranteed ratio");
  add_common(approx);

  CLI::App* certify = app.add_subcommand("certify", "approximation certificate for the SQP center");
  add_common(certify);

  CLI::App* reduce = app.add_subcommand("reduce-partition", "partition instance to ball form");
  add_common(reduce);
  reduce->add_option("--kind", reduce_kind, "emit 'ccb' or 'uq'")
      ->check(CLI::IsMember({"ccb", "uq"}));

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force value for cross-checking");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--samples", f.samples, "boundary / random samples");
  oracle_cmd->add_option("--grid-step", f.grid_step, "grid spacing");

  CLI::App* gen_cmd = app.add_subcommand("gen", "random feasible instance");
  add_common(gen_cmd, false);
  gen_cmd->add_option("--dim", gen_dim, "dimension")->required();
  gen_cmd->add_option("--balls", gen_balls, "number of balls")->required();
  gen_cmd->add_option("--spread", gen_spread, "center cube half-width");
  gen_cmd->add_option("--margin", gen_margin, "radius slack factor");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve_ccb->parsed()) return cmd_solve_ccb(f, out, err);
    if (solve_uq->parsed()) return cmd_solve_uq(f, out, err);
    if (relax_lp->parsed()) return cmd_relax_lp(f, out, err);
    if (relax_sqp->parsed()) return cmd_relax_sqp(f, out, err);
    if (planar_cmd->parsed()) return cmd_planar(f, out, err);
    if (approx->parsed()) return cmd_approx(f, out, err);
    if (certify->parsed()) return cmd_certify(f, out, err);
    if (reduce->parsed()) return cmd_reduce_partition(f, reduce_kind, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(f, out, err);
    if (gen_cmd->parsed()) return cmd_gen(f, gen_dim, gen_balls, gen_spread, gen_margin, out, err);
  } catch (const SolverError& e) {
    err << error_code_name(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::EmptyInterior:
      case ErrorCode::NotInterior:
        return 2;
      case ErrorCode::BudgetExceeded:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ccb::cli
