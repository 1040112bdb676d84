#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "regiospec/asymptotics.hpp"
#include "regiospec/pointwise.hpp"
#include "regiospec/test_functions.hpp"
#include "serialize.hpp"
#include "verify.hpp"

namespace regiospec {

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularSystem:
    case ErrorCode::MassNotSPD:
    case ErrorCode::NotMeanZero:
    case ErrorCode::ZeroVector:
    case ErrorCode::DependentVectors:
    case ErrorCode::SingularPoint:
      return 3;
    default:
      return 2;
  }
}

namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

struct Globals {
  bool deterministic = false;
  unsigned long long seed = 1;
};

struct EvalArgs {
  std::string op, func = "identity", domain = "0,1", x;
  double s = 0.0;
  int k = 1, j = 4;
  double absTol = 1e-10, relTol = 1e-9;
};

struct SpectrumArgs {
  std::string domain = "0,1", format = "json";
  int cells = 64, count = 6;
  double s = 0.0;
  bool vectors = false;
};

struct SweepArgs {
  std::string domain = "0,1", grid, out;
  int cells = 256, nMax = 3;
};

struct VerifyArgs {
  std::string suite = "all", log;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json error_json(const Error& e) { return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}; }

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Domain d = io::parse_domain(a.domain);
  const Point x = io::parse_point(a.x);
  if (x.size() != d.dim()) throw Error(ErrorCode::DimensionMismatch, "point and domain dimensions differ");
  QuadratureSpec q;
  q.absTol = a.absTol;
  q.relTol = a.relTol;
  validate(q);
  Json inputs = {{"domain", io::to_json(d)}, {"x", std::vector<double>(x.data(), x.data() + x.size())}};
  EvalResult r;
  if (a.op == "kappa") {
    inputs["s"] = a.s;
    r.value = eval_kappa(d, x, a.s);
  } else {
    const ScalarField u = test_function(a.func, d);
    inputs["func"] = a.func;
    if (a.op == "ds") {
      inputs["s"] = a.s;
      r = eval_Ds(u, d, x, a.s, q);
    } else if (a.op == "dk") {
      inputs["k"] = a.k;
      r = eval_Dk(u, d, x, a.k, q);
    } else if (a.op == "llog") {
      r = eval_Llog(u, d, x, q);
    } else if (a.op == "fraclap") {
      inputs["s"] = a.s;
      r = eval_regional_fraclap(u, d, x, a.s, q);
    } else {
      inputs["s"] = a.s;
      inputs["j"] = a.j;
      r = series_partial(u, d, x, a.s, a.j, q);
    }
  }
  emit(out, {{"value", r.value}, {"errEstimate", r.errEstimate}, {"op", a.op}, {"inputs", inputs}});
  return 0;
}

int cmd_spectrum(const SpectrumArgs& a, const Globals& g, std::ostream& out) {
  const auto t0 = Clock::now();
  if (a.count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
  const Mesh m = build_mesh(io::parse_domain(a.domain), a.cells);
  const FormMatrix A = assemble_Es(m, a.s);
  const FormMatrix M = assemble_mass(m);
  std::vector<std::string> issues = check_form(A);
  for (auto& i : check_form(M)) issues.push_back(std::move(i));
  const SpectralResult r = solve_eigs(A, M, a.count);
  for (auto& i : check_spectrum(r, M)) issues.push_back(std::move(i));
  const bool pass = issues.empty();
  if (a.format == "csv") {
    std::ostringstream os;
    os << std::setprecision(17) << "n,lambda,residual\n";
    for (Eigen::Index n = 0; n < r.count(); ++n) os << n << ',' << r.eigenvalues[n] << ',' << r.residuals[n] << '\n';
    out << os.str();
  } else {
    Json j = io::to_json(r, a.vectors);
    j["invariants"] = issues;
    j["pass"] = pass;
    if (!g.deterministic) j["runtimeSeconds"] = seconds_since(t0);
    emit(out, j);
  }
  return pass ? 0 : 1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

int cmd_sweep(const SweepArgs& a, const Globals& g, std::ostream& out) {
  const auto t0 = Clock::now();
  const std::vector<double> grid = a.grid.empty() ? verify::default_sweep_grid() : io::parse_list(a.grid);
  const SweepResult sw = s_sweep(io::parse_domain(a.domain), a.cells, grid, a.nMax);
  Json j = {{"sweep", io::to_json(sw)}};
  Json derivs = Json::array();
  std::optional<Error> failure;
  for (int n = 1; n <= sw.nMax; ++n) {
    try {
      Json d = io::to_json(derivative_at_zero(sw, n));
      d["n"] = n;
      derivs.push_back(d);
    } catch (const Error& e) {
      Json d = error_json(e);
      d["n"] = n;
      derivs.push_back(d);
      if (!failure) failure = e;
    }
  }
  j["derivative"] = derivs;
  bool pass = false;
  if (failure) {
    j["error"] = std::string(to_string(failure->code()));
  } else {
    Json verdicts = Json::array();
    pass = true;
    for (const auto& v : sweep_verdicts(sw)) {
      verdicts.push_back(io::to_json(v));
      pass = pass && v.pass;
    }
    j["verdicts"] = verdicts;
    j["pass"] = pass;
  }
  if (!a.out.empty()) {
    write_file(a.out + ".csv", io::to_csv(sw));
    write_file(a.out + ".json", j.dump(2) + "\n");
  }
  if (!g.deterministic) j["runtimeSeconds"] = seconds_since(t0);
  emit(out, j);
  if (failure) return exit_code(failure->code());
  return pass ? 0 : 1;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
  const std::vector<std::string> suites = a.suite == "all" ? verify::suite_names() : std::vector<std::string>{a.suite};
  Json log = Json::array();
  bool all = true;
  for (const auto& name : suites) {
    const auto t0 = Clock::now();
    const auto verdicts = verify::run_suite(name, g.seed);
    Json entry = {{"suite", name}};
    Json checks = Json::array();
    bool pass = true;
    for (const auto& v : verdicts) {
      out << (v.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << name << v.name << " : " << v.detail
          << '\n';
      checks.push_back(io::to_json(v));
      pass = pass && v.pass;
    }
    entry["pass"] = pass;
    if (!g.deterministic) entry["runtimeSeconds"] = seconds_since(t0);
    entry["checks"] = checks;
    log.push_back(entry);
    all = all && pass;
    out << (pass ? "PASS" : "FAIL") << "  suite " << name << '\n';
  }
  if (!a.log.empty()) write_file(a.log, log.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regional fractional and logarithmic Laplacians: evaluation, spectra and invariant checks", "regiospec"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--deterministic", g.deterministic, "Omit timing fields so output is byte-reproducible");
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate an operator at a point");
  eval->add_option("--op", ea.op, "Operator")->required()->check(CLI::IsMember({"ds", "dk", "llog", "kappa", "fraclap", "series"}));
  eval->add_option("--func", ea.func, "Test function")->check(CLI::IsMember(test_function_names()));
  eval->add_option("--domain", ea.domain, "a,b or a1,b1,a2,b2");
  eval->add_option("--x", ea.x, "Point, comma separated")->required();
  eval->add_option("--s", ea.s, "Order");
  eval->add_option("--k", ea.k, "Log power for dk");
  eval->add_option("--j", ea.j, "Number of series terms");
  eval->add_option("--abs-tol", ea.absTol, "Absolute quadrature tolerance");
  eval->add_option("--rel-tol", ea.relTol, "Relative quadrature tolerance");

  SpectrumArgs pa;
  auto* spectrumCmd = app.add_subcommand("spectrum", "Generalized eigenpairs of the Galerkin form");
  spectrumCmd->add_option("--domain", pa.domain, "a,b or a1,b1,a2,b2");
  spectrumCmd->add_option("--cells", pa.cells, "Cells per side");
  spectrumCmd->add_option("--s", pa.s, "Order")->required();
  spectrumCmd->add_option("--count", pa.count, "Number of eigenpairs");
  spectrumCmd->add_option("--format", pa.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  spectrumCmd->add_flag("--vectors", pa.vectors, "Include eigenvectors in JSON output");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Spectra across an order grid with s -> 0 verdicts");
  sweep->add_option("--domain", sa.domain, "a,b or a1,b1,a2,b2");
  sweep->add_option("--s-grid", sa.grid, "Comma separated orders including 0");
  sweep->add_option("--cells", sa.cells, "Cells per side");
  sweep->add_option("--n-max", sa.nMax, "Largest eigenvalue index checked");
  sweep->add_option("--out", sa.out, "Output prefix for <prefix>.csv and <prefix>.json");

  VerifyArgs va;
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  auto* ver = app.add_subcommand("verify", "Run invariant suites");
  ver->add_option("--suite", va.suite, "Suite name")->check(CLI::IsMember(suites));
  ver->add_option("--log", va.log, "Write a JSON log to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*eval) return cmd_eval(ea, out);
    if (*spectrumCmd) return cmd_spectrum(pa, g, out);
    if (*sweep) return cmd_sweep(sa, g, out);
    return cmd_verify(va, g, out);
  } catch (const Error& e) {
    emit(out, error_json(e));
    err << e.what() << '\n';
    return exit_code(e.code());
  }
}

}  // namespace regiospec
