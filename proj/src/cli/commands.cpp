#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbfde/cli.hpp"
#include "hbfde/errors.hpp"
#include "hbfde/special_functions.hpp"
#include "hbfde/verification.hpp"

namespace hbfde::cli {

namespace {

using Json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + p.string());
  return os;
}

void write_traces(std::ostream& os, const std::vector<double>& t, const std::vector<std::vector<double>>& modes) {
  os << 't';
  for (std::size_t k = 1; k <= modes.size(); ++k) os << "\tu_" << k;
  os << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_number(t[i]);
    for (const auto& m : modes) os << '\t' << format_number(m[i]);
    os << '\n';
  }
}

Json parameters(const char* command, const FracParams& fp, double T, int modes, int nx, int nt, double grading) {
  Json j;
  j["record"] = "parameters";
  j["command"] = command;
  j["alpha"] = fp.alpha();
  j["theta"] = fp.theta();
  j["T"] = T;
  j["modes"] = modes;
  j["nx"] = nx;
  j["nt"] = nt;
  j["grading"] = grading;
  return j;
}

std::vector<double> split_numbers(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      double v = 0.0;
      const char* first = part.data();
      const char* last = part.data() + part.size();
      if (*first == '+') ++first;
      const auto [end, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || end != last) throw ValidationError("--z: not a number: \"" + part + "\"");
      out.push_back(v);
    }
  }
  return out;
}

int cmd_ml(double alpha, double beta, const std::vector<std::string>& z, std::ostream& out) {
  const MLParams p{alpha, beta};
  try {
    p.validate();
  } catch (const ContractError& e) {
    throw ValidationError(e.what());
  }
  for (double v : split_numbers(z)) out << format_number(v) << ", " << format_number(ml_two(p, v)) << '\n';
  return kOk;
}

OutputSettings settings(const SpecFile& spec, const std::string& out_dir) {
  OutputSettings s = spec.output;
  if (!out_dir.empty()) {
    s.dir = out_dir;
  } else if (s.dir.is_relative()) {
    s.dir = spec.base / s.dir;
  }
  return s;
}

int cmd_direct(const std::string& path, const std::string& out_dir, std::ostream& out) {
  const auto spec = load_spec(path);
  const auto problem = direct_problem(spec);
  const auto files = output_files(settings(spec, out_dir), "direct");
  const auto sol = solve_direct(problem);
  write_direct(problem, sol, files);
  out << files.grid.string() << '\n' << files.modes.string() << '\n' << files.diagnostics.string() << '\n';
  return kOk;
}

int cmd_inverse(const std::string& path, const std::string& out_dir, std::ostream& out) {
  const auto spec = load_spec(path);
  const auto problem = inverse_problem(spec);
  const auto files = output_files(settings(spec, out_dir), "inverse");
  const auto res = solve_inverse(problem);
  write_inverse(problem, res, files);
  out << files.grid.string() << '\n'
      << files.modes.string() << '\n'
      << files.source.string() << '\n'
      << files.coefficients.string() << '\n'
      << files.diagnostics.string() << '\n';
  return kOk;
}

int cmd_verify(const std::string& suite, bool list, std::ostream& out) {
  if (list) {
    for (const auto& n : suite_names()) out << n << '\n';
    return kOk;
  }
  if (suite.empty()) throw ValidationError("verify needs a suite name or all");
  std::vector<VerificationReport> reports;
  try {
    reports = run_suite(suite);
  } catch (const ContractError& e) {
    throw ValidationError(e.what());
  }
  bool ok = true;
  for (const auto& r : reports) {
    out << r.to_json() << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kFailedChecks;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_grid(std::ostream& os, const std::vector<double>& x, const std::vector<double>& t,
                const std::vector<double>& values) {
  os << 'x';
  for (double v : x) os << '\t' << format_number(v);
  os << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_number(t[i]);
    for (std::size_t j = 0; j < x.size(); ++j) os << '\t' << format_number(values[i * x.size() + j]);
    os << '\n';
  }
}

Grid read_grid(std::istream& is) {
  auto cells = [](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, '\t')) out.push_back(c);
    return out;
  };
  auto number = [](const std::string& c) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc() || end != c.data() + c.size()) throw ValidationError("grid file: not a number: \"" + c + "\"");
    return v;
  };
  Grid g;
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("grid file is empty");
  const auto head = cells(line);
  if (head.empty() || head.front() != "x") throw ValidationError("grid file must start with an x header row");
  for (std::size_t j = 1; j < head.size(); ++j) g.x.push_back(number(head[j]));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto row = cells(line);
    if (row.size() != g.x.size() + 1) throw ValidationError("grid file: row width does not match the header");
    g.t.push_back(number(row[0]));
    for (std::size_t j = 1; j < row.size(); ++j) g.values.push_back(number(row[j]));
  }
  return g;
}

OutputFiles output_files(const OutputSettings& out, const std::string& command) {
  const std::string prefix = out.prefix.empty() ? command : out.prefix;
  OutputFiles f;
  f.grid = out.dir / (prefix + "_u.csv");
  f.modes = out.dir / (prefix + "_modes.csv");
  f.diagnostics = out.dir / (prefix + "_diagnostics.jsonl");
  if (command == "inverse") {
    f.source = out.dir / (prefix + "_source.csv");
    f.coefficients = out.dir / (prefix + "_coefficients.csv");
  }
  return f;
}

void write_direct(const DirectProblemSpec& spec, const DirectSolution& sol, const OutputFiles& files) {
  std::filesystem::create_directories(files.grid.parent_path().empty() ? "." : files.grid.parent_path());
  const auto& u = sol.field;
  auto grid = open_out(files.grid);
  write_grid(grid, u.x, u.t, u.values);
  auto modes = open_out(files.modes);
  write_traces(modes, u.t, u.modes);

  const auto& d = sol.diagnostics;
  Json j;
  j["record"] = "diagnostics";
  j["modes"] = d.modes;
  j["active_modes"] = d.active_modes;
  j["psi_tail"] = d.psi_tail;
  j["forcing_tail"] = d.forcing_tail;
  auto diag = open_out(files.diagnostics);
  diag << parameters("direct", spec.fp, spec.T, d.modes, spec.nx, spec.nt, spec.grading).dump() << '\n'
       << j.dump() << '\n';
}

void write_inverse(const InverseProblemSpec& spec, const InverseResult& res, const OutputFiles& files) {
  std::filesystem::create_directories(files.grid.parent_path().empty() ? "." : files.grid.parent_path());
  const auto& u = res.u;
  auto grid = open_out(files.grid);
  write_grid(grid, u.x, u.t, u.values);
  auto modes = open_out(files.modes);
  write_traces(modes, u.t, u.modes);

  const auto f = reconstruct_source_field(res, u.x);
  auto source = open_out(files.source);
  source << "x\tf\n";
  for (std::size_t j = 0; j < u.x.size(); ++j) {
    source << format_number(u.x[j]) << '\t' << format_number(f.values()[j]) << '\n';
  }

  auto table = open_out(files.coefficients);
  table << "k\tpsi_k\tphi_k\tC_k\tf_k\n";
  for (int k = 1; k <= res.source.modes(); ++k) {
    table << k << '\t' << format_number(res.psi(k)) << '\t' << format_number(res.phi(k)) << '\t'
          << format_number(res.c[k - 1]) << '\t' << format_number(res.source(k)) << '\n';
  }

  const auto& d = res.diagnostics;
  Json j;
  j["record"] = "diagnostics";
  j["modes"] = res.source.modes();
  j["min_denominator"] = d.min_denominator;
  j["min_denominator_mode"] = d.min_denominator_mode;
  j["growth_rate"] = d.growth_rate;
  j["cauchy_gap"] = d.cauchy_gap;
  j["endpoint_residual"] = d.endpoint_residual;
  j["psi_tail"] = d.psi_tail;
  j["phi_tail"] = d.phi_tail;
  auto diag = open_out(files.diagnostics);
  diag << parameters("inverse", spec.fp, spec.T, res.source.modes(), spec.nx, spec.nt, spec.grading).dump() << '\n'
       << j.dump() << '\n';
  for (const auto& w : d.warnings) diag << Json{{"record", "warning"}, {"message", w}}.dump() << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-fractional diffusion with the hyper-Bessel operator: direct and inverse source solvers"};
  app.require_subcommand(1);

  double alpha = 0.0, beta = 1.0;
  std::vector<std::string> z;
  auto* ml = app.add_subcommand("ml", "Evaluate E_{alpha,beta}(z); prints rows \"z, value\"");
  ml->add_option("--alpha", alpha, "alpha in (0, 2]")->required();
  ml->add_option("--beta", beta, "beta > 0 (default 1)");
  ml->add_option("--z", z, "arguments, repeated or comma-separated")->required()->allow_extra_args();

  std::string spec_path, out_dir;
  auto* direct = app.add_subcommand("direct", "Solve the direct problem described by a spec file");
  direct->add_option("spec", spec_path, "problem spec file")->required();
  direct->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  auto* inverse = app.add_subcommand("inverse", "Recover the source from initial and final data");
  inverse->add_option("spec", spec_path, "problem spec file")->required();
  inverse->add_option("--out", out_dir, "output directory (overrides [output] dir)");

  std::string suite;
  bool list = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite; JSON lines, exit 0 iff all pass");
  verify->add_option("suite", suite, "suite name or all");
  verify->add_flag("--list", list, "print the suite names");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ml) return cmd_ml(alpha, beta, z, out);
    if (*direct) return cmd_direct(spec_path, out_dir, out);
    if (*inverse) return cmd_inverse(spec_path, out_dir, out);
    return cmd_verify(suite, list, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IllPosedError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace hbfde::cli
