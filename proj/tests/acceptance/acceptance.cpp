#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hbfde/cli.hpp"
#include "hbfde/inverse_source.hpp"
#include "hbfde/verification.hpp"

#ifndef HBFDE_CLI_PATH
#error "HBFDE_CLI_PATH must name the hbfde executable"
#endif

namespace fs = std::filesystem;
using namespace hbfde;

namespace {

struct Outcome {
  bool passed = true;
  std::string note;
};

Outcome run_reports(const std::string& suite, double limit_seconds) {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_suite(suite);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  int failed = 0;
  std::string first_failure;
  for (const auto& r : reports) {
    std::cerr << r.to_json() << '\n';
    if (!r.passed) {
      if (failed++ == 0) {
        std::ostringstream f;
        f << r.name << " error " << (r.max_errors.empty() ? NAN : r.max_errors.back()) << " > " << r.tolerance << " ("
          << r.detail << ")";
        first_failure = f.str();
      }
      o.passed = false;
    }
  }
  std::ostringstream note;
  note << suite << ": " << reports.size() - failed << "/" << reports.size() << " checks, " << secs << " s";
  if (limit_seconds > 0.0) {
    note << " (limit " << limit_seconds << " s)";
    if (secs > limit_seconds) o.passed = false;
  }
  if (failed) note << "; first failure " << first_failure;
  o.note = note.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool run_cli(const std::string& command, const fs::path& spec, const fs::path& out) {
  const std::string cmd = std::string("\"") + HBFDE_CLI_PATH + "\" " + command + " \"" + spec.string() + "\" --out \"" +
                          out.string() + "\" > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

cli::Grid grid_file(const fs::path& p) {
  std::ifstream in(p);
  return cli::read_grid(in);
}

std::vector<double> column(const fs::path& p, std::size_t col) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string c;
    for (std::size_t i = 0; i <= col; ++i) std::getline(cells, c, '\t');
    out.push_back(std::stod(c));
  }
  return out;
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("hbfde_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path spec = dir / "problem.ini";
  std::ofstream(spec) << "[operator]\nalpha = 0.6\ntheta = 0.25\n"
                         "[domain]\nT = 1\nK = 32\nnx = 128\nnt = 128\ngrading = 2\n"
                         "[direct]\npsi = x*(1-x)\nforcing = sin(pi*x)*(1+t)\n"
                         "[inverse]\npsi = x*(1-x)\nphi = 0.5*sin(pi*x) + 0.1*sin(3*pi*x)\n";
  Outcome o;
  std::ostringstream note;
  const char* files_direct[] = {"direct_u.csv", "direct_modes.csv", "direct_diagnostics.jsonl"};
  const char* files_inverse[] = {"inverse_u.csv", "inverse_modes.csv", "inverse_source.csv", "inverse_coefficients.csv",
                                 "inverse_diagnostics.jsonl"};
  for (const char* run : {"a", "b"}) {
    if (!run_cli("direct", spec, dir / run) || !run_cli("inverse", spec, dir / run)) {
      fs::remove_all(dir);
      return {false, "hbfde exited with an error"};
    }
  }
  int differing = 0;
  for (const auto& names : {std::vector<const char*>(std::begin(files_direct), std::end(files_direct)),
                            std::vector<const char*>(std::begin(files_inverse), std::end(files_inverse))}) {
    for (const char* name : names) {
      if (slurp(dir / "a" / name) != slurp(dir / "b" / name)) {
        ++differing;
        note << name << " differs between runs; ";
      }
    }
  }

  const auto parsed = cli::load_spec(spec);
  const auto direct = solve_direct(cli::direct_problem(parsed));
  const auto g = grid_file(dir / "a" / "direct_u.csv");
  const double d_gap = std::max({max_gap(g.values, direct.field.values), max_gap(g.t, direct.field.t),
                                 max_gap(g.x, direct.field.x)});

  const auto inverse = solve_inverse(cli::inverse_problem(parsed));
  const auto h = grid_file(dir / "a" / "inverse_u.csv");
  const auto f = reconstruct_source_field(inverse, inverse.u.x);
  const std::vector<double> f_lib(f.values().begin(), f.values().end());
  const double i_gap = std::max({max_gap(h.values, inverse.u.values), max_gap(column(dir / "a" / "inverse_source.csv", 1), f_lib),
                                 max_gap(column(dir / "a" / "inverse_coefficients.csv", 4), inverse.source.coeffs),
                                 max_gap(column(dir / "a" / "inverse_coefficients.csv", 3), inverse.c)});
  fs::remove_all(dir);

  note << "byte-identical reruns: " << (differing == 0 ? "yes" : "no") << "; max |file - library| direct " << d_gap
       << ", inverse " << i_gap << " (tolerance 1e-15)";
  o.passed = differing == 0 && d_gap <= 1e-15 && i_gap <= 1e-15;
  o.note = note.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* suite;
    double limit;
  };
  const Criterion criteria[] = {
      {1, "identities", 5.0},   {2, "bound", 10.0},      {3, "composition", 30.0},
      {4, "volterra", 0.0},     {5, "cauchy-residual", 0.0}, {6, "theta-zero-direct", 0.0},
      {7, "roundtrip", 60.0},   {8, "stationary-inverse", 0.0}, {9, "zero-data", 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = run_reports(c.suite, c.limit);
    } catch (const std::exception& e) {
      o = {false, std::string(c.suite) + ": exception: " + e.what()};
    }
    failures += !o.passed;
    std::cout << "criterion " << c.id << ": " << (o.passed ? "PASS" : "FAIL") << "  " << o.note << std::endl;
  }
  Outcome o;
  try {
    o = cli_determinism();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  failures += !o.passed;
  std::cout << "criterion 10: " << (o.passed ? "PASS" : "FAIL") << "  cli determinism: " << o.note << std::endl;
  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
