#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hbfde/inverse_source.hpp"
#include "hbfde/spectral_direct.hpp"

namespace hbfde::cli {

/// Arithmetic in x and t: + - * / ^, parentheses, numbers, pi, sin, cos, exp, sqrt.
/// parse() throws ValidationError with the offending position.
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& text);

  double operator()(double x, double t = 0.0) const;
  bool uses_t() const { return uses_t_; }
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  bool uses_t_ = false;
  std::string text_;
};

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

/// Tab-separated grid: first row "x" followed by the x nodes, then one row per time node
/// holding t and the values at that time.
struct Grid {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> values;  // row-major in time
};

void write_grid(std::ostream& os, const std::vector<double>& x, const std::vector<double>& t,
                const std::vector<double>& values);
Grid read_grid(std::istream& is);

/// Input of a data field: an expression, "zero", or "file:<path>" (two-column samples for
/// psi / phi, a grid file for the forcing). Paths are relative to the spec file.
struct FieldSource {
  std::string text;
};

struct OutputSettings {
  std::filesystem::path dir = ".";
  std::string prefix;
  std::string format = "csv";
};

/// Parsed problem file. Sections: [operator] alpha theta; [domain] T K nx nt grading;
/// [direct] psi forcing; [inverse] psi phi T margin; [output] dir prefix format.
struct SpecFile {
  std::filesystem::path base;  // directory that relative file references resolve against
  double alpha = 0.0;
  double theta = 0.0;
  double T = 1.0;
  int modes = 0;
  int nx = 512;
  int nt = 512;
  double grading = 1.0;
  bool has_direct = false;
  FieldSource direct_psi;
  FieldSource direct_forcing{"zero"};
  bool has_inverse = false;
  FieldSource inverse_psi;
  FieldSource inverse_phi;
  double inverse_T = 0.0;  // 0 keeps [domain] T
  double margin = 1e-8;
  OutputSettings output;
};

/// Throws ValidationError for unreadable files, unknown keys, missing or malformed values,
/// and operator parameters outside alpha in (0, 1), theta < 1.
SpecFile load_spec(const std::filesystem::path& path);
SpecFile parse_spec(const std::string& text, const std::filesystem::path& base = ".");

/// Library problems described by a spec file (data sampled onto the solver grids).
DirectProblemSpec direct_problem(const SpecFile& spec);
InverseProblemSpec inverse_problem(const SpecFile& spec);

struct OutputFiles {
  std::filesystem::path grid;
  std::filesystem::path modes;
  std::filesystem::path diagnostics;
  std::filesystem::path source;        // inverse only
  std::filesystem::path coefficients;  // inverse only
};

OutputFiles output_files(const OutputSettings& out, const std::string& command);

/// Writers used by the direct and inverse commands. Tables are tab-separated with a header
/// row; diagnostics are JSON lines (a parameters record, a diagnostics record, one record
/// per warning).
void write_direct(const DirectProblemSpec& spec, const DirectSolution& sol, const OutputFiles& files);
void write_inverse(const InverseProblemSpec& spec, const InverseResult& res, const OutputFiles& files);

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailedChecks = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumerical = 3;

/// Full command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbfde::cli
