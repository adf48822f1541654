#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hbfde/cli.hpp"
#include "hbfde/errors.hpp"

namespace hbfde::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"operator", {"alpha", "theta"}},
      {"domain", {"T", "K", "nx", "nt", "grading"}},
      {"direct", {"psi", "forcing"}},
      {"inverse", {"psi", "phi", "T", "margin"}},
      {"output", {"dir", "prefix", "format"}},
  };
  return keys;
}

double to_double(const std::string& section, const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || !std::isfinite(v)) {
    throw ValidationError("[" + section + "] " + key + ": not a number: \"" + text + "\"");
  }
  return v;
}

int to_int(const std::string& section, const std::string& key, const std::string& text) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ValidationError("[" + section + "] " + key + ": not an integer: \"" + text + "\"");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_file(const FieldSource& f) { return f.text.rfind("file:", 0) == 0; }

std::filesystem::path file_path(const FieldSource& f, const std::filesystem::path& base) {
  std::filesystem::path p = trim(f.text.substr(5));
  return p.is_absolute() ? p : base / p;
}

// Two numeric columns separated by commas, tabs or spaces; '#' starts a comment.
SampledFunction read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read sample file " + path.string());
  std::vector<double> x, v;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    for (char& c : line) {
      if (c == ',' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    std::string a, b;
    row >> a >> b;
    if (b.empty()) throw ValidationError(path.string() + ": expected two columns in \"" + line + "\"");
    x.push_back(to_double(path.string(), "x", a));
    v.push_back(to_double(path.string(), "value", b));
  }
  try {
    return SampledFunction(std::move(x), std::move(v));
  } catch (const ContractError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

SampledFunction profile(const FieldSource& f, const std::filesystem::path& base, const std::vector<double>& x,
                        const char* what) {
  if (f.text.empty()) throw ValidationError(std::string("missing ") + what);
  if (is_file(f)) return read_samples(file_path(f, base));
  if (f.text == "zero") return SampledFunction::sample(x, [](double) { return 0.0; });
  const auto e = Expression::parse(f.text);
  if (e.uses_t()) throw ValidationError(std::string(what) + " may not depend on t");
  return SampledFunction::sample(x, [&](double v) { return e(v); });
}

FracParams operator_params(const SpecFile& spec) {
  try {
    return FracParams(spec.alpha, spec.theta);
  } catch (const ContractError& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace

SpecFile parse_spec(const std::string& text, const std::filesystem::path& base) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError("malformed spec: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  SpecFile spec;
  spec.base = base;
  bool alpha_set = false;
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) throw ValidationError("unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) throw ValidationError("key outside a section: " + section);
    if (section == "direct") spec.has_direct = true;
    if (section == "inverse") spec.has_inverse = true;
    for (const auto& [key, node] : body) {
      if (!known->second.count(key)) throw ValidationError("unknown key " + key + " in [" + section + "]");
      // boost only recognizes whole-line comments; strip trailing "; ..." too.
      const std::string value = trim(node.data().substr(0, node.data().find(';')));
      if (section == "operator") {
        (key == "alpha" ? spec.alpha : spec.theta) = to_double(section, key, value);
        alpha_set = alpha_set || key == "alpha";
      } else if (section == "domain") {
        if (key == "T") spec.T = to_double(section, key, value);
        if (key == "K") spec.modes = to_int(section, key, value);
        if (key == "nx") spec.nx = to_int(section, key, value);
        if (key == "nt") spec.nt = to_int(section, key, value);
        if (key == "grading") spec.grading = to_double(section, key, value);
      } else if (section == "direct") {
        (key == "psi" ? spec.direct_psi : spec.direct_forcing) = FieldSource{value};
      } else if (section == "inverse") {
        if (key == "psi") spec.inverse_psi = FieldSource{value};
        if (key == "phi") spec.inverse_phi = FieldSource{value};
        if (key == "T") spec.inverse_T = to_double(section, key, value);
        if (key == "margin") spec.margin = to_double(section, key, value);
      } else {
        if (key == "dir") spec.output.dir = value;
        if (key == "prefix") spec.output.prefix = value;
        if (key == "format") spec.output.format = value;
      }
    }
  }

  if (!alpha_set) throw ValidationError("[operator] alpha is required");
  operator_params(spec);
  if (!(spec.T > 0.0)) throw ValidationError("[domain] T must be positive");
  if (spec.has_inverse && spec.inverse_T != 0.0 && !(spec.inverse_T > 0.0)) {
    throw ValidationError("[inverse] T must be positive");
  }
  if (spec.modes < 0) throw ValidationError("[domain] K must be positive (or 0 for the default)");
  if (spec.nx < 2 || spec.nt < 1) throw ValidationError("[domain] nx must be at least 2 and nt at least 1");
  if (!(spec.grading >= 1.0)) throw ValidationError("[domain] grading must be at least 1");
  if (!(spec.margin > 0.0)) throw ValidationError("[inverse] margin must be positive");
  if (spec.output.format != "csv") throw ValidationError("[output] format must be csv");
  return spec;
}

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read spec file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

DirectProblemSpec direct_problem(const SpecFile& spec) {
  if (!spec.has_direct) throw ValidationError("spec has no [direct] section");
  DirectProblemSpec ds{operator_params(spec), {}, ZeroForcing{}, spec.T, spec.modes, spec.nx, spec.nt, spec.grading};
  const auto x = space_grid(ds);
  ds.psi = profile(spec.direct_psi, spec.base, x, "[direct] psi");

  const auto& f = spec.direct_forcing;
  if (f.text.empty() || f.text == "zero") return ds;
  if (is_file(f)) {
    std::ifstream in(file_path(f, spec.base));
    if (!in) throw ValidationError("cannot read forcing file " + file_path(f, spec.base).string());
    auto g = read_grid(in);
    ds.forcing = TensorForcing{std::move(g.x), std::move(g.t), std::move(g.values)};
    return ds;
  }
  const auto e = Expression::parse(f.text);
  if (!e.uses_t()) {
    auto g = SampledFunction::sample(x, [&](double v) { return e(v); });
    auto h = SampledFunction::sample(std::vector<double>{0.0, spec.T}, [](double) { return 1.0; });
    ds.forcing = SeparableForcing{std::move(g), std::move(h)};
    return ds;
  }
  const auto t = time_grid(ds);
  std::vector<double> values;
  values.reserve(x.size() * t.size());
  for (double ti : t) {
    for (double xj : x) values.push_back(e(xj, ti));
  }
  ds.forcing = TensorForcing{x, t, std::move(values)};
  return ds;
}

InverseProblemSpec inverse_problem(const SpecFile& spec) {
  if (!spec.has_inverse) throw ValidationError("spec has no [inverse] section");
  const auto x = uniform_grid(0.0, 1.0, spec.nx);
  return InverseProblemSpec{operator_params(spec),
                            profile(spec.inverse_psi, spec.base, x, "[inverse] psi"),
                            profile(spec.inverse_phi, spec.base, x, "[inverse] phi"),
                            spec.inverse_T > 0.0 ? spec.inverse_T : spec.T,
                            spec.modes,
                            spec.nx,
                            spec.nt,
                            spec.grading,
                            spec.margin};
}

}  // namespace hbfde::cli
