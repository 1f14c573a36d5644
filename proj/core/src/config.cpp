#include "oedg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace oedg {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "configuration invalid:";
  for (const auto& e : errors) {
    out += "\n  ";
    out += e;
  }
  return out;
}

bool parse_double_token(const std::string& v, double& out) {
  if (v.empty()) return false;
  char* end = nullptr;
  out = std::strtod(v.c_str(), &end);
  return end == v.c_str() + v.size();
}

bool parse_fraction_token(const std::string& v, double& out) {
  const auto slash = v.find('/');
  if (slash == std::string::npos) return parse_double_token(v, out);
  double num = 0.0, den = 0.0;
  if (!parse_double_token(v.substr(0, slash), num)) return false;
  if (!parse_double_token(v.substr(slash + 1), den)) return false;
  if (den == 0.0) return false;
  out = num / den;
  return true;
}

bool parse_int_token(const std::string& v, int& out) {
  if (v.empty()) return false;
  char* end = nullptr;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size()) return false;
  if (n < -2147483647L || n > 2147483647L) return false;
  out = static_cast<int>(n);
  return true;
}

bool parse_bool_token(std::string v, bool& out) {
  for (auto& ch : v) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (v == "true" || v == "on" || v == "yes" || v == "1") {
    out = true;
    return true;
  }
  if (v == "false" || v == "off" || v == "no" || v == "0") {
    out = false;
    return true;
  }
  return false;
}

enum class VType { Str, Int, PosDouble, NonNegDouble, AnyDouble, Fraction, Bool, Rk, Damping };

struct KeySpec {
  const char* key;
  const char* section;
  VType type;
};

constexpr KeySpec kKeys[] = {
    {"problem", "problem", VType::Str},
    {"k", "problem", VType::Int},
    {"n", "problem", VType::Int},
    {"nx", "problem", VType::Int},
    {"ny", "problem", VType::Int},
    {"hx", "problem", VType::Fraction},
    {"hy", "problem", VType::Fraction},
    {"lambda", "problem", VType::PosDouble},
    {"beta", "problem", VType::PosDouble},
    {"gamma", "problem", VType::PosDouble},
    {"units", "problem", VType::Str},
    {"t_final", "time", VType::NonNegDouble},
    {"cfl", "time", VType::PosDouble},
    {"rk", "time", VType::Rk},
    {"oe", "filter", VType::Bool},
    {"damping", "filter", VType::Damping},
    {"cell_averages", "output", VType::Bool},
    {"point_samples", "output", VType::Bool},
    {"contour", "output", VType::Bool},
    {"error_report", "output", VType::Bool},
    {"residue", "output", VType::Bool},
    {"reference", "output", VType::Bool},
    {"out_dir", "output", VType::Str},
};

const KeySpec* find_key(const std::string& key) {
  for (const auto& ks : kKeys)
    if (key == ks.key) return &ks;
  return nullptr;
}

bool known_section(const std::string& name) {
  for (const auto& ks : kKeys)
    if (name == ks.section) return true;
  return false;
}

struct Parser {
  std::string src;
  std::string raw;
  std::vector<std::string> errors;
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;

  Parser(const std::string& text, const std::string& name) : src(name), raw(text) {}

  void err(int line, const std::string& msg) {
    errors.push_back(src + ":" + std::to_string(line) + ": " + msg);
  }

  void run() {
    std::istringstream in(raw);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) parse_line(line, ++lineno);
  }

  void parse_line(std::string line, int lineno) {
    // Strip a comment that is not inside a quoted value.
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.erase(i);
        break;
      }
    }
    size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    skip_ws();
    if (pos == line.size()) return;

    if (line[pos] == '[') {
      const auto close = line.find(']', pos);
      if (close == std::string::npos) {
        err(lineno, "unterminated section header");
        return;
      }
      const std::string name = line.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      skip_ws();
      if (pos != line.size()) {
        err(lineno, "trailing text after section header");
        return;
      }
      if (!known_section(name)) {
        err(lineno, "unknown section [" + name + "]");
        return;
      }
      section = name;
      return;
    }

    while (pos < line.size()) {
      skip_ws();
      if (pos == line.size()) break;
      const size_t key_start = pos;
      while (pos < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_' ||
              line[pos] == '-'))
        ++pos;
      const std::string key = line.substr(key_start, pos - key_start);
      skip_ws();
      if (key.empty() || pos == line.size() || line[pos] != '=') {
        err(lineno, "expected key=value, found '" + line.substr(key_start) + "'");
        return;
      }
      ++pos;  // '='
      skip_ws();
      std::string value;
      if (pos < line.size() && line[pos] == '"') {
        const auto close = line.find('"', pos + 1);
        if (close == std::string::npos) {
          err(lineno, "unterminated string for key '" + key + "'");
          return;
        }
        value = line.substr(pos + 1, close - pos - 1);
        pos = close + 1;
      } else {
        const size_t val_start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        value = line.substr(val_start, pos - val_start);
        if (value.empty()) {
          err(lineno, "missing value for key '" + key + "'");
          return;
        }
      }
      assign(key, value, lineno);
    }
  }

  void assign(const std::string& key, const std::string& value, int lineno) {
    const KeySpec* ks = find_key(key);
    if (!ks) {
      err(lineno, "unknown key '" + key + "'");
      return;
    }
    if (!section.empty() && section != ks->section) {
      err(lineno, "key '" + key + "' belongs to [" + ks->section + "], found under [" + section +
                      "]");
      return;
    }
    if (!seen.insert(key).second) {
      err(lineno, "duplicate key '" + key + "'");
      return;
    }

    auto bad = [&](const char* what) {
      err(lineno, std::string("key '") + key + "' expects " + what + ", got '" + value + "'");
    };
    double d = 0.0;
    int i = 0;
    bool b = false;
    switch (ks->type) {
      case VType::Str:
        break;
      case VType::Int:
        if (!parse_int_token(value, i) || i <= 0) {
          bad("a positive integer");
          return;
        }
        break;
      case VType::PosDouble:
        if (!parse_double_token(value, d) || !(d > 0.0)) {
          bad("a positive number");
          return;
        }
        break;
      case VType::NonNegDouble:
        if (!parse_double_token(value, d) || !(d >= 0.0)) {
          bad("a nonnegative number");
          return;
        }
        break;
      case VType::AnyDouble:
        if (!parse_double_token(value, d)) {
          bad("a number");
          return;
        }
        break;
      case VType::Fraction:
        if (!parse_fraction_token(value, d) || !(d > 0.0)) {
          bad("a positive number or fraction like 1/240");
          return;
        }
        break;
      case VType::Bool:
        if (!parse_bool_token(value, b)) {
          bad("a boolean (true/false/on/off)");
          return;
        }
        break;
      case VType::Rk:
        if (value != "euler" && value != "ssp-rk2" && value != "ssp-rk3" &&
            value != "rk4-classic") {
          bad("one of euler, ssp-rk2, ssp-rk3, rk4-classic");
          return;
        }
        break;
      case VType::Damping:
        if (value != "scale-invariant" && value != "legacy") {
          bad("scale-invariant or legacy");
          return;
        }
        break;
    }

    auto& p = cfg.params;
    if (key == "problem")
      cfg.problem = value;
    else if (key == "k")
      p.k = i;
    else if (key == "n")
      p.n = i;
    else if (key == "nx")
      p.nx = i;
    else if (key == "ny")
      p.ny = i;
    else if (key == "hx")
      cfg.hx = d;
    else if (key == "hy")
      cfg.hy = d;
    else if (key == "lambda")
      p.lambda = d;
    else if (key == "beta")
      p.beta = d;
    else if (key == "gamma")
      p.gamma = d;
    else if (key == "units")
      p.units = value;
    else if (key == "t_final")
      p.t_final = d;
    else if (key == "cfl")
      p.cfl = d;
    else if (key == "rk")
      p.rk = rk_kind_from_name(value);
    else if (key == "oe")
      p.oe = b;
    else if (key == "damping")
      p.variant = value == "legacy" ? DampingVariant::Legacy : DampingVariant::ScaleInvariant;
    else if (key == "cell_averages")
      cfg.cell_averages = b;
    else if (key == "point_samples")
      cfg.point_samples = b;
    else if (key == "contour")
      cfg.contour = b;
    else if (key == "error_report")
      cfg.error_report = b;
    else if (key == "residue")
      cfg.residue = b;
    else if (key == "reference")
      cfg.reference = b;
    else if (key == "out_dir")
      cfg.out_dir = value;
  }
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_run_config(const std::string& text, const std::string& source_name) {
  Parser parser(text, source_name);
  parser.run();
  if (parser.cfg.problem.empty() && parser.errors.empty())
    parser.errors.push_back(source_name + ": missing required key 'problem'");
  if (!parser.errors.empty()) throw ConfigError(std::move(parser.errors));
  return parser.cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path);
}

}  // namespace oedg
