#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oedg/problems.hpp"

namespace oedg {

/// Parsed run configuration: problem selection, solver knobs, and output
/// toggles. Mesh spacing may be given as hx/hy instead of cell counts; the
/// run layer converts once the domain is known.
struct RunConfig {
  std::string problem;
  ProblemParams params;
  std::optional<double> hx, hy;

  bool cell_averages = true;
  bool point_samples = true;
  bool contour = true;  // 2D runs only
  bool error_report = true;
  bool residue = false;
  bool reference = false;
  std::string out_dir = "out";
};

/// Carries every problem found in a config, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses `key=value` text with optional grouping sections `[problem]`,
/// `[time]`, `[filter]`, `[output]`. Multiple assignments per line are
/// allowed; `#` starts a comment; strings may be double-quoted; hx/hy accept
/// fractions like 1/240. Unknown keys or sections, duplicate keys, type
/// mismatches, and keys under the wrong section are all reported together.
RunConfig parse_run_config(const std::string& text, const std::string& source_name = "config");

/// Reads and parses a config file. Throws std::runtime_error if unreadable.
RunConfig load_run_config(const std::string& path);

}  // namespace oedg
