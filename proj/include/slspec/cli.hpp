#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slspec/io.hpp"
#include "slspec/spectral.hpp"

namespace slspec::cli {

enum class Subcommand { Eigs, Solution, WronskianScan, Independence, Flux, BoundCheck, Selfcheck };
enum class OutputFormat { Json, Csv };

std::string_view to_string(Subcommand s);

struct RunConfig {
  Subcommand subcommand = Subcommand::Selfcheck;
  /// File path, or inline JSON when the text starts with '{'.
  std::string potential_path;
  int l = 1;
  SpectralOptions options;
  std::string output_path;
  OutputFormat format = OutputFormat::Json;
  /// ANSI colour for the human-readable error line on stderr.
  bool color = false;

  // eigs
  int n = 5;
  double search_cap = 1e4;
  // solution
  cplx lambda{1.0, 0.0};
  SolutionKind kind = SolutionKind::Regular;
  std::vector<double> x_points;
  // flux, independence
  std::optional<double> lambda0;
  double R = 1.0;
  InhomKind inhom = InhomKind::WCorrected;
  // wronskian-scan
  std::optional<ContourRegion> region;
  std::optional<int> validate_polynomial;
  int nodes_per_side = 32;
  // bound-check (angle in degrees)
  double ray_angle_deg = 90.0;
  double r_max = 400.0;
  int n_radii = 24;
};

/// Throws UsageError (bad or missing flags) or ValidationError (bad values).
/// Returns std::nullopt after printing help to `out`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Writes the result document to `out` and a one-line message to `err` on
/// failure. Returns 0, 2 (invalid input) or 3 (numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with --output redirected to a file and NO_COLOR honoured.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Built-in identity checks covering the special-function layer and the
/// Volterra solver.
std::vector<Check> selfcheck_suite();

}  // namespace slspec::cli
