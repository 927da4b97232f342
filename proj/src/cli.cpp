#include "slspec/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "slspec/errors.hpp"

namespace slspec::cli {

namespace {

using io::Json;

constexpr const char* kToolVersion = "1.0.0";

std::string num(double v) { return std::isfinite(v) ? io::format_number(v) : ""; }

Json complex_list(const std::vector<cplx>& zs) {
  Json a = Json::array();
  for (cplx z : zs) a.push_back(io::complex_to_json(z));
  return a;
}

Json report_json(const IndependenceReport& r) {
  Json j;
  j["lambda0"] = r.lambda0;
  j["wronskian"] = io::complex_to_json(r.wronskian);
  j["flux"] = io::complex_to_json(r.flux);
  j["certified"] = r.certified;
  j["wronskian_samples"] = complex_list({r.wronskian_samples.begin(), r.wronskian_samples.end()});
  j["wronskian_spread"] = r.wronskian_spread;
  return j;
}

Json region_json(const ContourRegion& r) {
  Json j;
  j["re_min"] = r.re_min;
  j["re_max"] = r.re_max;
  j["im_min"] = r.im_min;
  j["im_max"] = r.im_max;
  j["nodes_per_side"] = r.nodes_per_side;
  return j;
}

ContourRegion effective_region(const RunConfig& c) {
  ContourRegion r = c.region.value_or(ContourRegion{});
  r.nodes_per_side = c.nodes_per_side;
  return r;
}

bool needs_potential(const RunConfig& c) {
  if (c.subcommand == Subcommand::Selfcheck) return false;
  if (c.subcommand == Subcommand::WronskianScan && c.validate_polynomial) return false;
  return true;
}

Json inputs_echo(const RunConfig& c, const std::optional<Potential>& q) {
  Json j;
  j["subcommand"] = std::string(to_string(c.subcommand));
  if (q) {
    j["potential"] = io::potential_to_json(*q);
    j["potential_weighted_norm"] = q->weighted_norm();
  }
  if (c.subcommand != Subcommand::Selfcheck && !(c.subcommand == Subcommand::WronskianScan && c.validate_polynomial))
    j["l"] = c.l;
  switch (c.subcommand) {
    case Subcommand::Eigs:
      j["n"] = c.n;
      j["search_cap"] = c.search_cap;
      break;
    case Subcommand::Solution:
      j["lambda"] = io::complex_to_json(c.lambda);
      j["kind"] = std::string(to_string(c.kind));
      if (!c.x_points.empty()) j["x"] = c.x_points;
      break;
    case Subcommand::Independence:
      if (c.lambda0) j["lambda0"] = *c.lambda0;
      else j["n"] = c.n;
      break;
    case Subcommand::Flux:
      j["lambda0"] = c.lambda0.value_or(0.0);
      j["R"] = c.R;
      j["inhom"] = std::string(to_string(c.inhom));
      break;
    case Subcommand::WronskianScan:
      j["region"] = region_json(effective_region(c));
      if (c.validate_polynomial) j["validate_polynomial"] = *c.validate_polynomial;
      else j["inhom"] = std::string(to_string(c.inhom));
      break;
    case Subcommand::BoundCheck:
      j["ray_angle_deg"] = c.ray_angle_deg;
      j["r_max"] = c.r_max;
      j["radii"] = c.n_radii;
      j["x"] = c.x_points.empty() ? std::vector<double>{0.25, 0.5, 1.0} : c.x_points;
      break;
    case Subcommand::Selfcheck:
      break;
  }
  Json tol;
  tol["tol_picard"] = c.options.solver.tol_picard;
  tol["tol_residual"] = c.options.solver.tol_residual;
  tol["tol_eig"] = c.options.tol_eig;
  j["tolerances"] = tol;
  j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  return j;
}

// Result of one subcommand: a JSON object and the same data as CSV rows.
struct Outcome {
  Json results;
  std::vector<std::vector<std::string>> csv;
  // Set when the computation finished but a check inside it failed.
  std::optional<std::string> failure;
};

Outcome do_eigs(const RunConfig& c, const Potential& q) {
  const auto e = dirichlet_eigenvalues(q, Order(c.l), c.n, c.search_cap, c.options);
  Outcome o;
  o.results["values"] = e.values;
  o.results["residuals"] = e.residuals;
  o.results["bracket_widths"] = e.bracket_widths;
  o.csv.push_back({"n", "value", "residual", "bracket_width"});
  for (std::size_t i = 0; i < e.values.size(); ++i)
    o.csv.push_back({std::to_string(i + 1), num(e.values[i]), num(e.residuals[i]), num(e.bracket_widths[i])});
  return o;
}

Outcome do_solution(const RunConfig& c, const Potential& q) {
  const SpectralParameter lam(c.lambda);
  const Order l(c.l);
  SpectralOptions opts = c.options;
  for (double x : c.x_points)
    if (!(x > 0.0 && x <= 1.0)) throw ValidationError("--x values must lie in (0, 1]");
  opts.mesh.breakpoints.insert(opts.mesh.breakpoints.end(), c.x_points.begin(), c.x_points.end());
  SolutionField f = c.kind == SolutionKind::Regular
                        ? regular_solution(q, l, lam, opts.mesh, opts.solver)
                        : irregular_solution(q, l, lam,
                                             c.kind == SolutionKind::IrregularW ? InhomKind::WCorrected
                                                                                 : InhomKind::VOriginal,
                                             opts.mesh, opts.solver);
  std::vector<double> xs;
  if (c.x_points.empty()) xs.assign(f.grid.begin(), f.grid.end());
  else xs = c.x_points;
  std::vector<cplx> vals, ders;
  for (double x : xs) {
    const auto [v, d] = f.cauchy_at(x);
    vals.push_back(v);
    ders.push_back(d);
  }
  Outcome o;
  o.results["kind"] = std::string(to_string(f.kind));
  o.results["x"] = xs;
  o.results["values"] = complex_list(vals);
  o.results["derivatives"] = complex_list(ders);
  o.results["residual_estimate"] = f.residual_estimate;
  o.results["picard_iterations"] = f.picard_iterations;
  o.results["picard_increment"] = f.picard_increment;
  o.csv.push_back({"x", "re_value", "im_value", "re_derivative", "im_derivative", "abs_value"});
  for (std::size_t i = 0; i < xs.size(); ++i)
    o.csv.push_back({num(xs[i]), num(vals[i].real()), num(vals[i].imag()), num(ders[i].real()),
                     num(ders[i].imag()), num(std::abs(vals[i]))});
  return o;
}

Outcome do_scan(const RunConfig& c, const std::optional<Potential>& q) {
  const ContourRegion region = effective_region(c);
  const WindingResult w = c.validate_polynomial
                              ? winding_number(validation_polynomial(*c.validate_polynomial), region, c.options.winding)
                              : wronskian_zero_count(*q, Order(c.l), region, c.inhom, c.options);
  Outcome o;
  o.results["mode"] = c.validate_polynomial ? "validation" : "wronskian";
  o.results["count"] = w.count;
  o.results["raw"] = io::complex_to_json(w.raw);
  o.results["nodes_per_side"] = w.nodes_per_side;
  o.results["evaluations"] = w.evaluations;
  o.csv.push_back({"count", "raw_re", "raw_im", "nodes_per_side", "evaluations"});
  o.csv.push_back({std::to_string(w.count), num(w.raw.real()), num(w.raw.imag()), std::to_string(w.nodes_per_side),
                   std::to_string(w.evaluations)});
  return o;
}

Outcome do_independence(const RunConfig& c, const Potential& q) {
  const Order l(c.l);
  std::vector<IndependenceReport> reports;
  Outcome o;
  if (c.lambda0) {
    reports.push_back(independence_certificate(q, l, *c.lambda0, c.options));
  } else {
    const ShiftResult s = shift_to_positive(q, l, 1.0, c.options);
    const auto e = dirichlet_eigenvalues(s.potential, l, c.n, s.potential.max_abs() + c.search_cap, c.options);
    o.results["shift"] = s.shift;
    o.results["eigenvalues"] = e.values;
    for (double mu : e.values) reports.push_back(independence_certificate(s.potential, l, mu, c.options));
  }
  Json list = Json::array();
  bool all = true;
  o.csv.push_back({"lambda0", "wronskian_re", "wronskian_im", "flux_re", "flux_im", "certified", "wronskian_spread"});
  for (const auto& r : reports) {
    list.push_back(report_json(r));
    all = all && r.certified;
    o.csv.push_back({num(r.lambda0), num(r.wronskian.real()), num(r.wronskian.imag()), num(r.flux.real()),
                     num(r.flux.imag()), r.certified ? "true" : "false", num(r.wronskian_spread)});
  }
  o.results["reports"] = list;
  o.results["all_certified"] = all;
  return o;
}

Outcome do_flux(const RunConfig& c, const Potential& q) {
  if (!c.lambda0) throw UsageError("flux requires --lambda0");
  const cplx f = flux(q, Order(c.l), *c.lambda0, c.R, c.inhom, c.options);
  Outcome o;
  o.results["flux"] = io::complex_to_json(f);
  o.csv.push_back({"R", "flux_re", "flux_im"});
  o.csv.push_back({num(c.R), num(f.real()), num(f.imag())});
  return o;
}

Outcome do_bound(const RunConfig& c, const Potential& q) {
  const std::vector<double> xs = c.x_points.empty() ? std::vector<double>{0.25, 0.5, 1.0} : c.x_points;
  for (double x : xs)
    if (!(x > c.options.mesh.x_min && x <= 1.0)) throw ValidationError("--x values must lie in (x_min, 1]");
  const double angle = c.ray_angle_deg * std::numbers::pi / 180.0;
  const BoundReport rep = bound_check(q, Order(c.l), angle, c.r_max, xs, c.n_radii, c.options);
  Outcome o;
  Json rows = Json::array();
  bool all = true;
  for (const auto& row : rep.rows) {
    Json r;
    r["x"] = row.x;
    r["max_ratio"] = row.max_ratio;
    r["slope"] = row.slope;
    r["slope_bound"] = row.slope_bound;
    r["within_bound"] = row.within_bound;
    rows.push_back(r);
    all = all && row.within_bound;
  }
  o.results["rows"] = rows;
  o.results["radii"] = rep.radii;
  o.results["failed_radii"] = rep.failed_radii;
  o.results["all_within_bound"] = all;
  o.csv.push_back({"x", "r", "abs_psi", "ratio"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < rep.radii.size(); ++j) {
      const double s = std::abs(SpectralParameter(std::polar(rep.radii[j], angle)).sqrt_lambda().imag());
      const double ratio = rep.ratios[i][j];
      o.csv.push_back({num(xs[i]), num(rep.radii[j]), num(ratio * std::exp(s * (2.0 - xs[i]))), num(ratio)});
    }
  }
  return o;
}

Outcome do_selfcheck() {
  Outcome o;
  Json list = Json::array();
  o.csv.push_back({"name", "passed", "value", "threshold"});
  std::string failed;
  for (const Check& ch : selfcheck_suite()) {
    Json j;
    j["name"] = ch.name;
    j["passed"] = ch.passed;
    j["value"] = ch.value;
    j["threshold"] = ch.threshold;
    list.push_back(j);
    o.csv.push_back({ch.name, ch.passed ? "true" : "false", num(ch.value), num(ch.threshold)});
    if (!ch.passed) failed += (failed.empty() ? "" : ", ") + ch.name;
  }
  o.results["checks"] = list;
  if (!failed.empty()) o.failure = "selfcheck failed: " + failed;
  return o;
}

Outcome dispatch(const RunConfig& c, const std::optional<Potential>& q) {
  switch (c.subcommand) {
    case Subcommand::Eigs: return do_eigs(c, *q);
    case Subcommand::Solution: return do_solution(c, *q);
    case Subcommand::WronskianScan: return do_scan(c, q);
    case Subcommand::Independence: return do_independence(c, *q);
    case Subcommand::Flux: return do_flux(c, *q);
    case Subcommand::BoundCheck: return do_bound(c, *q);
    case Subcommand::Selfcheck: return do_selfcheck();
  }
  return {};
}

void report_error(std::ostream& err, bool color, std::string_view cls, const std::string& message) {
  if (color) err << "\x1b[1;31merror\x1b[0m";
  else err << "error";
  err << " [" << cls << "]: " << message << '\n';
}

}  // namespace

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Eigs: return "eigs";
    case Subcommand::Solution: return "solution";
    case Subcommand::WronskianScan: return "wronskian-scan";
    case Subcommand::Independence: return "independence";
    case Subcommand::Flux: return "flux";
    case Subcommand::BoundCheck: return "bound-check";
    case Subcommand::Selfcheck: return "selfcheck";
  }
  return "?";
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Regular and irregular solutions, Dirichlet eigenvalues and independence certificates for "
               "-u'' + l(l+1)/x^2 u + q u = lambda u on [0,1]",
               "slspec"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string lambda_text, kind_text = "regular", inhom_text = "w", format_text = "json";
  std::vector<double> region;
  std::optional<double> lambda0;
  std::optional<int> validate;

  auto common = [&](CLI::App* s, bool potential_required) {
    auto* p = s->add_option("--potential", c.potential_path, "Potential JSON file (or inline JSON object)");
    if (potential_required) p->required();
    s->add_option("--l", c.l, "Angular momentum l >= 0")->capture_default_str();
    s->add_option("--tol-picard", c.options.solver.tol_picard, "Picard increment tolerance")->capture_default_str();
    s->add_option("--tol-residual", c.options.solver.tol_residual, "Equation residual tolerance")
        ->capture_default_str();
    s->add_option("--tol-eig", c.options.tol_eig, "Relative eigenvalue bracket width")->capture_default_str();
    s->add_option("--output", c.output_path, "Write the result here instead of stdout");
    s->add_option("--format", format_text, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  auto inhom_opt = [&](CLI::App* s) {
    s->add_option("--inhom", inhom_text, "Inhomogeneous term: w (outgoing) or v (singular)")
        ->check(CLI::IsMember({"w", "v"}))
        ->capture_default_str();
  };

  auto* eigs = app.add_subcommand("eigs", "Dirichlet eigenvalues mu_1 < mu_2 < ...");
  common(eigs, true);
  eigs->add_option("--n", c.n, "Number of eigenvalues")->capture_default_str();
  eigs->add_option("--search-cap", c.search_cap, "Give up above this lambda")->capture_default_str();

  auto* sol = app.add_subcommand("solution", "Regular or irregular solution on its grid");
  common(sol, true);
  sol->add_option("--lambda", lambda_text, "Spectral parameter, e.g. 30 or 5+3i")->required();
  sol->add_option("--kind", kind_text, "regular, w or v")
      ->check(CLI::IsMember({"regular", "w", "v"}))
      ->capture_default_str();
  sol->add_option("--x", c.x_points, "Evaluate at these points instead of the grid")->delimiter(',');

  auto* scan = app.add_subcommand("wronskian-scan", "Count zeros of the Wronskian inside a rectangle");
  common(scan, false);
  inhom_opt(scan);
  scan->add_option("--region", region, "re_min,re_max,im_min,im_max")->delimiter(',')->expected(4);
  scan->add_option("--nodes", c.nodes_per_side, "Initial nodes per side (>= 32)")->capture_default_str();
  scan->add_option("--validate-polynomial", validate, "Count roots of the validation polynomial of this degree");

  auto* indep = app.add_subcommand("independence", "Wronskian and flux certificate of independence");
  common(indep, true);
  indep->add_option("--lambda0", lambda0, "Certify at this lambda; default: the first --n eigenvalues after shifting");
  indep->add_option("--n", c.n, "Number of eigenvalues")->capture_default_str();

  auto* fl = app.add_subcommand("flux", "Flux -psi' conj(psi) + conj(psi') psi at R >= 1");
  common(fl, true);
  inhom_opt(fl);
  fl->add_option("--lambda0", lambda0, "Positive spectral parameter")->required();
  fl->add_option("--R", c.R, "Evaluation radius R >= 1")->capture_default_str();

  auto* bound = app.add_subcommand("bound-check", "Growth of the irregular solution along a ray");
  common(bound, true);
  bound->add_option("--ray-angle", c.ray_angle_deg, "Ray angle in degrees, in (0, 360)")->capture_default_str();
  bound->add_option("--r-max", c.r_max, "Largest |lambda|")->capture_default_str();
  bound->add_option("--radii", c.n_radii, "Number of log-spaced radii")->capture_default_str();
  bound->add_option("--x", c.x_points, "Points x (default 0.25,0.5,1)")->delimiter(',');

  auto* self = app.add_subcommand("selfcheck", "Run the built-in identity checks");
  self->add_option("--output", c.output_path, "Write the result here instead of stdout");
  self->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  for (Subcommand s : {Subcommand::Eigs, Subcommand::Solution, Subcommand::WronskianScan, Subcommand::Independence,
                       Subcommand::Flux, Subcommand::BoundCheck, Subcommand::Selfcheck})
    if (to_string(s) == name) c.subcommand = s;

  c.format = format_text == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.inhom = inhom_text == "v" ? InhomKind::VOriginal : InhomKind::WCorrected;
  c.kind = kind_text == "w"   ? SolutionKind::IrregularW
           : kind_text == "v" ? SolutionKind::IrregularV
                              : SolutionKind::Regular;
  if (!lambda_text.empty()) c.lambda = io::parse_complex(lambda_text);
  c.lambda0 = lambda0;
  c.validate_polynomial = validate;
  if (!region.empty())
    c.region = ContourRegion{region[0], region[1], region[2], region[3], c.nodes_per_side};

  if (c.l < 0) throw ValidationError("--l must be >= 0");
  if (!(c.options.solver.tol_picard > 0.0)) throw ValidationError("--tol-picard must be > 0");
  if (!(c.options.solver.tol_residual > 0.0)) throw ValidationError("--tol-residual must be > 0");
  if (!(c.options.tol_eig > 0.0)) throw ValidationError("--tol-eig must be > 0");
  if (c.subcommand == Subcommand::WronskianScan) {
    if (c.validate_polynomial && !c.potential_path.empty())
      throw UsageError("--validate-polynomial and --potential are mutually exclusive");
    if (!c.validate_polynomial && c.potential_path.empty())
      throw UsageError("wronskian-scan requires --potential or --validate-polynomial");
    if (!c.validate_polynomial && !c.region) throw UsageError("wronskian-scan with --potential requires --region");
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<Potential> q;
  Outcome outcome;
  std::optional<ErrorClass> error;
  std::string message;
  std::optional<std::vector<double>> partial;
  try {
    if (needs_potential(c)) q = io::parse_potential(c.potential_path);
    outcome = dispatch(c, q);
    if (outcome.failure) {
      error = ErrorClass::Accuracy;
      message = *outcome.failure;
    }
  } catch (const PartialResultError& e) {
    error = e.error_class();
    message = e.what();
    partial = e.found();
  } catch (const Error& e) {
    error = e.error_class();
    message = e.what();
  }

  const int code = error ? exit_code(*error) : 0;
  if (error) report_error(err, c.color, to_string(*error), message);

  if (c.format == OutputFormat::Csv) {
    if (error && !outcome.failure) return code;
    io::CsvWriter w(out);
    for (const auto& row : outcome.csv) w.row(row);
    return code;
  }

  Json doc;
  doc["tool_version"] = kToolVersion;
  doc["inputs_echo"] = inputs_echo(c, q);
  if (partial) {
    Json r;
    r["values"] = *partial;
    doc["results"] = r;
  } else if (error && !outcome.failure) {
    doc["results"] = nullptr;
  } else {
    doc["results"] = outcome.results;
  }
  Json diag;
  diag["status"] = error ? "error" : "ok";
  diag["exit_code"] = code;
  diag["error_class"] = error ? Json(std::string(to_string(*error))) : Json(nullptr);
  diag["message"] = error ? Json(message) : Json(nullptr);
  doc["diagnostics"] = diag;
  out << io::dump_json(doc) << '\n';
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const char* no_color = std::getenv("NO_COLOR");
  const bool color = (no_color == nullptr || *no_color == '\0') && ::isatty(STDERR_FILENO) == 1;
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const Error& e) {
    report_error(err, color, to_string(e.error_class()), e.what());
    return exit_code(e.error_class());
  }
  if (!config) return 0;
  config->color = color;
  if (config->output_path.empty()) return run(*config, out, err);

  std::ostringstream buffer;
  const int code = run(*config, buffer, err);
  std::ofstream file(config->output_path, std::ios::binary);
  if (!file) {
    report_error(err, color, to_string(ErrorClass::Usage), "cannot write " + config->output_path);
    return exit_code(ErrorClass::Usage);
  }
  file << buffer.str();
  return code;
}

std::vector<Check> selfcheck_suite() {
  std::vector<Check> checks;
  auto add = [&](std::string name, double value, double threshold) {
    checks.push_back({std::move(name), value < threshold, value, threshold});
  };
  const Order l1(1);

  {
    double worst = 0.0;
    for (double deg : {30.0, 90.0, 150.0})
      for (int a = 1; a <= 20; ++a) {
        const SpectralParameter lam(std::polar(5.0 * a, deg * std::numbers::pi / 180.0));
        const cplx c32 = lam.lambda() * lam.sqrt_lambda();
        for (int b = 0; b < 20; ++b) {
          const double x = 0.05 + 0.95 * b / 19.0;
          const cplx w = w_free(l1, x, lam).value;
          const cplx tv = 3.0 * v_free(l1, x, lam).value;
          const cplx tu = cplx(0.0, 1.0 / 3.0) * c32 * u_free(l1, x, lam).value;
          // Off the real axis both terms outgrow w by e^{2 Im z}; measure
          // against their size, which is what double arithmetic can resolve.
          worst = std::max(worst, std::abs(w - (tv - tu)) / (std::abs(w) + std::abs(tv) + std::abs(tu)));
        }
      }
    add("w_identity", worst, 1e-13);
  }
  {
    double worst = 0.0;
    for (int l = 0; l <= 10; ++l)
      for (int k = 0; k <= 100; ++k) {
        const double z = 0.01 * std::pow(5000.0, k / 100.0);
        const auto j = rb_j(Order(l), cplx(z));
        const auto y = rb_y(Order(l), cplx(z));
        worst = std::max(worst, std::abs(j.value * y.derivative - j.derivative * y.value - 1.0));
      }
    add("riccati_bessel_wronskian", worst, 1e-10);
  }
  {
    double worst_uv = 0.0, worst_uw = 0.0;
    for (cplx lam : {cplx(30.0), cplx(5.0, 3.0), cplx(-50.0), cplx(0.0, 400.0)})
      for (double x : {0.1, 0.5, 1.0}) {
        const SpectralParameter p(lam);
        const auto u = u_free(l1, x, p), v = v_free(l1, x, p), w = w_free(l1, x, p);
        const double size = std::max(1.0, std::abs(u.value * v.derivative) + std::abs(u.derivative * v.value));
        worst_uv = std::max(worst_uv, std::abs(u.value * v.derivative - u.derivative * v.value - 1.0) / size);
        worst_uw = std::max(worst_uw, std::abs(u.value * w.derivative - u.derivative * w.value - 3.0) / 3.0);
      }
    add("free_wronskian_uv", worst_uv, 1e-13);
    add("free_wronskian_uw", worst_uw, 1e-10);
  }
  {
    const Potential bump = Potential::polynomial({0.0, 20.0, -20.0});
    double spread = 0.0;
    for (cplx lam : {cplx(30.0), cplx(5.0, 3.0)}) {
      SpectralOptions o;
      o.mesh.breakpoints = {0.2, 0.5, 0.9};
      const SpectralParameter p(lam);
      const auto phi = regular_solution(bump, l1, p, o.mesh);
      const auto psi = irregular_solution(bump, l1, p, InhomKind::WCorrected, o.mesh);
      const cplx mid = wronskian(phi, psi, 0.5);
      for (double x : {0.2, 0.9}) spread = std::max(spread, std::abs(wronskian(phi, psi, x) - mid) / std::abs(mid));
    }
    add("volterra_wronskian_constancy", spread, 1e-8);
  }
  {
    double worst = 0.0;
    for (double c : {-3.0, 5.0})
      for (cplx lam : {cplx(30.0), cplx(5.0, 3.0)}) {
        const auto phi = regular_solution(Potential::constant(c), l1, SpectralParameter(lam));
        const SpectralParameter shifted(lam - c);
        double scale = 0.0, dev = 0.0;
        for (Eigen::Index i = 0; i < phi.size(); ++i) {
          const cplx ref = u_free(l1, phi.grid[i], shifted).value;
          scale = std::max(scale, std::abs(ref));
          dev = std::max(dev, std::abs(phi.values[i] - ref));
        }
        worst = std::max(worst, dev / scale);
      }
    add("constant_shift_regular", worst, 1e-10);
  }
  {
    const auto e0 = dirichlet_eigenvalues(Potential::constant(0.0), l1, 3, 1e3);
    const auto e7 = dirichlet_eigenvalues(Potential::constant(7.0), l1, 3, 1e3);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(e7.values[i] - e0.values[i] - 7.0));
    add("constant_shift_eigenvalues", worst, 1e-8);
  }
  return checks;
}

}  // namespace slspec::cli
