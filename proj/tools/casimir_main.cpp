#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casimir/csv.hpp"
#include "casimir/electrostatics.hpp"
#include "casimir/errors.hpp"
#include "casimir/run_config.hpp"
#include "casimir/svg.hpp"
#include "casimir/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace casimir;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  bool svg = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda_p;
};

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config;
  if (!args.config_path.empty()) {
    config = load_run_config(args.config_path);
  }
  if (args.seed) config.seed = *args.seed;
  if (args.lambda_p) config.lambda_p = *args.lambda_p;
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  validate(config);
  return config;
}

fs::path prepare_out_dir(const RunConfig& config) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + config.output_dir +
                  "': " + ec.message());
  }
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void note_file(const fs::path& path) {
  std::cout << "wrote " << path.string() << '\n';
}

int cmd_force_curve(const RunConfig& config, double z_min, double z_max,
                    int points, double phi, bool svg) {
  const fs::path dir = prepare_out_dir(config);
  const Material material = config.material();
  const SphereGeometry sphere = config.sphere();

  CsvTable table;
  table.header = {"z_m", "f_lateral_n", "bracket_factor", "beta", "flags"};
  std::vector<double> zs, forces;
  for (int i = 0; i < points; ++i) {
    const double z =
        points > 1 ? z_min + (z_max - z_min) * i / (points - 1.0) : z_min;
    const CorrugationPair pair = config.pair_at(phi, config.separations[0]);
    const LateralForceResult result =
        lateral_force_closed(z, pair, sphere, material);
    table.rows.push_back({format_double(z), format_double(result.force),
                          format_double(result.bracket_factor),
                          format_double(result.beta),
                          result.flags.to_string()});
    zs.push_back(z);
    forces.push_back(result.force);
  }
  const fs::path csv_path = dir / "force_curve.csv";
  write_csv(csv_path.string(), table);
  note_file(csv_path);

  if (svg) {
    SvgSeries series{zs, forces, "#1f77b4", true, true};
    SvgPlotOptions options;
    options.title = "lateral Casimir force vs separation";
    options.x_label = "separation (m)";
    options.y_label = "|lateral force| (N)";
    options.log_x = true;
    options.log_y = true;
    const fs::path svg_path = dir / "force_curve.svg";
    write_svg_plot(svg_path.string(), {series}, options);
    note_file(svg_path);
  }
  return kExitOk;
}

int cmd_lateral_scan(const RunConfig& config, double z,
                     double systematic_fraction, double student_t, bool svg) {
  const fs::path dir = prepare_out_dir(config);
  const Material material = config.material();
  const SphereGeometry sphere = config.sphere();
  const CorrugationPair pair = config.pair_at(0.0, z);

  ScanConfig scan_config = config.scan;
  scan_config.rng_seed = derive_seed(config.seed, "lateral-scan");
  const ScanSet scan = simulate_scan(scan_config, z, pair, sphere, material);

  const fs::path scan_path = dir / "scan.csv";
  write_csv(scan_path.string(), scan_set_to_table(scan));
  note_file(scan_path);

  const SineFit fit =
      fit_sine(scan.displacements, scan.mean_force, config.period);
  const double inverted =
      invert_separation(fit.amplitude, pair, sphere, material);
  const std::vector<double> amplitudes =
      per_scan_amplitudes(scan, config.period);
  const ConfidenceInterval ci =
      confidence_interval(amplitudes, systematic_fraction, student_t);

  CsvTable fit_table;
  fit_table.header = {"amplitude_n",  "phase_rad",    "offset_n",
                      "rms_residual_n", "inverted_z_m", "sigma_mean_n",
                      "systematic_n", "student_t",    "delta_total_n",
                      "confidence_level"};
  fit_table.rows.push_back(
      {format_double(fit.amplitude), format_double(fit.phase),
       format_double(fit.offset), format_double(fit.rms_residual),
       format_double(inverted), format_double(ci.sigma_mean),
       format_double(ci.systematic), format_double(ci.student_t),
       format_double(ci.delta_total), format_double(ci.confidence_level)});
  const fs::path fit_path = dir / "scan_fit.csv";
  write_csv(fit_path.string(), fit_table);
  note_file(fit_path);

  if (svg) {
    SvgSeries data{scan.displacements, scan.mean_force, "#333333", false,
                   true};
    std::vector<double> model(scan.displacements.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
      model[i] = fit.amplitude * std::sin(2.0 * std::numbers::pi *
                                              scan.displacements[i] /
                                              config.period +
                                          fit.phase) +
                 fit.offset;
    }
    SvgSeries curve{scan.displacements, model, "#d62728", true, false};
    SvgPlotOptions options;
    options.title = "average lateral force vs lateral displacement";
    options.x_label = "lateral displacement (m)";
    options.y_label = "lateral force (N)";
    const fs::path svg_path = dir / "scan.svg";
    write_svg_plot(svg_path.string(), {data, curve}, options);
    note_file(svg_path);
  }
  return kExitOk;
}

int cmd_slope(const RunConfig& config, bool svg, bool exact_quartic) {
  if (config.separations.size() < 2) {
    throw FitError(
        "slope: need at least 2 separations in the configuration");
  }
  const fs::path dir = prepare_out_dir(config);
  const Material material = config.material();
  const SphereGeometry sphere = config.sphere();
  const CorrugationPair pair = config.pair_at(0.0, config.separations[0]);

  std::vector<double> amps;
  CsvTable table;
  table.header = {"z_m", "amplitude_n"};
  for (double z : config.separations) {
    double amplitude;
    if (exact_quartic) {
      // Test mode: replace the physics with an exact inverse-quartic curve.
      const double z0 = config.separations[0];
      amplitude = 1e-13 * std::pow(z0 / z, 4.0);
    } else {
      amplitude = lateral_amplitude(z, pair, sphere, material).amplitude;
    }
    amps.push_back(amplitude);
    table.rows.push_back({format_double(z), format_double(amplitude)});
  }
  const fs::path csv_path = dir / "slope.csv";
  write_csv(csv_path.string(), table);
  note_file(csv_path);

  const PowerLawFit fit = fit_power_law(config.separations, amps);
  CsvTable fit_table;
  fit_table.header = {"slope", "intercept", "slope_stderr"};
  fit_table.rows.push_back({format_double(fit.slope),
                            format_double(fit.intercept),
                            format_double(fit.slope_stderr)});
  const fs::path fit_path = dir / "slope_fit.csv";
  write_csv(fit_path.string(), fit_table);
  note_file(fit_path);

  if (svg) {
    SvgSeries data{config.separations, amps, "#333333", false, true};
    std::vector<double> line(config.separations.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
      line[i] = std::exp(fit.intercept -
                         fit.slope * std::log(config.separations[i]));
    }
    SvgSeries fitted{config.separations, line, "#d62728", true, false};
    SvgPlotOptions options;
    options.title = "lateral force amplitude vs separation";
    options.x_label = "separation (m)";
    options.y_label = "amplitude (N)";
    options.log_x = true;
    options.log_y = true;
    const fs::path svg_path = dir / "slope.svg";
    write_svg_plot(svg_path.string(), {data, fitted}, options);
    note_file(svg_path);
  }
  std::cout << "slope " << format_double(fit.slope) << " stderr "
            << format_double(fit.slope_stderr) << '\n';
  return kExitOk;
}

int cmd_calibrate(const RunConfig& config, const std::string& input, double z,
                  bool smooth) {
  const fs::path dir = prepare_out_dir(config);
  const std::vector<CalibrationSample> samples =
      calibration_from_table(read_csv(input));
  const SphereGeometry sphere = config.sphere();
  const CorrugationPair pair =
      smooth ? CorrugationPair(config.period, 0.0, 0.0, 0.0, z)
             : config.pair_at(0.0, z);
  const CalibrationResult result =
      calibrate_from_sweep(samples, z, sphere, pair);

  CsvTable table;
  table.header = {"spring_constant_n_per_m", "residual_potential_v",
                  "fit_residual"};
  table.rows.push_back({format_double(result.spring_constant),
                        format_double(result.residual_potential),
                        format_double(result.fit_residual)});
  const fs::path path = dir / "calibration.csv";
  write_csv(path.string(), table);
  note_file(path);
  std::cout << "spring constant " << format_double(result.spring_constant)
            << " N/m, residual potential "
            << format_double(result.residual_potential) << " V\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& config, double corrupt_c3) {
  const fs::path dir = prepare_out_dir(config);
  VerifyOptions options;
  options.c3_perturbation = corrupt_c3;
  const std::vector<CheckResult> checks = run_verify_checks(config, options);
  print_check_lines(std::cout, checks);
  const std::string report = format_run_report(config, checks);
  const fs::path path = dir / "verify_report.txt";
  write_text(path, report);
  note_file(path);
  if (!all_checks_passed(checks)) {
    std::cout << "verification FAILED\n";
    return kExitCheckFailed;
  }
  std::cout << "verification passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "casimir: lateral Casimir force between corrugated surfaces, with "
      "synthetic scan analysis"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the common options after the subcommand name

  CommonArgs common;
  app.add_option("--config", common.config_path, "configuration file");
  app.add_option("--out", common.out_dir, "output directory");
  app.add_flag("--svg", common.svg, "also emit SVG plots");
  app.add_option("--seed", common.seed, "override the configuration seed");
  app.add_option("--lambda-p", common.lambda_p,
                 "override the plasma wavelength (m)");

  auto* force_curve = app.add_subcommand(
      "force-curve", "tabulate the closed-form lateral force over z");
  double z_min = 2.0e-7, z_max = 3.0e-7, phi = std::numbers::pi / 2.0;
  int points = 50;
  force_curve->add_option("--z-min", z_min, "range start (m)");
  force_curve->add_option("--z-max", z_max, "range end (m)");
  force_curve->add_option("--points", points, "number of rows");
  force_curve->add_option("--phi", phi, "corrugation phase (rad)");

  auto* lateral_scan = app.add_subcommand(
      "lateral-scan", "simulate an averaged lateral scan and fit it");
  std::optional<double> scan_z;
  double systematic_fraction = 0.05, student_t = 2.0;
  lateral_scan->add_option("--z", scan_z, "mean separation (m)");
  lateral_scan->add_option("--systematic-fraction", systematic_fraction,
                           "systematic error fraction");
  lateral_scan->add_option("--student-t", student_t, "Student coefficient");

  auto* slope = app.add_subcommand(
      "slope", "amplitude vs separation with a power-law fit");
  bool exact_quartic = false;
  slope
      ->add_flag("--exact-quartic", exact_quartic,
                 "replace amplitudes with an exact z^-4 curve (self test)")
      ->group("");

  auto* calibrate = app.add_subcommand(
      "calibrate", "recover spring constant and residual potential");
  std::string input;
  double calibrate_z = 0.0;
  bool smooth = false;
  calibrate->add_option("--input", input, "sweep CSV (v1_volts,deflection)")
      ->required();
  calibrate->add_option("--z", calibrate_z, "separation during the sweep (m)")
      ->required();
  calibrate->add_flag("--smooth", smooth,
                      "treat both surfaces as smooth (zero amplitudes)");

  auto* verify = app.add_subcommand(
      "verify", "run the invariant and reference-value checks");
  double corrupt_c3 = 0.0;
  verify
      ->add_option("--corrupt-c3", corrupt_c3,
                   "perturb the third conductivity coefficient in the "
                   "closed-form route (self test)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = resolve_config(common);
    if (force_curve->parsed()) {
      if (points < 0) {
        throw ValidationError("force-curve: point count must be nonnegative");
      }
      return cmd_force_curve(config, z_min, z_max, points, phi, common.svg);
    }
    if (lateral_scan->parsed()) {
      const double z = scan_z.value_or(config.separations[0]);
      return cmd_lateral_scan(config, z, systematic_fraction, student_t,
                              common.svg);
    }
    if (slope->parsed()) {
      return cmd_slope(config, common.svg, exact_quartic);
    }
    if (calibrate->parsed()) {
      return cmd_calibrate(config, input, calibrate_z, smooth);
    }
    if (verify->parsed()) {
      return cmd_verify(config, corrupt_c3);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}
