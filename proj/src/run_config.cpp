#include "casimir/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "msg.hpp"

namespace casimir {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(const std::string& text, int line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(detail::msg("config line ", line, ": '", text,
                                 "' is not a number"));
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, int line) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(detail::msg("config line ", line, ": '", text,
                                 "' is not an unsigned integer"));
  }
  return value;
}

int parse_int(const std::string& text, int line) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(
        detail::msg("config line ", line, ": '", text, "' is not an integer"));
  }
  return value;
}

bool parse_bool(const std::string& text, int line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParseError(detail::msg("config line ", line, ": '", text,
                               "' is not a boolean (true/false)"));
}

std::vector<double> parse_double_list(const std::string& text, int line) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(parse_double(trim(item), line));
  }
  return values;
}

}  // namespace

Material RunConfig::material() const { return Material{lambda_p}; }

SphereGeometry RunConfig::sphere() const {
  return SphereGeometry{sphere_radius};
}

CorrugationPair RunConfig::pair_at(double phase, double z) const {
  return CorrugationPair(period, amplitude_plate, amplitude_sphere, phase, z);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(detail::msg("cannot open config file '", path, "'"));
  }
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(detail::msg("config line ", line_no,
                                   ": expected 'key = value', got '",
                                   stripped, "'"));
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "material.lambda_p") {
      config.lambda_p = parse_double(value, line_no);
    } else if (key == "sphere.radius") {
      config.sphere_radius = parse_double(value, line_no);
    } else if (key == "corrugation.period") {
      config.period = parse_double(value, line_no);
    } else if (key == "corrugation.amplitude_plate") {
      config.amplitude_plate = parse_double(value, line_no);
    } else if (key == "corrugation.amplitude_sphere") {
      config.amplitude_sphere = parse_double(value, line_no);
    } else if (key == "separations") {
      config.separations = parse_double_list(value, line_no);
    } else if (key == "scan.step") {
      config.scan.step = parse_double(value, line_no);
    } else if (key == "scan.n_steps") {
      config.scan.n_steps = parse_int(value, line_no);
    } else if (key == "scan.n_scans") {
      config.scan.n_scans = parse_int(value, line_no);
    } else if (key == "scan.noise_sigma") {
      config.scan.noise_sigma = parse_double(value, line_no);
    } else if (key == "scan.tilt_slope") {
      config.scan.tilt_slope = parse_double(value, line_no);
    } else if (key == "scan.z_correction") {
      config.scan.z_correction_enabled = parse_bool(value, line_no);
    } else if (key == "seed") {
      config.seed = parse_u64(value, line_no);
    } else if (key == "output.dir") {
      config.output_dir = value;
    } else {
      throw ParseError(
          detail::msg("config line ", line_no, ": unknown key '", key, "'"));
    }
  }
  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  std::vector<std::string> violations;
  const auto check = [&](bool ok, std::string text) {
    if (!ok) violations.push_back(std::move(text));
  };

  check(config.lambda_p >= 0.0 && std::isfinite(config.lambda_p),
        detail::msg("material.lambda_p must be nonnegative, got ",
                    config.lambda_p));
  check(config.sphere_radius > 0.0 && std::isfinite(config.sphere_radius),
        detail::msg("sphere.radius must be positive, got ",
                    config.sphere_radius));
  check(config.period > 0.0 && std::isfinite(config.period),
        detail::msg("corrugation.period must be positive, got ",
                    config.period));
  check(config.amplitude_plate >= 0.0 &&
            std::isfinite(config.amplitude_plate),
        detail::msg("corrugation.amplitude_plate must be nonnegative, got ",
                    config.amplitude_plate));
  check(config.amplitude_sphere >= 0.0 &&
            std::isfinite(config.amplitude_sphere),
        detail::msg("corrugation.amplitude_sphere must be nonnegative, got ",
                    config.amplitude_sphere));
  check(!config.separations.empty(), "separations must not be empty");
  const double combined = config.amplitude_plate + config.amplitude_sphere;
  for (double z : config.separations) {
    check(z > combined && std::isfinite(z),
          detail::msg("separation ", z,
                      " must exceed the combined corrugation amplitudes ",
                      combined));
  }
  check(config.scan.step > 0.0 && std::isfinite(config.scan.step),
        detail::msg("scan.step must be positive, got ", config.scan.step));
  check(config.scan.n_steps >= 0,
        detail::msg("scan.n_steps must be nonnegative, got ",
                    config.scan.n_steps));
  check(config.scan.n_scans >= 1,
        detail::msg("scan.n_scans must be at least 1, got ",
                    config.scan.n_scans));
  check(config.scan.noise_sigma >= 0.0 &&
            std::isfinite(config.scan.noise_sigma),
        detail::msg("scan.noise_sigma must be nonnegative, got ",
                    config.scan.noise_sigma));
  check(std::isfinite(config.scan.tilt_slope),
        "scan.tilt_slope must be finite");

  if (!violations.empty()) {
    std::string joined = "invalid configuration:";
    for (const auto& v : violations) {
      joined += "\n  - ";
      joined += v;
    }
    throw ValidationError(joined);
  }
}

std::string format_run_config(const RunConfig& config) {
  std::ostringstream out;
  out << "material.lambda_p = " << format_double(config.lambda_p) << '\n'
      << "sphere.radius = " << format_double(config.sphere_radius) << '\n'
      << "corrugation.period = " << format_double(config.period) << '\n'
      << "corrugation.amplitude_plate = "
      << format_double(config.amplitude_plate) << '\n'
      << "corrugation.amplitude_sphere = "
      << format_double(config.amplitude_sphere) << '\n';
  out << "separations = ";
  for (std::size_t i = 0; i < config.separations.size(); ++i) {
    if (i) out << ", ";
    out << format_double(config.separations[i]);
  }
  out << '\n';
  out << "scan.step = " << format_double(config.scan.step) << '\n'
      << "scan.n_steps = " << config.scan.n_steps << '\n'
      << "scan.n_scans = " << config.scan.n_scans << '\n'
      << "scan.noise_sigma = " << format_double(config.scan.noise_sigma)
      << '\n'
      << "scan.tilt_slope = " << format_double(config.scan.tilt_slope) << '\n'
      << "scan.z_correction = "
      << (config.scan.z_correction_enabled ? "true" : "false") << '\n'
      << "seed = " << config.seed << '\n'
      << "output.dir = " << config.output_dir << '\n';
  return out.str();
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  // FNV-1a over the label, then a splitmix64 finalizer.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::uint64_t x = base ^ h;
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace casimir
