#pragma once

// Flat key=value run configuration. Keys carry a section prefix
// (material., geometry., emitter., quad., output., validate.); '#' starts a
// comment. Lengths are in nm and energies in eV; RunConfig stores them as given
// and converts at the point of use.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spp/constants.hpp"
#include "spp/material.hpp"
#include "spp/numerics.hpp"
#include "spp/spp_tensor.hpp"
#include "spp/types.hpp"

namespace spp::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": not a number: '" + t + "'");
  return v;
}

inline long long parse_int(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": not an integer: '" + t + "'");
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + t + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace detail

/// "a,b,c" or an inclusive range "start:stop:step".
inline std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw ConfigError(key + ": range must be start:stop:step");
    const double a = detail::parse_double(key, parts[0]);
    const double b = detail::parse_double(key, parts[1]);
    const double h = detail::parse_double(key, parts[2]);
    if (!(h > 0.0) || !(b >= a)) throw ConfigError(key + ": range needs step > 0 and stop >= start");
    const auto n = static_cast<long long>(std::floor((b - a) / h + 1e-9));
    if (n > 10'000'000) throw ConfigError(key + ": range too long");
    for (long long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * h);
  } else {
    for (const auto& p : detail::split(text, ',')) out.push_back(detail::parse_double(key, p));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

inline std::string format_number_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v[i]);
    s += (i ? "," : "") + std::string(buf, r.ptr);
  }
  return s;
}

inline Axis parse_axis(const std::string& key, const std::string& t) {
  if (t == "x") return Axis::x;
  if (t == "z") return Axis::z;
  throw ConfigError(key + ": orientation must be x or z, got '" + t + "'");
}

/// Reads key=value lines into `into`; later keys override earlier ones.
inline void parse_config_text(const std::string& text, ConfigMap& into) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    into[detail::trim(t.substr(0, eq))] = detail::trim(t.substr(eq + 1));
  }
}

inline void load_config_file(const std::string& path, ConfigMap& into) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  parse_config_text(ss.str(), into);
}

struct MaterialConfig {
  std::string model = "silver";  ///< silver | drude | fixed
  DrudeParams drude = silver_default();
  cplx fixed_eps{-2.0, 0.0};
  double eps_d = 1.0;

  Medium metal() const {
    if (model == "fixed") return FixedPermittivity{fixed_eps};
    return DrudeMetal{drude};
  }
  Medium dielectric() const { return Dielectric{eps_d}; }
  Interface at_lambda(double lambda_nm) const {
    return make_interface(dielectric(), metal(), constants::omega_from_lambda_nm(lambda_nm));
  }
};

struct GeometryConfig {
  std::vector<double> lambda_nm{580.0};
  std::vector<double> z0_nm{10.0};
  std::vector<double> x_nm{-1000.0, -500.0, 0.0, 500.0, 1000.0};
  std::vector<double> y_nm{-1000.0, -500.0, 0.0, 500.0, 1000.0};
  std::vector<double> z_nm{8.0};
  std::vector<double> point_nm{300.0, 300.0, 8.0};
  std::string sweep = "height";  ///< height | wavelength | radial
  std::vector<double> rho_nm{50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0};
  double azimuth_deg = 0.0;
};

struct EmitterConfig {
  std::vector<Axis> orientations{Axis::z};
  double charge = constants::elementary_charge;  ///< C
  double length_nm = 15.0;
  double dipole = 1e-29;                         ///< d0 (C m)
  std::optional<double> rabi;                    ///< Omega_R (rad/s)
  double tau_max = 10.0;                         ///< in units of 1/Gamma
  long long tau_steps = 201;
  bool include_free_space = false;
};

struct OutputConfig {
  std::string path = "-";
  std::string format = "csv";
  bool relative = false;
  std::optional<double> time_s;
};

struct ValidateConfig {
  long long cases = 20;
  std::uint64_t seed = 20240611;
  std::string suite = "all";  ///< all | silver | toy | reciprocity
  SppTensorOptions tensor;     ///< closed-form variant under test
};

struct RunConfig {
  MaterialConfig material;
  GeometryConfig geometry;
  EmitterConfig emitter;
  QuadratureSpec quad{1e-8, 1e-300, 20000, 40.0};
  OutputConfig output;
  ValidateConfig validate;

  /// Every resolved key, for the output header.
  ConfigMap echo() const;
};

inline RunConfig build_config(const ConfigMap& map) {
  using namespace detail;
  RunConfig c;
  for (const auto& [key, value] : map) {
    if (key == "material.model") {
      if (value != "silver" && value != "drude" && value != "fixed")
        throw ConfigError("material.model must be silver, drude or fixed");
      c.material.model = value;
    } else if (key == "material.plasma_ev") {
      c.material.drude.plasma_ev = parse_double(key, value);
    } else if (key == "material.eps_inf") {
      c.material.drude.eps_inf = parse_double(key, value);
    } else if (key == "material.damping_ev") {
      c.material.drude.damping_ev = parse_double(key, value);
    } else if (key == "material.eps_re") {
      c.material.fixed_eps.real(parse_double(key, value));
    } else if (key == "material.eps_im") {
      c.material.fixed_eps.imag(parse_double(key, value));
    } else if (key == "material.eps_d") {
      c.material.eps_d = parse_double(key, value);
    } else if (key == "geometry.lambda_nm") {
      c.geometry.lambda_nm = parse_number_list(key, value);
    } else if (key == "geometry.z0_nm") {
      c.geometry.z0_nm = parse_number_list(key, value);
    } else if (key == "geometry.x_nm") {
      c.geometry.x_nm = parse_number_list(key, value);
    } else if (key == "geometry.y_nm") {
      c.geometry.y_nm = parse_number_list(key, value);
    } else if (key == "geometry.z_nm") {
      c.geometry.z_nm = parse_number_list(key, value);
    } else if (key == "geometry.point_nm") {
      c.geometry.point_nm = parse_number_list(key, value);
      if (c.geometry.point_nm.size() != 3) throw ConfigError("geometry.point_nm needs x,y,z");
    } else if (key == "geometry.sweep") {
      if (value != "height" && value != "wavelength" && value != "radial")
        throw ConfigError("geometry.sweep must be height, wavelength or radial");
      c.geometry.sweep = value;
    } else if (key == "geometry.rho_nm") {
      c.geometry.rho_nm = parse_number_list(key, value);
    } else if (key == "geometry.azimuth_deg") {
      c.geometry.azimuth_deg = parse_double(key, value);
    } else if (key == "emitter.orientation") {
      c.emitter.orientations.clear();
      for (const auto& p : split(value, ',')) c.emitter.orientations.push_back(parse_axis(key, p));
      if (c.emitter.orientations.empty()) throw ConfigError("emitter.orientation: empty");
    } else if (key == "emitter.q") {
      c.emitter.charge = parse_double(key, value);
    } else if (key == "emitter.l_nm") {
      c.emitter.length_nm = parse_double(key, value);
    } else if (key == "emitter.d0") {
      c.emitter.dipole = parse_double(key, value);
    } else if (key == "emitter.rabi_rad_s") {
      c.emitter.rabi = parse_double(key, value);
    } else if (key == "emitter.tau_max") {
      c.emitter.tau_max = parse_double(key, value);
    } else if (key == "emitter.tau_steps") {
      c.emitter.tau_steps = parse_int(key, value);
    } else if (key == "emitter.include_free_space") {
      c.emitter.include_free_space = parse_bool(key, value);
    } else if (key == "quad.rtol") {
      c.quad.rel_tol = parse_double(key, value);
    } else if (key == "quad.atol") {
      c.quad.abs_tol = parse_double(key, value);
    } else if (key == "quad.max_subdivisions") {
      c.quad.max_subdivisions = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.tail_cutoff") {
      c.quad.tail_cutoff = parse_double(key, value);
    } else if (key == "output.path") {
      c.output.path = value;
    } else if (key == "output.format") {
      if (value != "csv" && value != "tsv") throw ConfigError("output.format must be csv or tsv");
      c.output.format = value;
    } else if (key == "output.relative") {
      c.output.relative = parse_bool(key, value);
    } else if (key == "output.time_s") {
      c.output.time_s = parse_double(key, value);
    } else if (key == "validate.cases") {
      c.validate.cases = parse_int(key, value);
    } else if (key == "validate.seed") {
      c.validate.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "validate.suite") {
      if (value != "all" && value != "silver" && value != "toy" && value != "reciprocity")
        throw ConfigError("validate.suite must be all, silver, toy or reciprocity");
      c.validate.suite = value;
    } else if (key == "validate.bracket") {
      if (value != "consistent" && value != "printed")
        throw ConfigError("validate.bracket must be consistent or printed");
      c.validate.tensor.bracket = value == "printed" ? BracketForm::printed : BracketForm::consistent;
    } else if (key == "validate.bessel") {
      if (value != "complex" && value != "modulus")
        throw ConfigError("validate.bessel must be complex or modulus");
      c.validate.tensor.bessel = value == "modulus" ? BesselArgument::modulus : BesselArgument::complex_kspp;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  try {
    c.quad.validate();
    validate(c.material.metal());
    validate(c.material.dielectric());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  auto positive = [](const std::vector<double>& v, const char* name) {
    for (double x : v)
      if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + ": values must be > 0");
  };
  auto finite = [](const std::vector<double>& v, const char* name) {
    for (double x : v)
      if (!std::isfinite(x)) throw ConfigError(std::string(name) + ": values must be finite");
  };
  positive(c.geometry.lambda_nm, "geometry.lambda_nm");
  positive(c.geometry.z0_nm, "geometry.z0_nm");
  positive(c.geometry.rho_nm, "geometry.rho_nm");
  finite(c.geometry.x_nm, "geometry.x_nm");
  finite(c.geometry.y_nm, "geometry.y_nm");
  finite(c.geometry.point_nm, "geometry.point_nm");
  for (double z : c.geometry.z_nm)
    if (!(z >= 0.0) || !std::isfinite(z)) throw ConfigError("geometry.z_nm: values must be >= 0");
  if (!(c.geometry.point_nm[2] >= 0.0)) throw ConfigError("geometry.point_nm: z must be >= 0");
  if (!(c.emitter.charge > 0.0) || !(c.emitter.length_nm > 0.0) || !(c.emitter.dipole > 0.0))
    throw ConfigError("emitter.q, emitter.l_nm and emitter.d0 must be > 0");
  if (c.emitter.rabi && !(*c.emitter.rabi > 0.0)) throw ConfigError("emitter.rabi_rad_s must be > 0");
  if (!(c.emitter.tau_max > 0.0) || c.emitter.tau_steps < 2)
    throw ConfigError("emitter.tau_max must be > 0 and emitter.tau_steps >= 2");
  if (c.validate.cases < 1) throw ConfigError("validate.cases must be >= 1");
  if (c.output.time_s && !std::isfinite(*c.output.time_s)) throw ConfigError("output.time_s must be finite");
  return c;
}

inline ConfigMap RunConfig::echo() const {
  auto num = [](double v) { return format_number_list({v}); };
  ConfigMap m;
  m["material.model"] = material.model;
  if (material.model == "fixed") {
    m["material.eps_re"] = num(material.fixed_eps.real());
    m["material.eps_im"] = num(material.fixed_eps.imag());
  } else {
    m["material.plasma_ev"] = num(material.drude.plasma_ev);
    m["material.eps_inf"] = num(material.drude.eps_inf);
    m["material.damping_ev"] = num(material.drude.damping_ev);
  }
  m["material.eps_d"] = num(material.eps_d);
  m["geometry.lambda_nm"] = format_number_list(geometry.lambda_nm);
  m["geometry.z0_nm"] = format_number_list(geometry.z0_nm);
  m["geometry.x_nm"] = format_number_list(geometry.x_nm);
  m["geometry.y_nm"] = format_number_list(geometry.y_nm);
  m["geometry.z_nm"] = format_number_list(geometry.z_nm);
  m["geometry.point_nm"] = format_number_list(geometry.point_nm);
  m["geometry.sweep"] = geometry.sweep;
  m["geometry.rho_nm"] = format_number_list(geometry.rho_nm);
  m["geometry.azimuth_deg"] = num(geometry.azimuth_deg);
  std::string o;
  for (std::size_t i = 0; i < emitter.orientations.size(); ++i)
    o += (i ? "," : "") + std::string(1, axis_name(emitter.orientations[i]));
  m["emitter.orientation"] = o;
  m["emitter.q"] = num(emitter.charge);
  m["emitter.l_nm"] = num(emitter.length_nm);
  m["emitter.d0"] = num(emitter.dipole);
  m["emitter.rabi_rad_s"] = emitter.rabi ? num(*emitter.rabi) : "unset";
  m["emitter.tau_max"] = num(emitter.tau_max);
  m["emitter.tau_steps"] = std::to_string(emitter.tau_steps);
  m["emitter.include_free_space"] = emitter.include_free_space ? "true" : "false";
  m["quad.rtol"] = num(quad.rel_tol);
  m["quad.atol"] = num(quad.abs_tol);
  m["quad.max_subdivisions"] = std::to_string(quad.max_subdivisions);
  m["quad.tail_cutoff"] = num(quad.tail_cutoff);
  m["output.format"] = output.format;
  m["output.relative"] = output.relative ? "true" : "false";
  m["output.time_s"] = output.time_s ? num(*output.time_s) : "envelope";
  m["validate.cases"] = std::to_string(validate.cases);
  m["validate.seed"] = std::to_string(validate.seed);
  m["validate.suite"] = validate.suite;
  m["validate.bracket"] = validate.tensor.bracket == BracketForm::printed ? "printed" : "consistent";
  m["validate.bessel"] = validate.tensor.bessel == BesselArgument::modulus ? "modulus" : "complex";
  return m;
}

}  // namespace spp::cli
