// sppgreen: surface-plasmon Green tensor, dipole fields and emitter statistics.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "spp/cli/commands.hpp"

namespace {

using namespace spp::cli;

std::string units_footer() {
  using namespace spp::constants;
  std::string s = "Units: lengths in nm, energies in eV, SI internally.\n";
  s += "  c    = " + format_double(speed_of_light) + " m/s\n";
  s += "  hbar = " + format_double(hbar_ev_s) + " eV s = " + format_double(hbar_j_s) + " J s\n";
  s += "  mu0  = " + format_double(mu0) + " N/A^2\n";
  s += "  hc   = " + format_double(hc_ev_nm) + " eV nm\n";
  s += "Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 validation tolerance exceeded.";
  return s;
}

struct Flags {
  std::string config;
  std::string out;
  std::string lambda_nm;
  std::string z0_nm;
  std::string orientation;
  bool relative = false;
  double time_s = 0.0;
  double quad_rtol = 0.0;
  std::string format;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key=value configuration file");
  sub->add_option("--out", f.out, "output path (default stdout)");
  sub->add_option("--lambda-nm", f.lambda_nm, "wavelength list or start:stop:step (nm)");
  sub->add_option("--z0-nm", f.z0_nm, "dipole height list or range (nm)");
  sub->add_option("--orientation", f.orientation, "dipole orientation: x, z or x,z");
  sub->add_flag("--relative", f.relative, "add free-space columns and E^2/E0^2");
  sub->add_option("--time", f.time_s, "snapshot time in seconds (default: peak envelope)");
  sub->add_option("--quad-rtol", f.quad_rtol, "quadrature relative tolerance");
  sub->add_option("--format", f.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
  sub->add_option("--set", f.sets, "override any config key (key=value), repeatable");
}

ConfigMap collect(const CLI::App& sub, const Flags& f) {
  ConfigMap map;
  if (!f.config.empty()) load_config_file(f.config, map);
  for (const auto& s : f.sets) parse_config_text(s, map);
  if (!f.lambda_nm.empty()) map["geometry.lambda_nm"] = f.lambda_nm;
  if (!f.z0_nm.empty()) map["geometry.z0_nm"] = f.z0_nm;
  if (!f.orientation.empty()) map["emitter.orientation"] = f.orientation;
  if (f.relative) map["output.relative"] = "true";
  if (sub.count("--time")) map["output.time_s"] = format_double(f.time_s);
  if (sub.count("--quad-rtol")) map["quad.rtol"] = format_double(f.quad_rtol);
  if (!f.format.empty()) map["output.format"] = f.format;
  if (!f.out.empty()) map["output.path"] = f.out;
  return map;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface-plasmon Green tensor of a dielectric/metal interface"};
  app.footer(units_footer());
  app.require_subcommand(1);
  app.set_version_flag("--version", spp::kVersion);

  Flags flags;
  struct Sub {
    const char* name;
    const char* help;
    CommandResult (*run)(const RunConfig&);
  };
  const std::vector<Sub> subs{
      {"dispersion", "SPP wavenumber, propagation and confinement lengths", cmd_dispersion},
      {"field-map", "dipole SPP field on an x/y/z grid", cmd_field_map},
      {"sweep", "E^2, E0^2 and their ratio over height, wavelength or radius", cmd_sweep},
      {"g2", "second-order correlation of the emitted photons", cmd_g2},
      {"validate", "closed-form tensor against the Sommerfeld oracle", cmd_validate},
  };
  std::vector<CLI::App*> apps;
  for (const auto& s : subs) {
    apps.push_back(app.add_subcommand(s.name, s.help));
    add_common(apps.back(), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (!apps[k]->parsed()) continue;
    try {
      const RunConfig cfg = build_config(collect(*apps[k], flags));
      const CommandResult res = subs[k].run(cfg);
      const Delimiter delim = cfg.output.format == "tsv" ? Delimiter::tab : Delimiter::comma;
      if (cfg.output.path == "-") {
        res.table.write(std::cout, delim);
      } else {
        std::ofstream out(cfg.output.path);
        if (!out) {
          std::cerr << "error: cannot write " << cfg.output.path << '\n';
          return kExitUsage;
        }
        res.table.write(out, delim);
      }
      if (res.exit_code == kExitValidation)
        std::cerr << "validation: at least one case exceeded its tolerance\n";
      return res.exit_code;
    } catch (const ConfigError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const spp::DomainError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const spp::NumericalError& e) {
      std::cerr << "numerical failure: " << e.what() << '\n';
      return kExitNumerical;
    }
  }
  return kExitUsage;
}
