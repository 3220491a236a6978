#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "spp/cli/config.hpp"
#include "spp/cli/csv.hpp"
#include "spp/cli/parallel.hpp"
#include "spp/cli/validate.hpp"
#include "spp/constants.hpp"
#include "spp/emitters.hpp"
#include "spp/material.hpp"
#include "spp/version.hpp"

namespace spp::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitValidation = 3 };

struct CommandResult {
  CsvTable table;
  int exit_code = kExitOk;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline void add_header(CsvTable& t, const std::string& command, const RunConfig& cfg) {
  t.add_comment(std::string("sppgreen ") + kVersion + " command=" + command +
                " convention=" + kFieldConvention);
  std::string echo = "config";
  for (const auto& [k, v] : cfg.echo()) echo += " " + k + "=" + v;
  t.add_comment(echo);
}

inline std::string orientation_name(Axis a) { return std::string(1, axis_name(a)); }

inline DipoleSource make_source(const RunConfig& cfg, Axis orientation, double lambda_nm,
                                double z0_nm) {
  return {cfg.emitter.charge, cfg.emitter.length_nm * constants::nm,
          constants::omega_from_lambda_nm(lambda_nm), orientation, z0_nm * constants::nm};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_dispersion(const RunConfig& cfg) {
  CsvTable t({"lambda_nm", "omega_rad_s", "eps_m_re", "eps_m_im", "kspp_re", "kspp_im", "L_prop_m",
              "confinement_m", "status"});
  add_header(t, "dispersion", cfg);
  for (double lambda : cfg.geometry.lambda_nm) {
    const Interface itf = cfg.material.at_lambda(lambda);
    std::vector<Cell> row{lambda, itf.omega};
    push_complex(row, itf.eps_m);
    try {
      const SppMode mode = itf.mode();
      push_complex(row, mode.k_spp);
      row.emplace_back(mode.propagation_length());
      row.emplace_back(mode.confinement_length());
      row.emplace_back(std::string("ok"));
    } catch (const NoBoundModeError&) {
      row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN, std::string("no_bound_mode")});
    }
    t.add_row(std::move(row));
  }
  return {std::move(t), kExitOk};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_field_map(const RunConfig& cfg) {
  std::vector<std::string> cols{"lambda_nm", "orientation", "z0_nm", "x_nm", "y_nm", "z_nm",
                                "Ex",        "Ey",          "Ez",    "E2"};
  if (cfg.output.relative) cols.insert(cols.end(), {"E0x", "E0y", "E0z", "E02", "ratio"});
  cols.push_back("status");
  CsvTable t(cols);
  add_header(t, "field-map", cfg);

  struct Point {
    double lambda, z0, x, y, z;
    Axis orientation;
  };
  std::vector<Point> pts;
  const auto& g = cfg.geometry;
  for (double lambda : g.lambda_nm)
    for (Axis o : cfg.emitter.orientations)
      for (double z0 : g.z0_nm)
        for (double z : g.z_nm)
          for (double y : g.y_nm)
            for (double x : g.x_nm) pts.push_back({lambda, z0, x, y, z, o});

  FieldOptions fopt;
  fopt.time = cfg.output.time_s;
  auto rows = parallel_map<std::vector<Cell>>(pts.size(), [&](std::size_t k) {
    const Point& p = pts[k];
    const Interface itf = cfg.material.at_lambda(p.lambda);
    const DipoleSource src = make_source(cfg, p.orientation, p.lambda, p.z0);
    const Vec3 r{p.x * constants::nm, p.y * constants::nm, p.z * constants::nm};
    std::vector<Cell> row{p.lambda, orientation_name(p.orientation), p.z0, p.x, p.y, p.z};
    const FieldSample e = spp_field(src, itf, r, fopt);
    for (double v : e.value()) row.emplace_back(v);
    row.emplace_back(e.intensity());
    std::string status = "ok";
    if (cfg.output.relative) {
      if ((r - src.position()).norm() == 0.0) {
        row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN, kNaN});
        status = "source_point";
      } else {
        const FieldSample e0 = free_space_field(src, itf, r, fopt);
        for (double v : e0.value()) row.emplace_back(v);
        const double i0 = e0.intensity();
        row.emplace_back(i0);
        if (i0 > 0.0) {
          row.emplace_back(e.intensity() / i0);
        } else {
          row.emplace_back(std::numeric_limits<double>::infinity());
          status = "nodal";
        }
      }
    }
    row.emplace_back(status);
    return row;
  });
  for (auto& r : rows) t.add_row(std::move(r));
  return {std::move(t), kExitOk};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_sweep(const RunConfig& cfg) {
  CsvTable t({"sweep", "value", "lambda_nm", "z0_nm", "x_nm", "y_nm", "z_nm", "E2_z", "E02_z",
              "ratio_z", "E2_x", "E02_x", "ratio_x", "status"});
  add_header(t, "sweep", cfg);
  const auto& g = cfg.geometry;

  struct Job {
    double value, lambda, z0, x, y, z;
  };
  std::vector<Job> jobs;
  const double px = g.point_nm[0], py = g.point_nm[1], pz = g.point_nm[2];
  if (g.sweep == "height") {
    for (double lambda : g.lambda_nm)
      for (double z0 : g.z0_nm) jobs.push_back({z0, lambda, z0, px, py, pz});
  } else if (g.sweep == "wavelength") {
    for (double z0 : g.z0_nm)
      for (double lambda : g.lambda_nm) jobs.push_back({lambda, lambda, z0, px, py, pz});
  } else {
    const double phi = g.azimuth_deg * std::numbers::pi / 180.0;
    for (double lambda : g.lambda_nm)
      for (double z0 : g.z0_nm)
        for (double rho : g.rho_nm)
          jobs.push_back({rho, lambda, z0, rho * std::cos(phi), rho * std::sin(phi), pz});
  }

  auto rows = parallel_map<std::vector<Cell>>(jobs.size(), [&](std::size_t k) {
    const Job& j = jobs[k];
    const Interface itf = cfg.material.at_lambda(j.lambda);
    const Vec3 r{j.x * constants::nm, j.y * constants::nm, j.z * constants::nm};
    std::vector<Cell> row{g.sweep, j.value, j.lambda, j.z0, j.x, j.y, j.z};
    std::string status = "ok";
    for (Axis o : {Axis::z, Axis::x}) {
      const DipoleSource src = make_source(cfg, o, j.lambda, j.z0);
      if ((r - src.position()).norm() == 0.0) {
        row.insert(row.end(), {kNaN, kNaN, kNaN});
        status = "source_point";
        continue;
      }
      const RelativeIntensity ri = relative_intensity(src, itf, r);
      row.insert(row.end(), {ri.spp_intensity, ri.free_intensity, ri.ratio});
      if (ri.nodal()) status = "nodal";
    }
    row.emplace_back(status);
    return row;
  });
  for (auto& r : rows) t.add_row(std::move(r));
  return {std::move(t), kExitOk};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_g2(const RunConfig& cfg) {
  if (!cfg.emitter.rabi)
    throw ConfigError("g2 needs the Rabi frequency: set emitter.rabi_rad_s (rad/s)");
  CsvTable t({"orientation", "lambda_nm", "z0_nm", "gamma_s", "rabi_rad_s", "R_rad_s", "tau_gamma",
              "tau_s", "g2"});
  add_header(t, "g2", cfg);
  const double rabi = *cfg.emitter.rabi;
  DecayOptions dopt;
  dopt.include_free_space = cfg.emitter.include_free_space;
  for (Axis o : cfg.emitter.orientations)
    for (double lambda : cfg.geometry.lambda_nm)
      for (double z0 : cfg.geometry.z0_nm) {
        const Interface itf = cfg.material.at_lambda(lambda);
        const QuantumEmitter em{cfg.emitter.dipole, o, itf.omega, {0.0, 0.0, z0 * constants::nm},
                                rabi};
        const double gamma = decay_rate(em, itf, DecayMode::spp_only, dopt);
        const RabiSplitting R = rabi_splitting(rabi, gamma);
        const auto n = cfg.emitter.tau_steps;
        for (long long s = 0; s < n; ++s) {
          const double tg = cfg.emitter.tau_max * static_cast<double>(s) / static_cast<double>(n - 1);
          const double tau = tg / gamma;
          t.add_row({orientation_name(o), lambda, z0, gamma, rabi, R.magnitude, tg, tau,
                     g2(tau, rabi, gamma)});
        }
      }
  return {std::move(t), kExitOk};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_validate(const RunConfig& cfg) {
  const int n = static_cast<int>(cfg.validate.cases);
  const auto seed = cfg.validate.seed;
  const auto& suite = cfg.validate.suite;
  std::vector<OracleCase> cases;
  auto append = [&](std::vector<OracleCase> more) {
    cases.insert(cases.end(), more.begin(), more.end());
  };
  if (suite == "all" || suite == "silver") append(silver_cases(n, seed));
  if (suite == "all" || suite == "toy") append(toy_cases(n, seed));
  if (suite == "all" || suite == "reciprocity")
    append(reciprocity_cases((n + 1) / 2, seed, 10.0 * cfg.quad.rel_tol));

  SommerfeldOptions opt;
  opt.quad = cfg.quad;
  const auto results = run_cases(cases, opt, cfg.validate.tensor);

  CsvTable t({"suite", "case", "component", "lambda_nm", "rho_nm", "zsum_nm", "closed_form_re",
              "closed_form_im", "oracle_re", "oracle_im", "rel_err", "tolerance", "status"});
  add_header(t, "validate", cfg);
  bool exceeded = false;
  bool failed = false;
  for (const auto& r : results) {
    const auto& c = r.c;
    const Vec3 d = c.X - c.Xp;
    std::vector<Cell> row{c.suite, static_cast<long long>(c.id),
                          std::string{axis_name(c.i), axis_name(c.j)}, c.lambda_nm,
                          std::hypot(d.x, d.y) / constants::nm, (c.X.z + c.Xp.z) / constants::nm};
    push_complex(row, r.reference);
    push_complex(row, r.oracle);
    row.insert(row.end(), {r.rel_err, c.tolerance, r.status});
    t.add_row(std::move(row));
    if (r.status == "exceeded") exceeded = true;
    else if (!r.passed()) failed = true;
  }
  const int code = exceeded ? kExitValidation : (failed ? kExitNumerical : kExitOk);
  return {std::move(t), code};
}

}  // namespace spp::cli
