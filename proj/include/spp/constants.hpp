#pragma once

#include <numbers>

namespace spp::constants {

// CODATA 2018.
inline constexpr double speed_of_light = 299792458.0;            // m/s, exact
inline constexpr double hbar_ev_s = 6.582119569e-16;             // eV s
inline constexpr double hbar_j_s = 1.054571817e-34;              // J s
inline constexpr double mu0 = 1.25663706212e-6;                  // N/A^2
inline constexpr double epsilon0 = 8.8541878128e-12;             // F/m
inline constexpr double elementary_charge = 1.602176634e-19;     // C, exact
inline constexpr double hc_ev_nm = 1239.841984;                  // eV nm

inline constexpr double pi = std::numbers::pi;
inline constexpr double nm = 1e-9;

/// Vacuum wavelength (nm) -> angular frequency (rad/s).
constexpr double omega_from_lambda_nm(double lambda_nm) {
  return 2.0 * pi * speed_of_light / (lambda_nm * nm);
}

/// Photon energy (eV) -> angular frequency (rad/s).
constexpr double omega_from_ev(double energy_ev) { return energy_ev / hbar_ev_s; }

constexpr double ev_from_omega(double omega) { return omega * hbar_ev_s; }

constexpr double lambda_nm_from_omega(double omega) {
  return 2.0 * pi * speed_of_light / omega / nm;
}

}  // namespace spp::constants
