#pragma once

// Dispersive half-space media and the surface-plasmon pole of the p-polarised
// reflection denominator.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <variant>

#include "spp/constants.hpp"
#include "spp/errors.hpp"
#include "spp/numerics.hpp"

namespace spp {

/// Drude parameters, energies in eV.
struct DrudeParams {
  double plasma_ev;
  double eps_inf;
  double damping_ev;

  void validate() const {
    if (!(plasma_ev > 0.0)) throw DomainError("DrudeParams: plasma frequency must be > 0");
    if (!(eps_inf >= 1.0)) throw DomainError("DrudeParams: eps_inf must be >= 1");
    if (!(damping_ev >= 0.0)) throw DomainError("DrudeParams: damping must be >= 0");
  }
};

/// Silver: w_p = 3.76 eV, eps_inf = 9.6, gamma_p = 0.03 w_p.
inline DrudeParams silver_default() { return {3.76, 9.6, 0.03 * 3.76}; }

struct Dielectric {
  double eps;
};

struct DrudeMetal {
  DrudeParams params;
};

/// Frequency-independent permittivity. Used for model media such as the
/// lossless eps = -2 test metal; not a physical dispersion model.
struct FixedPermittivity {
  cplx eps;
};

using Medium = std::variant<Dielectric, DrudeMetal, FixedPermittivity>;

inline void validate(const Medium& m) {
  if (const auto* d = std::get_if<Dielectric>(&m)) {
    if (!(d->eps >= 1.0)) throw DomainError("Dielectric: permittivity must be real and >= 1");
  } else if (const auto* dm = std::get_if<DrudeMetal>(&m)) {
    dm->params.validate();
  }
}

/// Relative permittivity at angular frequency omega (rad/s).
inline cplx permittivity(const Medium& medium, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("permittivity: omega must be > 0");
  validate(medium);
  return std::visit(
      [omega](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Dielectric>) {
          return {m.eps, 0.0};
        } else if constexpr (std::is_same_v<T, DrudeMetal>) {
          const double wp = constants::omega_from_ev(m.params.plasma_ev);
          const double gp = constants::omega_from_ev(m.params.damping_ev);
          return m.params.eps_inf * (1.0 - wp * wp / (omega * cplx(omega, gp)));
        } else {
          return m.eps;
        }
      },
      medium);
}

struct VerticalWavenumbers {
  cplx k_d;
  cplx k_m;
};

/// k_d = +sqrt(eps_d w^2/c^2 - k^2) with Im >= 0, k_m = -sqrt(eps_m w^2/c^2 - k^2).
/// Complex k_par is accepted for contour work.
inline VerticalWavenumbers vertical_wavenumbers(cplx k_par, double omega, cplx eps_d, cplx eps_m) {
  if (!(omega > 0.0)) throw DomainError("vertical_wavenumbers: omega must be > 0");
  const double k0 = omega / constants::speed_of_light;
  const cplx k2 = k_par * k_par;
  return {branched_sqrt(eps_d * k0 * k0 - k2, BranchRule::ImNonNegative),
          branched_sqrt(eps_m * k0 * k0 - k2, BranchRule::PrincipalNegated)};
}

inline VerticalWavenumbers vertical_wavenumbers(double k_par, double omega, cplx eps_d,
                                                cplx eps_m) {
  if (!(k_par >= 0.0)) throw DomainError("vertical_wavenumbers: k_par must be >= 0");
  return vertical_wavenumbers(cplx(k_par, 0.0), omega, eps_d, eps_m);
}

/// Denominator of the p-polarised Fresnel factor, k_m eps_d - k_d eps_m.
inline cplx tm_denominator(cplx k_par, double omega, cplx eps_d, cplx eps_m) {
  const auto [k_d, k_m] = vertical_wavenumbers(k_par, omega, eps_d, eps_m);
  return k_m * eps_d - k_d * eps_m;
}

struct SppMode {
  cplx k_spp;  ///< rad/m
  double omega;
  cplx eps_d;
  cplx eps_m;

  double propagation_length() const;
  /// 1/e depth of the field in the dielectric.
  double confinement_length() const {
    return 1.0 / (std::sqrt(eps_d / -eps_m).real() * std::abs(k_spp));
  }
};

/// Lateral 1/e intensity length 1/(2 Im k_spp); +inf for a lossless mode.
inline double propagation_length(const SppMode& mode) {
  const double im = mode.k_spp.imag();
  if (im <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * im);
}

inline double SppMode::propagation_length() const { return spp::propagation_length(*this); }

namespace detail {

inline double pole_residual(cplx k, double omega, cplx eps_d, cplx eps_m) {
  const auto [k_d, k_m] = vertical_wavenumbers(k, omega, eps_d, eps_m);
  return std::abs(k_m * eps_d - k_d * eps_m) / std::abs(k_d * eps_m);
}

}  // namespace detail

inline constexpr double kPoleResidualTol = 1e-8;

/// Newton iteration on k_m eps_d - k_d eps_m = 0 starting from `guess`.
inline cplx polish_spp_pole(cplx guess, double omega, cplx eps_d, cplx eps_m, int max_iter = 50) {
  cplx k = guess;
  for (int it = 0; it < max_iter; ++it) {
    const auto [k_d, k_m] = vertical_wavenumbers(k, omega, eps_d, eps_m);
    const cplx f = k_m * eps_d - k_d * eps_m;
    const cplx df = k * (eps_m / k_d - eps_d / k_m);
    const cplx step = f / df;
    k -= step;
    if (std::abs(step) <= 1e-15 * std::abs(k)) break;
  }
  return k;
}

/// Bound SPP pole k_spp = (w/c) sqrt(eps_d eps_m / (eps_d + eps_m)).
inline SppMode spp_pole(double omega, cplx eps_d, cplx eps_m) {
  if (!(omega > 0.0)) throw DomainError("spp_pole: omega must be > 0");
  if (!((eps_d + eps_m).real() < 0.0) || !(eps_m.real() < 0.0))
    throw NoBoundModeError("no bound SPP mode: need Re(eps_d + eps_m) < 0 and Re(eps_m) < 0");
  const double k0 = omega / constants::speed_of_light;
  cplx k = k0 * std::sqrt(eps_d * eps_m / (eps_d + eps_m));
  if (k.real() < 0.0) k = -k;
  if (detail::pole_residual(k, omega, eps_d, eps_m) > kPoleResidualTol) {
    k = polish_spp_pole(k, omega, eps_d, eps_m);
    if (detail::pole_residual(k, omega, eps_d, eps_m) > kPoleResidualTol)
      throw NumericalError("spp_pole: pole does not lie on the physical sheet");
  }
  return {k, omega, eps_d, eps_m};
}

/// Dielectric/metal pair evaluated at one angular frequency.
struct Interface {
  double omega;
  cplx eps_d;
  cplx eps_m;

  double k0() const { return omega / constants::speed_of_light; }
  SppMode mode() const { return spp_pole(omega, eps_d, eps_m); }
};

inline Interface make_interface(const Medium& upper, const Medium& lower, double omega) {
  return {omega, permittivity(upper, omega), permittivity(lower, omega)};
}

inline Interface silver_air(double lambda_nm) {
  const double omega = constants::omega_from_lambda_nm(lambda_nm);
  return make_interface(Dielectric{1.0}, DrudeMetal{silver_default()}, omega);
}

}  // namespace spp
