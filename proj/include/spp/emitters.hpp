#pragma once

// Classical dipole antenna above the interface and the quantum-emitter
// observables built on the same Green tensor.
//
// Field convention: the antenna j(t) = (q l Omega / 2) sin(Omega t) u at
// (0, 0, z0) radiates the phasor
//
//   E = (mu0 q l Omega^2 / 2) i G(r, r0) u,   E(t) = Re[E exp(-i Omega t)],
//
// for both the plasmon field (G = G_spp) and the free-space reference
// (G = G0 with k = sqrt(eps_d) Omega / c).

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "spp/constants.hpp"
#include "spp/errors.hpp"
#include "spp/layered_green.hpp"
#include "spp/material.hpp"
#include "spp/spp_tensor.hpp"
#include "spp/types.hpp"

namespace spp {

inline constexpr const char* kFieldConvention = "SI;E=(mu0*q*l*Omega^2/2)*i*G*u;D=4*pi*G";

struct DipoleSource {
  double charge;     ///< q (C)
  double length;     ///< l (m)
  double omega;      ///< Omega (rad/s)
  Axis orientation;  ///< x or z
  double z0;         ///< height above the interface (m)

  void validate() const {
    if (!(charge > 0.0) || !(length > 0.0) || !(omega > 0.0) || !(z0 > 0.0))
      throw DomainError("DipoleSource: q, l, Omega and z0 must be > 0");
    if (orientation == Axis::y) throw DomainError("DipoleSource: orientation must be x or z");
  }

  Vec3 position() const { return {0.0, 0.0, z0}; }
  double moment() const { return charge * length; }
};

/// j(r, w) = A delta(x) delta(y) delta(z - z0) (delta(w - Omega) - delta(w + Omega)) u.
struct CurrentDensity {
  cplx amplitude;  ///< A = i sqrt(pi/2) q l Omega / 2 (A m)
  Vec3 support;
  double frequency;
  Axis orientation;

  /// Coefficient of the spectral delta at w: A at +Omega, -A at -Omega, 0 elsewhere.
  cplx spectral_weight(double w) const {
    if (w == frequency) return amplitude;
    if (w == -frequency) return -amplitude;
    return 0.0;
  }
};

inline CurrentDensity current_density_fourier(const DipoleSource& src) {
  src.validate();
  const cplx amp = I * std::sqrt(std::numbers::pi / 2.0) * src.charge * src.length * src.omega / 2.0;
  return {amp, src.position(), src.omega, src.orientation};
}

struct FieldSample {
  Vec3 point;
  Vec3c phasor;               ///< complex amplitude (V/m)
  std::optional<double> time; ///< unset: peak envelope (t = 0)
  double omega;

  /// Real field at `time` (or t = 0).
  std::array<double, 3> value() const {
    const cplx phase = std::exp(-I * omega * time.value_or(0.0));
    return {(phasor[0] * phase).real(), (phasor[1] * phase).real(), (phasor[2] * phase).real()};
  }

  /// Envelope intensity sum |E_i|^2.
  double intensity() const {
    return std::norm(phasor[0]) + std::norm(phasor[1]) + std::norm(phasor[2]);
  }
};

struct FieldOptions {
  SppTensorOptions tensor;
  std::optional<double> time;
};

namespace detail {

inline double field_prefactor(const DipoleSource& src) {
  return constants::mu0 * src.charge * src.length * src.omega * src.omega / 2.0;
}

inline void check_frequency(const DipoleSource& src, const Interface& itf) {
  if (std::abs(itf.omega - src.omega) > 1e-12 * src.omega)
    throw DomainError("interface evaluated at a frequency other than the antenna's");
}

}  // namespace detail

inline FieldSample spp_field(const DipoleSource& src, const Interface& itf, const Vec3& point,
                             const FieldOptions& opt = {}) {
  src.validate();
  detail::check_frequency(src, itf);
  if (!(point.z >= 0.0)) throw DomainError("spp_field: observation point must have z >= 0");
  const SppMode mode = itf.mode();
  const SppTensorInputs in{itf.eps_d, itf.eps_m, mode.k_spp, point.x, point.y, point.z, src.z0};
  Vec3c g{};
  for (Axis i : {Axis::x, Axis::y, Axis::z})
    g[index(i)] = g_spp(spp_component(i, src.orientation), in, opt.tensor);
  if (src.orientation == Axis::x && opt.tensor.bracket == BracketForm::printed)
    g[1] = g_spp(SppComponent::yy, in, opt.tensor);
  const cplx pre = detail::field_prefactor(src) * I;
  return {point, {pre * g[0], pre * g[1], pre * g[2]}, opt.time, src.omega};
}

inline FieldSample spp_field(const DipoleSource& src, const Medium& upper, const Medium& lower,
                             const Vec3& point, const FieldOptions& opt = {}) {
  return spp_field(src, make_interface(upper, lower, src.omega), point, opt);
}

/// Field of the same antenna in the unbounded dielectric.
inline FieldSample free_space_field(const DipoleSource& src, const Interface& itf,
                                    const Vec3& point, const FieldOptions& opt = {}) {
  src.validate();
  detail::check_frequency(src, itf);
  if (itf.eps_d.imag() != 0.0 || !(itf.eps_d.real() > 0.0))
    throw DomainError("free_space_field: dielectric must be lossless");
  const Vec3 r0 = src.position();
  if ((point - r0).norm() == 0.0) throw DomainError("free_space_field: point coincides with the source");
  const double k = itf.k0() * std::sqrt(itf.eps_d.real());
  const Mat3c G = free_space_G0(point, r0, k);
  const int u = index(src.orientation);
  const cplx pre = detail::field_prefactor(src) * I;
  return {point, {pre * G[0][u], pre * G[1][u], pre * G[2][u]}, opt.time, src.omega};
}

struct RelativeIntensity {
  double ratio;  ///< +inf when the free-space intensity vanishes
  double spp_intensity;
  double free_intensity;
  bool nodal() const { return std::isinf(ratio); }
};

inline RelativeIntensity relative_intensity(const DipoleSource& src, const Interface& itf,
                                            const Vec3& point, const FieldOptions& opt = {}) {
  const double e2 = spp_field(src, itf, point, opt).intensity();
  const double e02 = free_space_field(src, itf, point, opt).intensity();
  const double ratio = e02 > 0.0 ? e2 / e02 : std::numeric_limits<double>::infinity();
  return {ratio, e2, e02};
}

// ----------------------------------------------------------------------------
// Quantum emitter
// ----------------------------------------------------------------------------

struct QuantumEmitter {
  double dipole;      ///< d0 (C m)
  Axis orientation;
  double omega;       ///< transition frequency (rad/s)
  Vec3 position;
  double rabi;        ///< Omega_R (rad/s)

  void validate() const {
    if (!(dipole > 0.0)) throw DomainError("QuantumEmitter: d0 must be > 0");
    if (!(omega > 0.0)) throw DomainError("QuantumEmitter: omega must be > 0");
    if (!(position.z > 0.0)) throw DomainError("QuantumEmitter: emitter must sit above the interface");
    if (!(rabi >= 0.0)) throw DomainError("QuantumEmitter: Rabi frequency must be >= 0");
  }
};

enum class DecayMode { spp_only, normalized };

struct DecayOptions {
  SppTensorOptions tensor;
  bool include_free_space = false;
};

/// Gamma = (2 mu0 w^2 / hbar) Im[d0 . G(r0, r0) . d0] in s^-1 (spp_only), or
/// the same ratio to the free-space rate (normalized).
inline double decay_rate(const QuantumEmitter& em, const Interface& itf, DecayMode mode,
                         const DecayOptions& opt = {}) {
  em.validate();
  if (std::abs(itf.omega - em.omega) > 1e-12 * em.omega)
    throw DomainError("decay_rate: interface evaluated at a frequency other than the emitter's");
  const SppMode spp = itf.mode();
  const SppTensorInputs in{itf.eps_d, itf.eps_m, spp.k_spp, 0.0, 0.0, em.position.z, em.position.z};
  const cplx g = g_spp(spp_component(em.orientation, em.orientation), in, opt.tensor);
  const double im_g = g.imag();
  if (im_g < -1e-12 * std::abs(g))
    throw ConsistencyError("decay_rate: negative Im G_spp at the emitter (sign or branch error)");
  const double k = itf.k0() * std::sqrt(itf.eps_d.real());
  const double im_g0 = k / (6.0 * std::numbers::pi);
  const double total = im_g + (opt.include_free_space ? im_g0 : 0.0);
  if (mode == DecayMode::normalized) return total / im_g0;
  return 2.0 * constants::mu0 * em.omega * em.omega / constants::hbar_j_s * em.dipole * em.dipole *
         total;
}

enum class RabiBranch { underdamped, critical, overdamped };

struct RabiSplitting {
  double magnitude;  ///< |R|
  RabiBranch branch;
  bool real() const { return branch != RabiBranch::overdamped; }
};

/// R = sqrt(Omega_R^2 - Gamma^2 / 16).
inline RabiSplitting rabi_splitting(double omega_r, double gamma) {
  if (!(omega_r >= 0.0) || !(gamma >= 0.0))
    throw DomainError("rabi_splitting: Omega_R and Gamma must be >= 0");
  const double q = gamma / 4.0;
  const double r2 = (omega_r - q) * (omega_r + q);
  if (r2 > 0.0) return {std::sqrt(r2), RabiBranch::underdamped};
  if (r2 == 0.0) return {0.0, RabiBranch::critical};
  return {std::sqrt(-r2), RabiBranch::overdamped};
}

/// g2(tau) = 1 - exp(-3 Gamma tau / 4) [cos(R tau) + (3 Gamma / 4R) sin(R tau)].
inline double g2(double tau, double omega_r, double gamma) {
  if (!(tau >= 0.0)) throw DomainError("g2: tau must be >= 0");
  const RabiSplitting r = rabi_splitting(omega_r, gamma);
  if (r.branch != RabiBranch::underdamped)
    throw UnsupportedBranchError("g2: only the oscillatory branch Omega_R > Gamma/4 is supported");
  const double a = 0.75 * gamma;
  const double R = r.magnitude;
  return 1.0 - std::exp(-a * tau) * (std::cos(R * tau) + a / R * std::sin(R * tau));
}

}  // namespace spp
