#pragma once

// Closed-form surface-plasmon (pole) part of the Green tensor for source and
// observer above the interface. Values are G_spp; d_spp() returns 4 pi G_spp.
//
// With a = |k_spp|, s = sqrt(eps_d / -eps_m), E = exp(-s a (z + z')),
// x = k_spp rho and phi the azimuth of r - r':
//
//   G_zz = -(i a / 2) s X3 J0(x) E,            X3 = eps_m^3 / ((eps_d + eps_m)(eps_d^2 - eps_m^2))
//   G_zx = -(i a / 2) X2 cos(phi) J1(x) E,     X2 = eps_d eps_m^2 / ((eps_d + eps_m)(eps_d^2 - eps_m^2))
//   G_xx = -(i a / 4) s X2 B_xx E,             B_xx = -(J0(x) - cos(2 phi) J2(x))
//   G_yy = -(i a / 4) s X2 B_yy E,             B_yy = -(J0(x) + cos(2 phi) J2(x))
//   G_xy = G_yx = -(i a / 4) s X2 sin(2 phi) J2(x) E
//   G_xz = -G_zx, G_yz = -G_zy

#include <cmath>
#include <complex>
#include <numbers>

#include "spp/errors.hpp"
#include "spp/numerics.hpp"
#include "spp/types.hpp"

namespace spp {

enum class SppComponent { zz, xx, yy, zx, zy, xz, yz, xy, yx };

/// xz, yz, xy and yx have no printed closed form; they are obtained from
/// reciprocity and the same residue, and reported as derived extensions.
inline constexpr bool is_derived_extension(SppComponent c) {
  return c == SppComponent::xz || c == SppComponent::yz || c == SppComponent::xy ||
         c == SppComponent::yx;
}

inline SppComponent spp_component(Axis i, Axis j) {
  constexpr SppComponent table[3][3] = {{SppComponent::xx, SppComponent::xy, SppComponent::xz},
                                        {SppComponent::yx, SppComponent::yy, SppComponent::yz},
                                        {SppComponent::zx, SppComponent::zy, SppComponent::zz}};
  return table[index(i)][index(j)];
}

/// Argument of the Bessel functions.
///  - complex_kspp: k_spp rho with the complex pole, as the residue gives it.
///  - modulus: |k_spp| rho, the real-argument reading.
enum class BesselArgument { complex_kspp, modulus };

/// Reading of the in-plane brackets of xx and yy.
///  - consistent: the bracket that follows from the residue, -(J0 -+ cos 2phi J2).
///  - printed: 2 c^2 J0/x - 2 J1/x - 2 c^2 (J0 - J2) (uncorrected; diverges as rho -> 0).
enum class BracketForm { consistent, printed };

struct SppTensorOptions {
  BesselArgument bessel = BesselArgument::complex_kspp;
  BracketForm bracket = BracketForm::consistent;
};

struct SppTensorInputs {
  cplx eps_d;
  cplx eps_m;
  cplx k_spp;   ///< rad/m
  double dx;    ///< x - x' (m)
  double dy;    ///< y - y' (m)
  double z;     ///< observer height (m)
  double zp;    ///< source height (m)

  double rho() const { return std::hypot(dx, dy); }

  void validate() const {
    if (!(z >= 0.0) || !(zp >= 0.0)) throw DomainError("SppTensorInputs: z and z' must be >= 0");
    if (!std::isfinite(dx) || !std::isfinite(dy)) throw DomainError("SppTensorInputs: offsets must be finite");
    if (!(eps_m.real() < 0.0)) throw DomainError("SppTensorInputs: Re eps_m must be < 0");
    if (!(std::abs(k_spp) > 0.0) || !std::isfinite(std::abs(k_spp)))
      throw DomainError("SppTensorInputs: k_spp must be finite and nonzero");
  }
};

namespace detail {

struct SppCommon {
  double a;       // |k_spp|
  cplx s;         // sqrt(eps_d / -eps_m)
  cplx envelope;  // exp(-s a (z + z'))
  cplx x3, x2;
  cplx j0, j1, j2;
  cplx x;         // Bessel argument
  double rho, cphi, sphi;
};

inline SppCommon spp_common(const SppTensorInputs& in, const SppTensorOptions& opt) {
  in.validate();
  const cplx sum = in.eps_d + in.eps_m;
  if (std::abs(sum) <= 1e-12 * std::abs(in.eps_m))
    throw ResonanceError("spp_tensor: eps_d + eps_m = 0 (surface-plasmon resonance)");
  SppCommon c{};
  c.a = std::abs(in.k_spp);
  c.s = std::sqrt(in.eps_d / -in.eps_m);
  c.envelope = std::exp(-c.s * c.a * (in.z + in.zp));
  const cplx den = sum * (in.eps_d * in.eps_d - in.eps_m * in.eps_m);
  c.x3 = in.eps_m * in.eps_m * in.eps_m / den;
  c.x2 = in.eps_d * in.eps_m * in.eps_m / den;
  c.rho = in.rho();
  c.cphi = c.rho > 0.0 ? in.dx / c.rho : 0.0;
  c.sphi = c.rho > 0.0 ? in.dy / c.rho : 0.0;
  if (opt.bessel == BesselArgument::modulus) {
    const double x = c.a * c.rho;
    c.x = x;
    c.j0 = bessel_j(0, x);
    c.j1 = bessel_j(1, x);
    c.j2 = bessel_j(2, x);
  } else {
    c.x = in.k_spp * c.rho;
    c.j0 = bessel_j(0, c.x);
    c.j1 = bessel_j(1, c.x);
    c.j2 = bessel_j(2, c.x);
  }
  return c;
}

inline cplx printed_bracket(const SppCommon& c, double dir) {
  if (!(c.rho > 0.0)) throw DomainError("spp_tensor: printed xx/yy bracket is singular at rho = 0");
  const double d2 = dir * dir;
  return 2.0 * d2 * c.j0 / c.x - 2.0 * c.j1 / c.x - 2.0 * d2 * (c.j0 - c.j2);
}

}  // namespace detail

inline cplx g_spp(SppComponent comp, const SppTensorInputs& in, const SppTensorOptions& opt = {}) {
  const auto c = detail::spp_common(in, opt);
  const cplx lateral = -I * c.a / 4.0 * c.s * c.x2 * c.envelope;
  const cplx vertical = -I * c.a / 2.0 * c.x2 * c.envelope;
  const double c2 = c.cphi * c.cphi - c.sphi * c.sphi;
  const double s2 = 2.0 * c.cphi * c.sphi;
  const bool printed = opt.bracket == BracketForm::printed;
  switch (comp) {
    case SppComponent::zz: return -I * c.a / 2.0 * c.s * c.x3 * c.j0 * c.envelope;
    case SppComponent::zx: return vertical * c.cphi * c.j1;
    case SppComponent::zy: return vertical * c.sphi * c.j1;
    case SppComponent::xz: return -vertical * c.cphi * c.j1;
    case SppComponent::yz: return -vertical * c.sphi * c.j1;
    case SppComponent::xx:
      return lateral * (printed ? detail::printed_bracket(c, c.cphi) : -(c.j0 - c2 * c.j2));
    case SppComponent::yy:
      return lateral * (printed ? detail::printed_bracket(c, c.sphi) : -(c.j0 + c2 * c.j2));
    case SppComponent::xy:
    case SppComponent::yx: return lateral * s2 * c.j2;
  }
  return {};
}

inline cplx d_spp(SppComponent comp, const SppTensorInputs& in, const SppTensorOptions& opt = {}) {
  return 4.0 * std::numbers::pi * g_spp(comp, in, opt);
}

/// Full 3x3 G_spp.
inline Mat3c g_spp_tensor(const SppTensorInputs& in, const SppTensorOptions& opt = {}) {
  Mat3c G{};
  for (Axis i : {Axis::x, Axis::y, Axis::z})
    for (Axis j : {Axis::x, Axis::y, Axis::z})
      G[index(i)][index(j)] = g_spp(spp_component(i, j), in, opt);
  return G;
}

}  // namespace spp
