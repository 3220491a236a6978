#pragma once

// Green's tensor of two half-spaces: dielectric for z > 0, metal for z < 0.
//
// The reduced matrix g(k_par, w | z, z') lives in the frame rotated so that
// k_par points along x. Rows are written with K = c^2/w^2 and
//
//   r_p = (k_m eps_d + k_d eps_m) / (k_m eps_d - k_d eps_m),
//   r_s' = (k_m + k_d) / (k_m - k_d),
//
// k_d = +sqrt(eps_d k0^2 - k^2), k_m = -sqrt(eps_m k0^2 - k^2) (Im k_d >= 0).
// The rows carry an overall minus sign relative to the retarded solution;
// sommerfeld_D() flips it so that D = 4 pi G, matching free_space_G0() and the
// closed forms of spp_tensor.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "spp/constants.hpp"
#include "spp/errors.hpp"
#include "spp/material.hpp"
#include "spp/numerics.hpp"
#include "spp/types.hpp"

namespace spp {

enum class GComponent { xx, yy, zz, xz, zx };

enum class Side { dielectric, metal };

/// z = 0 belongs to the dielectric (limit from above).
inline Side side_of(double z) { return z >= 0.0 ? Side::dielectric : Side::metal; }

struct RegionPair {
  Side source;
  Side observer;

  static RegionPair from(double z, double z_src) { return {side_of(z_src), side_of(z)}; }
  bool same_side() const { return source == observer; }
};

/// Which reading of the cross-region rows to use.
///  - consistent: g_xx and g_zx rows for z < 0 < z' without the extra 1/eps_d,
///    and the metal-metal g_zz row with the outgoing direct wave. These are the
///    rows that satisfy tangential-E / normal-D continuity, reciprocity and the
///    homogeneous limit for any eps_d.
///  - printed: the uncorrected rows, with the extra 1/eps_d and the growing
///    metal-metal direct wave.
/// The two agree whenever eps_d = 1 and both points are in the dielectric.
enum class GreenVariant { consistent, printed };

/// The delta(z - z') part of g_zz, kept symbolic: g_zz += coefficient * delta(z - z').
struct ContactTerm {
  bool present = false;
  cplx coefficient{0.0, 0.0};
};

struct ReducedGreenMatrix {
  cplx xx{}, yy{}, zz{}, xz{}, zx{};
  ContactTerm contact;

  cplx operator[](GComponent c) const {
    switch (c) {
      case GComponent::xx: return xx;
      case GComponent::yy: return yy;
      case GComponent::zz: return zz;
      case GComponent::xz: return xz;
      case GComponent::zx: return zx;
    }
    return {};
  }
};

/// Direct (source) wave and scattered (reflected or transmitted) wave.
struct GreenParts {
  cplx direct{};
  cplx scattered{};
  cplx total() const { return direct + scattered; }
};

namespace detail {

inline bool is_tm(GComponent c) { return c != GComponent::yy; }

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Relative size of the TM denominator below which a real k_par is treated as
/// sitting on the pole.
inline constexpr double kPoleProximity = 1e-12;

inline GreenParts reduced_g_parts(GComponent comp, cplx k, double omega, double z, double zp,
                                  cplx eps_d, cplx eps_m, GreenVariant variant) {
  using std::exp;
  const auto [k_d, k_m] = vertical_wavenumbers(k, omega, eps_d, eps_m);
  const double k0 = omega / constants::speed_of_light;
  const double K = 1.0 / (k0 * k0);
  constexpr double pi = std::numbers::pi;
  const cplx den = k_m * eps_d - k_d * eps_m;
  if (is_tm(comp) && std::abs(den) <= kPoleProximity * std::abs(k_m * eps_d)) {
    double distance = 0.0;
    if ((eps_d + eps_m).real() < 0.0 && eps_m.real() < 0.0)
      distance = std::abs(k - spp_pole(omega, eps_d, eps_m).k_spp);
    throw PoleProximityError("reduced_g: k_par on the SPP pole of a lossless interface", distance);
  }
  const cplx r_p = (k_m * eps_d + k_d * eps_m) / den;
  const cplx r_s = (k_m + k_d) / (k_m - k_d);
  const double s = sgn(z - zp);
  const bool consistent = variant == GreenVariant::consistent;
  const auto region = RegionPair::from(z, zp);

  if (region.observer == Side::metal && region.source == Side::metal) {
    const cplx e_refl = exp(I * k_m * (z + zp));
    const cplx e_dir = exp(-I * k_m * std::abs(z - zp));
    switch (comp) {
      case GComponent::xx: {
        const cplx pre = -2.0 * pi * I * k_m * K / eps_m;
        return {-pre * e_dir, pre * r_p * e_refl};
      }
      case GComponent::yy: {
        const cplx pre = 2.0 * pi * I / k_m;
        return {pre * e_dir, pre * r_s * e_refl};
      }
      case GComponent::zz: {
        const cplx pre = 2.0 * pi * I * k * k * K / (k_m * eps_m);
        const cplx dir = consistent ? e_dir : -exp(I * k_m * std::abs(z - zp));
        return {pre * dir, pre * r_p * e_refl};
      }
      case GComponent::xz: {
        const cplx pre = -2.0 * pi * I * k * K / eps_m;
        return {-pre * e_dir * s, pre * r_p * e_refl};
      }
      case GComponent::zx: {
        const cplx pre = 2.0 * pi * I * k * K / eps_m;
        return {pre * e_dir * s, pre * r_p * e_refl};
      }
    }
  }
  if (region.observer == Side::dielectric && region.source == Side::metal) {
    const cplx e = exp(I * k_d * z + I * k_m * zp);
    switch (comp) {
      case GComponent::xx: return {0.0, -4.0 * pi * I * K * k_d * k_m / den * e};
      case GComponent::yy: return {0.0, 4.0 * pi * I / (k_m - k_d) * e};
      case GComponent::zz: return {0.0, 4.0 * pi * I * k * k * K / den * e};
      case GComponent::xz: return {0.0, -4.0 * pi * I * k * K * k_d / den * e};
      case GComponent::zx: return {0.0, 4.0 * pi * I * k * K * k_m / den * e};
    }
  }
  if (region.observer == Side::metal && region.source == Side::dielectric) {
    const cplx e = exp(I * k_m * z + I * k_d * zp);
    const cplx extra = consistent ? cplx(1.0) : 1.0 / eps_d;
    switch (comp) {
      case GComponent::xx: return {0.0, -4.0 * pi * I * K * k_d * k_m / den * extra * e};
      case GComponent::yy: return {0.0, 4.0 * pi * I / (k_m - k_d) * e};
      case GComponent::zz: return {0.0, 4.0 * pi * I * k * k * K / den * e};
      case GComponent::xz: return {0.0, -4.0 * pi * I * k * K * k_m / den * e};
      case GComponent::zx: return {0.0, 4.0 * pi * I * k * K * k_d / den * extra * e};
    }
  }
  // both in the dielectric
  const cplx e_refl = exp(I * k_d * (z + zp));
  const cplx e_dir = exp(I * k_d * std::abs(z - zp));
  switch (comp) {
    case GComponent::xx: {
      const cplx pre = -2.0 * pi * I * k_d * K / eps_d;
      return {pre * e_dir, pre * r_p * e_refl};
    }
    case GComponent::yy: {
      const cplx pre = 2.0 * pi * I / k_d;
      return {-pre * e_dir, pre * r_s * e_refl};
    }
    case GComponent::zz: {
      const cplx pre = 2.0 * pi * I * k * k * K / (k_d * eps_d);
      return {-pre * e_dir, pre * r_p * e_refl};
    }
    case GComponent::xz: {
      const cplx pre = -2.0 * pi * I * k * K / eps_d;
      return {-pre * e_dir * s, pre * r_p * e_refl};
    }
    case GComponent::zx: {
      const cplx pre = 2.0 * pi * I * k * K / eps_d;
      return {pre * e_dir * s, pre * r_p * e_refl};
    }
  }
  return {};
}

}  // namespace detail

/// One entry of the reduced Green matrix at real k_par >= 0. The delta(z - z')
/// contact term of g_zz is not included (see reduced_g_matrix()).
inline cplx reduced_g(GComponent comp, double k_par, double omega, double z, double zp,
                      cplx eps_d, cplx eps_m, GreenVariant variant = GreenVariant::consistent) {
  if (!(k_par >= 0.0) || !std::isfinite(k_par)) throw DomainError("reduced_g: k_par must be >= 0");
  if (!std::isfinite(z) || !std::isfinite(zp)) throw DomainError("reduced_g: z, z' must be finite");
  return detail::reduced_g_parts(comp, cplx(k_par, 0.0), omega, z, zp, eps_d, eps_m, variant)
      .total();
}

inline ReducedGreenMatrix reduced_g_matrix(double k_par, double omega, double z, double zp,
                                           cplx eps_d, cplx eps_m,
                                           GreenVariant variant = GreenVariant::consistent) {
  ReducedGreenMatrix g;
  g.xx = reduced_g(GComponent::xx, k_par, omega, z, zp, eps_d, eps_m, variant);
  g.yy = reduced_g(GComponent::yy, k_par, omega, z, zp, eps_d, eps_m, variant);
  g.zz = reduced_g(GComponent::zz, k_par, omega, z, zp, eps_d, eps_m, variant);
  g.xz = reduced_g(GComponent::xz, k_par, omega, z, zp, eps_d, eps_m, variant);
  g.zx = reduced_g(GComponent::zx, k_par, omega, z, zp, eps_d, eps_m, variant);
  const auto region = RegionPair::from(z, zp);
  if (region.same_side()) {
    const double k0 = omega / constants::speed_of_light;
    const cplx eps = region.observer == Side::dielectric ? eps_d : eps_m;
    g.contact = {true, 4.0 * std::numbers::pi / (k0 * k0 * eps)};
  }
  return g;
}

// ----------------------------------------------------------------------------
// Rotation to the k_par frame and assembly of d = s^-1 g s
// ----------------------------------------------------------------------------

struct Rotation {
  Mat3 s;
  Mat3 s_inv;
  bool degenerate;  ///< k_par = 0: identity returned
};

inline Rotation rotation_s(double kx, double ky) {
  const double kp = std::hypot(kx, ky);
  if (kp == 0.0) {
    const Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    return {id, id, true};
  }
  const double c = kx / kp;
  const double s = ky / kp;
  return {Mat3{{{c, s, 0}, {-s, c, 0}, {0, 0, 1}}}, Mat3{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}},
          false};
}

/// d(k_x, k_y) = s^-1 g s written out entrywise.
inline Mat3c assemble_d(double kx, double ky, const ReducedGreenMatrix& g) {
  const double kp = std::hypot(kx, ky);
  if (!(kp > 0.0)) throw DomainError("assemble_d: k_par must be > 0");
  const double c = kx / kp;
  const double s = ky / kp;
  Mat3c d{};
  d[0][0] = c * c * g.xx + s * s * g.yy;
  d[0][1] = c * s * (g.xx - g.yy);
  d[0][2] = c * g.xz;
  d[1][0] = c * s * (g.xx - g.yy);
  d[1][1] = c * c * g.yy + s * s * g.xx;
  d[1][2] = s * g.xz;
  d[2][0] = c * g.zx;
  d[2][1] = s * g.zx;
  d[2][2] = g.zz;
  return d;
}

// ----------------------------------------------------------------------------
// Free-space dyadic
// ----------------------------------------------------------------------------

/// G0(r, r') for wavenumber k (complex allowed for absorbing media); no
/// delta term.
inline Mat3c free_space_G0(const Vec3& r, const Vec3& rp, cplx k) {
  const Vec3 d = r - rp;
  const double R = d.norm();
  if (!(R > 0.0)) throw DomainError("free_space_G0: r = r' is singular");
  const cplx x = k * R;
  const cplx ex = std::exp(I * x);
  // S = (1 - ix) e^{ix} - 1, summed as a series near the origin so that the
  // 1/x^2 near field does not swamp the radiative part.
  cplx S;
  if (std::abs(x) < 0.5) {
    cplx term = 1.0;
    for (int n = 1; n <= 30; ++n) {
      term *= I * x / static_cast<double>(n);
      if (n >= 2) S += (1.0 - n) * term;
    }
  } else {
    S = (1.0 - I * x) * ex - 1.0;
  }
  const cplx inv_x2 = 1.0 / (x * x);
  const cplx a = 3.0 * inv_x2 + 3.0 * S * inv_x2 - ex;  // (3/x^2 - 3i/x - 1) e^{ix}
  const cplx b = ex - inv_x2 - S * inv_x2;                // (1 + i/x - 1/x^2) e^{ix}
  const double scale = 1.0 / (4.0 * std::numbers::pi * R);
  const std::array<double, 3> n{d.x / R, d.y / R, d.z / R};
  Mat3c G{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G[i][j] = (a * (n[i] * n[j]) + (i == j ? b : cplx(0.0))) * scale;
  return G;
}

inline Mat3c free_space_G0(const Vec3& r, const Vec3& rp, double k) {
  if (!(k > 0.0)) throw DomainError("free_space_G0: k must be > 0");
  return free_space_G0(r, rp, cplx(k, 0.0));
}

// ----------------------------------------------------------------------------
// Sommerfeld evaluation of D(X, X'; w)
// ----------------------------------------------------------------------------

enum class PoleHandling { full, pole_only, pole_excluded };

/// How the direct wave of a same-side pair is obtained in `full` mode.
enum class DirectTerm {
  analytic,    ///< 4 pi G0 in closed form (converges for z = z')
  integrated,  ///< Sommerfeld integral of the direct rows (needs z != z')
};

struct SommerfeldOptions {
  QuadratureSpec quad{1e-8, 1e-300, 20000, 40.0};
  GreenVariant variant = GreenVariant::consistent;
  DirectTerm direct = DirectTerm::analytic;
  /// Radius of the detour around a pole on (or within this distance of) the
  /// real axis, relative to |k_spp|.
  double indent_radius = 1e-3;
};

namespace detail {

struct BesselTriple {
  cplx j0, j1, j2;
};

inline BesselTriple bessel_triple(cplx x) {
  if (x.imag() == 0.0 && x.real() >= 0.0) {
    const double r = x.real();
    return {bessel_j(0, r), bessel_j(1, r), bessel_j(2, r)};
  }
  return {bessel_j(0, x), bessel_j(1, x), bessel_j(2, x)};
}

/// Angular integral of d_ij(theta) exp(i k rho cos(theta - phi)) over theta,
/// expressed through the g entries.
inline cplx angular_reduce(Axis i, Axis j, const std::array<GreenParts, 5>& g, bool direct,
                           bool scattered, const BesselTriple& J, double cphi, double sphi) {
  auto pick = [&](GComponent c) {
    const auto& p = g[static_cast<int>(c)];
    return (direct ? p.direct : cplx(0.0)) + (scattered ? p.scattered : cplx(0.0));
  };
  constexpr double pi = std::numbers::pi;
  const double c2 = cphi * cphi - sphi * sphi;
  const double s2 = 2.0 * cphi * sphi;
  const int a = index(i);
  const int b = index(j);
  if (a == 0 && b == 0)
    return pi * (pick(GComponent::xx) * (J.j0 - c2 * J.j2) + pick(GComponent::yy) * (J.j0 + c2 * J.j2));
  if (a == 1 && b == 1)
    return pi * (pick(GComponent::xx) * (J.j0 + c2 * J.j2) + pick(GComponent::yy) * (J.j0 - c2 * J.j2));
  if ((a == 0 && b == 1) || (a == 1 && b == 0))
    return -pi * s2 * J.j2 * (pick(GComponent::xx) - pick(GComponent::yy));
  if (a == 0 && b == 2) return 2.0 * pi * I * cphi * J.j1 * pick(GComponent::xz);
  if (a == 1 && b == 2) return 2.0 * pi * I * sphi * J.j1 * pick(GComponent::xz);
  if (a == 2 && b == 0) return 2.0 * pi * I * cphi * J.j1 * pick(GComponent::zx);
  if (a == 2 && b == 1) return 2.0 * pi * I * sphi * J.j1 * pick(GComponent::zx);
  return 2.0 * pi * J.j0 * pick(GComponent::zz);
}

struct RadialKernel {
  Axis i, j;
  double omega;
  double z, zp, rho, cphi, sphi;
  cplx eps_d, eps_m;
  GreenVariant variant;
  bool direct, scattered;

  /// k * (angular integral of d_ij), to be integrated over k from 0 to inf.
  cplx operator()(cplx k) const {
    std::array<GreenParts, 5> g;
    for (int c = 0; c < 5; ++c)
      g[c] = reduced_g_parts(static_cast<GComponent>(c), k, omega, z, zp, eps_d, eps_m, variant);
    return k * angular_reduce(i, j, g, direct, scattered, bessel_triple(k * rho), cphi, sphi);
  }
};

inline bool has_bound_mode(cplx eps_d, cplx eps_m) {
  return (eps_d + eps_m).real() < 0.0 && eps_m.real() < 0.0;
}

/// Real-axis integral of the kernel from 0 to infinity: cosine substitution on
/// each finite segment (clears inverse-square-root branch points at the ends),
/// a semicircular detour below a real-axis pole and a truncated exponential tail.
inline cplx real_axis_integral(const RadialKernel& f, double decay_exponent,
                               std::optional<cplx> pole, const SommerfeldOptions& opt) {
  const double k0 = f.omega / constants::speed_of_light;
  std::vector<double> breaks{0.0};
  for (cplx eps : {f.eps_d, f.eps_m})
    if (eps.imag() == 0.0 && eps.real() > 0.0) breaks.push_back(k0 * std::sqrt(eps.real()));
  double far = k0 * std::max(1.0, std::sqrt(std::abs(f.eps_d)));
  double indent = 0.0;
  if (pole) {
    far = std::max(far, pole->real());
    indent = opt.indent_radius * std::abs(*pole);
    if (pole->imag() >= indent) {
      breaks.push_back(pole->real());
      indent = 0.0;
    }
  }
  for (double b : breaks) far = std::max(far, b);
  const double k_end = 1.5 * far + 4.0 * k0;
  breaks.push_back(k_end);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto& quad = opt.quad;
  auto segment = [&](double a, double b) -> cplx {
    if (!(b > a)) return 0.0;
    const double half = 0.5 * (b - a);
    return adaptive_integrate(
        [&](double u) -> cplx {
          const double k = a + half * (1.0 - std::cos(u));
          return f(cplx(k, 0.0)) * (half * std::sin(u));
        },
        0.0, std::numbers::pi, quad);
  };

  cplx total = 0.0;
  for (std::size_t n = 0; n + 1 < breaks.size(); ++n) {
    const double a = breaks[n];
    const double b = breaks[n + 1];
    if (indent > 0.0 && pole->real() > a && pole->real() < b) {
      const double p = pole->real();
      total += segment(a, p - indent);
      // below the pole: theta from pi to 2 pi
      total += integrate_path(
          f, [&](double t) { return cplx(p, 0.0) + indent * std::exp(I * t); },
          [&](double t) { return I * indent * std::exp(I * t); }, std::numbers::pi,
          2.0 * std::numbers::pi, quad);
      total += segment(p + indent, b);
    } else {
      total += segment(a, b);
    }
  }
  if (!(decay_exponent > 0.0))
    throw DomainError("sommerfeld_D: integrand has no exponential decay (points on z = 0?)");
  total += adaptive_integrate([&](double k) { return f(cplx(k, 0.0)); }, k_end,
                              SemiInfinite{1.0 / decay_exponent}, quad);
  return total;
}

/// pi i Res at the pole: half of the counter-clockwise loop integral.
inline cplx half_residue(const RadialKernel& f, cplx pole, const SommerfeldOptions& opt) {
  const double k0 = f.omega / constants::speed_of_light;
  double dist = std::abs(pole);
  for (cplx eps : {f.eps_d, f.eps_m}) {
    cplx bp = k0 * std::sqrt(eps);
    if (bp.real() < 0.0) bp = -bp;
    dist = std::min(dist, std::abs(pole - bp));
  }
  const double r = 0.5 * dist;
  const cplx loop = integrate_path(
      f, [&](double t) { return pole + r * std::exp(I * t); },
      [&](double t) { return I * r * std::exp(I * t); }, 0.0, 2.0 * std::numbers::pi, opt.quad);
  return 0.5 * loop;
}

}  // namespace detail

/// D_ij(X, X'; w) = 4 pi G_ij for observer X and source X' (metres), evaluated
/// by the radial Sommerfeld integral. The delta contact term is not included.
///  - full: complete tensor; lossy poles are integrated along the real axis,
///    lossless ones through a detour below the pole.
///  - pole_only: pi i times the residue at k_spp (the detour's contribution),
///    from a numerical loop around the pole; both points must have z > 0.
///  - pole_excluded: full - pole_only.
inline cplx sommerfeld_D(Axis i, Axis j, const Vec3& X, const Vec3& Xp, double omega, cplx eps_d,
                         cplx eps_m, PoleHandling mode, const SommerfeldOptions& opt = {}) {
  if (!(omega > 0.0)) throw DomainError("sommerfeld_D: omega must be > 0");
  const Vec3 d = X - Xp;
  if (d.norm() == 0.0) throw DomainError("sommerfeld_D: X = X'");
  opt.quad.validate();
  const double rho = std::hypot(d.x, d.y);
  const double cphi = rho > 0.0 ? d.x / rho : 1.0;
  const double sphi = rho > 0.0 ? d.y / rho : 0.0;
  const auto region = RegionPair::from(X.z, Xp.z);
  const bool bound = detail::has_bound_mode(eps_d, eps_m);
  constexpr double norm = -1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

  auto pole_only = [&]() -> cplx {
    if (!(X.z > 0.0 && Xp.z > 0.0))
      throw DomainError("sommerfeld_D: pole-only mode needs both points strictly in the dielectric");
    if (!bound) throw NoBoundModeError("sommerfeld_D: interface has no SPP pole");
    const cplx pole = spp_pole(omega, eps_d, eps_m).k_spp;
    detail::RadialKernel f{i, j, omega, X.z, Xp.z, rho, cphi, sphi, eps_d, eps_m, opt.variant,
                           true, true};
    return norm * detail::half_residue(f, pole, opt);
  };

  auto full = [&]() -> cplx {
    std::optional<cplx> pole;
    if (bound) pole = spp_pole(omega, eps_d, eps_m).k_spp;
    const double h = region.same_side() && region.observer == Side::dielectric
                         ? X.z + Xp.z
                         : std::abs(X.z) + std::abs(Xp.z);
    detail::RadialKernel f{i, j, omega, X.z, Xp.z, rho, cphi, sphi, eps_d, eps_m, opt.variant,
                           false, true};
    cplx value = norm * detail::real_axis_integral(f, h, pole, opt);
    if (region.same_side()) {
      if (opt.direct == DirectTerm::analytic) {
        const double k0 = omega / constants::speed_of_light;
        cplx k = k0 * std::sqrt(region.observer == Side::dielectric ? eps_d : eps_m);
        if (k.imag() < 0.0) k = -k;
        value += 4.0 * std::numbers::pi * free_space_G0(X, Xp, k)[index(i)][index(j)];
      } else {
        detail::RadialKernel fd = f;
        fd.direct = true;
        fd.scattered = false;
        value += norm * detail::real_axis_integral(fd, std::abs(X.z - Xp.z), std::nullopt, opt);
      }
    }
    return value;
  };

  switch (mode) {
    case PoleHandling::full: return full();
    case PoleHandling::pole_only: return pole_only();
    case PoleHandling::pole_excluded: return full() - pole_only();
  }
  return {};
}

}  // namespace spp
