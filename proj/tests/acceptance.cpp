// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spp/cli/validate.hpp"
#include "spp/emitters.hpp"

using namespace spp;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nm = 1e-9;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(cplx a, cplx b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

/// Direct wave of an unbounded medium eps.
cplx homogeneous_g(GComponent c, double k, double k0, double z, double zp, double eps) {
  const double K = 1.0 / (k0 * k0);
  const cplx kd = branched_sqrt(eps * k0 * k0 - k * k, BranchRule::ImNonNegative);
  const cplx e = std::exp(I * kd * std::abs(z - zp));
  const double s = z > zp ? 1.0 : (z < zp ? -1.0 : 0.0);
  switch (c) {
    case GComponent::xx: return -2.0 * pi * I * kd * K / eps * e;
    case GComponent::yy: return -2.0 * pi * I / kd * e;
    case GComponent::zz: return -2.0 * pi * I * k * k * K / (kd * eps) * e;
    case GComponent::xz:
    case GComponent::zx: return 2.0 * pi * I * k * K / eps * s * e;
  }
  return {};
}

DipoleSource antenna(Axis o, double lambda, double z0_nm) {
  return {constants::elementary_charge, 15 * nm, constants::omega_from_lambda_nm(lambda), o, z0_nm * nm};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cases = cli::silver_cases(20, 20240611);
  const auto results = cli::run_cases(cases, SommerfeldOptions{});
  double worst[3] = {0, 0, 0};  // zz, zx, xx/yy
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    const int slot = r.c.i == Axis::z ? (r.c.j == Axis::z ? 0 : 1) : 2;
    worst[slot] = std::max(worst[slot], std::isnan(r.rel_err) ? INFINITY : r.rel_err);
  }
  const double t = seconds_since(t0);
  ok = ok && t <= 300.0;
  return {ok, fmt("20 silver configs, max rel err zz %.3g zx %.3g (<= 0.05), xx/yy %.3g (<= 0.10), %.2f s",
                  worst[0], worst[1], worst[2], t)};
}

Outcome lossless_sharpening() {
  const auto results = cli::run_cases(cli::toy_cases(20, 20240611), SommerfeldOptions{});
  double worst = 0.0;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    worst = std::max(worst, std::isnan(r.rel_err) ? INFINITY : r.rel_err);
  }
  const double z0 = 25 * nm, k0 = 1e7;
  const SppTensorInputs in{1.0, cplx(-2.0, 0.0), std::sqrt(2.0) * k0, 0.0, 0.0, z0, z0};
  const double a = std::abs(in.k_spp);
  const cplx expected = I * (4.0 / (3.0 * std::sqrt(2.0))) * a * std::exp(-std::sqrt(2.0) * a * z0);
  const double coeff_err = rel(g_spp(SppComponent::zz, in), expected);
  ok = ok && coeff_err <= 1e-10;
  return {ok, fmt("toy eps_m=-2: max zz oracle err %.3g (<= 0.01), on-emitter coefficient err %.2g (<= 1e-10)",
                  worst, coeff_err)};
}

Outcome g2_suite() {
  double worst_zero = 0, worst_tail = 0, worst_peak = 0, min_early = INFINITY;
  const double frozen[2] = {1.0877321193418146794, 1.3050100928155428388};
  int idx = 0;
  for (auto [gamma, rabi] : {std::pair{1.0, 1.0}, {1.0, 2.0}}) {
    worst_zero = std::max(worst_zero, std::abs(g2(0.0, rabi, gamma)));
    for (int n = 1; n <= 3000; ++n) min_early = std::min(min_early, g2(n * 1e-3 / gamma, rabi, gamma));
    worst_tail = std::max(worst_tail, std::abs(g2(50.0 / gamma, rabi, gamma) - 1.0));
    const double R = rabi_splitting(rabi, gamma).magnitude;
    const double peak = g2(pi / R, rabi, gamma);
    const double closed = 1.0 + std::exp(-3.0 * gamma * pi / (4.0 * R));
    const bool is_max = g2(pi / R * (1 - 1e-4), rabi, gamma) < peak && g2(pi / R * (1 + 1e-4), rabi, gamma) < peak;
    worst_peak = std::max({worst_peak, std::abs(peak - closed), std::abs(peak - frozen[idx]),
                           is_max ? 0.0 : INFINITY});
    ++idx;
  }
  const bool ok = worst_zero <= 1e-12 && min_early > 0.0 && worst_tail <= 1e-6 && worst_peak <= 1e-9;
  return {ok, fmt("|g2(0)| %.1g, min g2 on (0,3/G] %.3g, |g2(50/G)-1| %.1g, first-max err %.1g "
                  "(peaks %.10f, %.10f)",
                  worst_zero, min_early, worst_tail, worst_peak,
                  g2(pi / rabi_splitting(1, 1).magnitude, 1, 1), g2(pi / rabi_splitting(2, 1).magnitude, 2, 1))};
}

Outcome interface_limits() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_yy = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Interface itf = silver_air(400.0 + 400.0 * u(rng));
    const double k = 4.0 * itf.k0() * u(rng);
    const double zp = (1.0 + 300.0 * u(rng)) * nm;
    const cplx above = reduced_g(GComponent::yy, k, itf.omega, 0.0, zp, itf.eps_d, itf.eps_m);
    const cplx below = reduced_g(GComponent::yy, k, itf.omega, -1e-30, zp, itf.eps_d, itf.eps_m);
    worst_yy = std::max(worst_yy, rel(above, below));
  }

  // Homogeneous limit: with eps_m = eps_d every row reduces to the direct wave.
  double worst_refl = 0.0;
  const double w = constants::omega_from_lambda_nm(600.0);
  const double k0 = w / constants::speed_of_light;
  for (double eps : {1.0, 2.25})
    for (double kk : {0.3, 1.2, 3.0})
      for (double z : {40e-9, -25e-9})
        for (double zp : {15e-9, -60e-9})
          for (GComponent c : {GComponent::xx, GComponent::yy, GComponent::zz, GComponent::xz, GComponent::zx}) {
            const double k = kk * k0;
            const GreenParts p = detail::reduced_g_parts(c, k, w, z, zp, eps, eps, GreenVariant::consistent);
            if (RegionPair::from(z, zp).same_side() && p.scattered != cplx(0.0)) worst_refl = INFINITY;
            worst_refl = std::max(worst_refl, rel(p.total(), homogeneous_g(c, k, k0, z, zp, eps)));
          }

  // Full-mode reciprocity on random pairs.
  SommerfeldOptions opt;
  const double tol = 10.0 * opt.quad.rel_tol;
  double worst_recip = 0.0;
  for (int n = 0; n < 10; ++n) {
    const Interface itf = silver_air(450.0 + 250.0 * u(rng));
    auto point = [&] { return Vec3{(u(rng) - 0.5) * 1e-6, (u(rng) - 0.5) * 1e-6, (5.0 + 150.0 * u(rng)) * nm}; };
    const Vec3 X = point(), Xp = point();
    for (Axis i : {Axis::x, Axis::y, Axis::z})
      for (Axis j : {Axis::x, Axis::y, Axis::z}) {
        const cplx a = sommerfeld_D(i, j, X, Xp, itf.omega, itf.eps_d, itf.eps_m, PoleHandling::full, opt);
        const cplx b = sommerfeld_D(j, i, Xp, X, itf.omega, itf.eps_d, itf.eps_m, PoleHandling::full, opt);
        worst_recip = std::max(worst_recip, rel(a, b));
      }
  }
  const bool ok = worst_yy <= 1e-10 && worst_refl <= 1e-12 && worst_recip <= tol;
  return {ok, fmt("g_yy jump %.2g (<= 1e-10), homogeneous-limit residual %.2g, reciprocity %.2g (<= %.0e)",
                  worst_yy, worst_refl, worst_recip, tol)};
}

/// First rho at which the surface intensity of a z dipole falls to 1/e of its on-axis value.
double lateral_decay_length(double lambda) {
  const Interface itf = silver_air(lambda);
  const DipoleSource src = antenna(Axis::z, lambda, 10.0);
  const double i0 = spp_field(src, itf, {0.0, 0.0, 8 * nm}).intensity();
  for (double rho = 0.5; rho <= 5000.0; rho += 0.5)
    if (spp_field(src, itf, {rho * nm, 0.0, 8 * nm}).intensity() <= i0 / std::numbers::e) return rho;
  return INFINITY;
}

Outcome figure_trends() {
  const auto t0 = std::chrono::steady_clock::now();
  // (a) symmetry
  double iso = 0.0, parity = 0.0;
  bool axis_max = true;
  for (double lambda : {500.0, 580.0}) {
    const Interface itf = silver_air(lambda);
    const DipoleSource z = antenna(Axis::z, lambda, 10.0), x = antenna(Axis::x, lambda, 10.0);
    const double rho = 300 * nm;
    const FieldSample ref = spp_field(z, itf, {rho, 0.0, 8 * nm});
    auto in_plane = [](const FieldSample& s) { return std::norm(s.phasor[0]) + std::norm(s.phasor[1]); };
    const double axis = in_plane(spp_field(x, itf, {rho, 0.0, 8 * nm}));
    for (int n = 1; n < 72; ++n) {
      const double phi = n * pi / 36.0;
      const Vec3 r{rho * std::cos(phi), rho * std::sin(phi), 8 * nm};
      const Vec3 mr{-r.x, -r.y, r.z};
      iso = std::max(iso, std::abs(spp_field(z, itf, r).intensity() / ref.intensity() - 1.0));
      const FieldSample a = spp_field(x, itf, r), b = spp_field(x, itf, mr);
      parity = std::max({parity, rel(a.phasor[0], b.phasor[0]), rel(a.phasor[1], b.phasor[1]),
                         rel(a.phasor[2], -b.phasor[2])});
      if (n != 36 && !(in_plane(a) < axis)) axis_max = false;
    }
  }
  const bool ok_a = iso <= 1e-10 && parity <= 1e-10 && axis_max;

  // (b) and (c) at (300, 300, 8) nm
  const Vec3 p{300 * nm, 300 * nm, 8 * nm};
  bool monotone = true;
  for (Axis o : {Axis::z, Axis::x}) {
    double prev = 0.0;
    for (double z0 = 200.0; z0 >= 10.0; z0 -= 5.0) {
      const double r = relative_intensity(antenna(o, 580.0, z0), silver_air(580.0), p).ratio;
      if (!(r > prev)) monotone = false;
      prev = r;
    }
  }
  bool perp = true;
  double min_margin = INFINITY;
  for (double lambda : {500.0, 550.0, 600.0, 650.0, 700.0}) {
    const Interface itf = silver_air(lambda);
    const double rz = relative_intensity(antenna(Axis::z, lambda, 10.0), itf, p).ratio;
    const double rx = relative_intensity(antenna(Axis::x, lambda, 10.0), itf, p).ratio;
    perp = perp && rz > rx;
    min_margin = std::min(min_margin, rz / rx);
  }

  // (d) lateral decay
  const double l500 = lateral_decay_length(500.0), l700 = lateral_decay_length(700.0);
  const double im500 = silver_air(500.0).mode().k_spp.imag(), im700 = silver_air(700.0).mode().k_spp.imag();
  const bool ok_d = l700 > l500 && im700 < im500;

  const double t = seconds_since(t0);
  const bool ok = ok_a && monotone && perp && ok_d && t <= 120.0;
  return {ok, fmt("(a) isotropy %.1g parity %.1g axis-max %s; (b) monotone %s; (c) min zhat/xhat %.3g; "
                  "(d) 1/e length %.1f nm @700 vs %.1f nm @500, Im k %.4g < %.4g; %.2f s",
                  iso, parity, axis_max ? "yes" : "no", monotone ? "yes" : "no", min_margin, l700, l500,
                  im700, im500, t)};
}

Outcome decay_sign() {
  const Interface itf = silver_air(580.0);
  bool ok = true;
  double min_rate = INFINITY;
  for (Axis o : {Axis::z, Axis::x}) {
    double prev = INFINITY;
    for (double z0 = 10.0; z0 <= 200.0; z0 += 1.0) {
      const QuantumEmitter em{1e-29, o, itf.omega, {0.0, 0.0, z0 * nm}, 0.0};
      const double g = decay_rate(em, itf, DecayMode::normalized);
      ok = ok && g > 0.0 && g < prev;
      min_rate = std::min(min_rate, g);
      prev = g;
    }
  }
  return {ok, fmt("Gamma/Gamma0 > 0 and decreasing with z0 on [10, 200] nm (min %.3g)", min_rate)};
}

Outcome numerics_floor() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  double worst_rec = 0.0;
  for (int n = 0; n < 100000; ++n) {
    double x = u(rng);
    if (x == 0.0) x = 100.0;
    worst_rec = std::max(worst_rec, std::abs(bessel_j(2, x) - (2.0 * bessel_j(1, x) / x - bessel_j(0, x))));
  }
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-150, 150);
  double worst_sqrt = 0.0;
  bool branch_ok = true;
  for (int n = 0; n < 1'000'000; ++n) {
    const cplx w(std::ldexp(s(rng), ex(rng)), std::ldexp(s(rng), ex(rng)));
    const cplx z = branched_sqrt(w, BranchRule::ImNonNegative);
    branch_ok = branch_ok && z.imag() >= 0.0;
    worst_sqrt = std::max(worst_sqrt, std::abs(z * z - w) / std::abs(w) / std::numeric_limits<double>::epsilon());
  }
  QuadratureSpec spec;
  double worst_ang = 0.0;
  for (double kr : {0.5, 3.0, 10.0}) {
    const cplx v = adaptive_integrate([kr](double t) { return std::exp(I * kr * std::cos(t)); }, 0.0, 2.0 * pi, spec);
    worst_ang = std::max(worst_ang, std::abs(v - 2.0 * pi * bessel_j(0, kr)) / (2.0 * pi));
  }
  const bool ok = worst_rec <= 1e-9 && worst_sqrt <= 4.0 && branch_ok && worst_ang <= spec.rel_tol;
  return {ok, fmt("recurrence %.2g (<= 1e-9), sqrt residual %.2f ulp over 1e6, angular identity %.2g (<= %.0e)",
                  worst_rec, worst_sqrt, worst_ang, spec.rel_tol)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "lossless sharpening", lossless_sharpening},
      {3, "g2 suite", g2_suite},
      {4, "interface continuity and limits", interface_limits},
      {5, "figure-level trends", figure_trends},
      {6, "decay-rate sign", decay_sign},
      {7, "numerics floor", numerics_floor},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s | %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
