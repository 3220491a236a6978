#pragma once

// Closed-form SPP tensor against the numerical Sommerfeld oracle, and
// full-integral reciprocity checks.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spp/cli/parallel.hpp"
#include "spp/constants.hpp"
#include "spp/layered_green.hpp"
#include "spp/material.hpp"
#include "spp/spp_tensor.hpp"

namespace spp::cli {

struct OracleCase {
  std::string suite;  ///< silver | toy | reciprocity
  int id = 0;
  Axis i = Axis::z;
  Axis j = Axis::z;
  double lambda_nm = 0.0;
  Medium metal = DrudeMetal{silver_default()};
  double eps_d = 1.0;
  Vec3 X;   ///< observer (m)
  Vec3 Xp;  ///< source (m)
  double tolerance = 0.0;
};

struct OracleResult {
  OracleCase c;
  cplx reference{};  ///< closed form, or D_ij(X, X') for reciprocity rows
  cplx oracle{};     ///< pole-only Sommerfeld value, or D_ji(X', X)
  double rel_err = 0.0;
  std::string status;  ///< ok | exceeded | error: ...

  bool passed() const { return status == "ok"; }
};

/// Uniform doubles from a 64-bit Mersenne Twister, identical on every platform.
class UnitSampler {
 public:
  explicit UnitSampler(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double a, double b) { return a + (b - a) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

/// Random silver configurations: lambda in [450, 700] nm, z + z' in [20, 200] nm,
/// rho in [50, 2000] nm, four components each.
inline std::vector<OracleCase> silver_cases(int n, std::uint64_t seed) {
  UnitSampler u(seed);
  std::vector<OracleCase> out;
  for (int k = 0; k < n; ++k) {
    const double lambda = u(450.0, 700.0);
    const double zsum = u(20.0, 200.0);
    const double f = u(0.2, 0.8);
    const double rho = u(50.0, 2000.0);
    const double phi = u(0.0, 2.0 * std::numbers::pi);
    const Vec3 X{rho * std::cos(phi) * constants::nm, rho * std::sin(phi) * constants::nm,
                 zsum * f * constants::nm};
    const Vec3 Xp{0.0, 0.0, zsum * (1.0 - f) * constants::nm};
    for (auto [i, j, tol] : {std::tuple{Axis::z, Axis::z, 0.05}, {Axis::z, Axis::x, 0.05},
                             {Axis::x, Axis::x, 0.10}, {Axis::y, Axis::y, 0.10}})
      out.push_back({"silver", k, i, j, lambda, DrudeMetal{silver_default()}, 1.0, X, Xp, tol});
  }
  return out;
}

/// Lossless eps_m = -2 against eps_d = 1, zz only.
inline std::vector<OracleCase> toy_cases(int n, std::uint64_t seed) {
  UnitSampler u(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<OracleCase> out;
  for (int k = 0; k < n; ++k) {
    const double lambda = u(450.0, 700.0);
    const double zsum = u(20.0, 200.0);
    const double f = u(0.2, 0.8);
    const double rho = u(50.0, 2000.0);
    const double phi = u(0.0, 2.0 * std::numbers::pi);
    const Vec3 X{rho * std::cos(phi) * constants::nm, rho * std::sin(phi) * constants::nm,
                 zsum * f * constants::nm};
    const Vec3 Xp{0.0, 0.0, zsum * (1.0 - f) * constants::nm};
    out.push_back({"toy", k, Axis::z, Axis::z, lambda, FixedPermittivity{{-2.0, 0.0}}, 1.0, X, Xp,
                   0.01});
  }
  return out;
}

/// Random point pairs above silver; rows compare D_ij(X, X') with D_ji(X', X).
inline std::vector<OracleCase> reciprocity_cases(int n, std::uint64_t seed, double tolerance) {
  UnitSampler u(seed ^ 0xd1b54a32d192ed03ULL);
  std::vector<OracleCase> out;
  for (int k = 0; k < n; ++k) {
    const double lambda = u(450.0, 700.0);
    auto point = [&] {
      return Vec3{u(-500.0, 500.0) * constants::nm, u(-500.0, 500.0) * constants::nm,
                  u(5.0, 150.0) * constants::nm};
    };
    const Vec3 X = point();
    const Vec3 Xp = point();
    for (auto [i, j] : {std::pair{Axis::x, Axis::z}, {Axis::x, Axis::y}, {Axis::y, Axis::z},
                        {Axis::z, Axis::z}})
      out.push_back(
          {"reciprocity", k, i, j, lambda, DrudeMetal{silver_default()}, 1.0, X, Xp, tolerance});
  }
  return out;
}

inline OracleResult run_case(const OracleCase& c, const SommerfeldOptions& opt,
                             const SppTensorOptions& tensor = {}) {
  OracleResult r{c, {}, {}, 0.0, "ok"};
  try {
    const Interface itf =
        make_interface(Dielectric{c.eps_d}, c.metal, constants::omega_from_lambda_nm(c.lambda_nm));
    if (c.suite == "reciprocity") {
      r.reference = sommerfeld_D(c.i, c.j, c.X, c.Xp, itf.omega, itf.eps_d, itf.eps_m,
                                 PoleHandling::full, opt);
      r.oracle = sommerfeld_D(c.j, c.i, c.Xp, c.X, itf.omega, itf.eps_d, itf.eps_m,
                              PoleHandling::full, opt);
    } else {
      const SppMode mode = itf.mode();
      const SppTensorInputs in{itf.eps_d,       itf.eps_m, mode.k_spp, c.X.x - c.Xp.x,
                               c.X.y - c.Xp.y, c.X.z,     c.Xp.z};
      r.reference = d_spp(spp_component(c.i, c.j), in, tensor);
      r.oracle = sommerfeld_D(c.i, c.j, c.X, c.Xp, itf.omega, itf.eps_d, itf.eps_m,
                              PoleHandling::pole_only, opt);
    }
    r.rel_err = std::abs(r.reference - r.oracle) / std::abs(r.oracle);
    if (!(r.rel_err <= c.tolerance)) r.status = "exceeded";
  } catch (const std::exception& e) {
    r.status = std::string("error: ") + e.what();
    r.rel_err = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

inline std::vector<OracleResult> run_cases(const std::vector<OracleCase>& cases,
                                           const SommerfeldOptions& opt,
                                           const SppTensorOptions& tensor = {}) {
  return parallel_map<OracleResult>(cases.size(),
                                    [&](std::size_t k) { return run_case(cases[k], opt, tensor); });
}

}  // namespace spp::cli
