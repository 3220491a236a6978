#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spp/layered_green.hpp"

using namespace spp;

namespace {

constexpr double pi = std::numbers::pi;
constexpr GComponent kAll[] = {GComponent::xx, GComponent::yy, GComponent::zz, GComponent::xz,
                               GComponent::zx};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

/// Direct wave of a homogeneous medium eps, any z, z'.
cplx homogeneous(GComponent c, double k, double w, double z, double zp, double eps) {
  const double k0 = w / constants::speed_of_light;
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

const double kOmega = constants::omega_from_lambda_nm(580.0);
const double kK0 = kOmega / constants::speed_of_light;
const Interface kSilver = silver_air(580.0);

}  // namespace

TEST(ReducedG, HomogeneousLimitCollapsesEveryRegion) {
  const double heights[] = {45e-9, -30e-9};
  for (double eps : {1.0, 2.25}) {
    for (double k : {0.3 * kK0, 1.2 * kK0, 3.0 * kK0}) {
      for (double z : heights)
        for (double zp : {20e-9, -70e-9}) {
          for (GComponent c : kAll) {
            const cplx g = reduced_g(c, k, kOmega, z, zp, eps, eps);
            EXPECT_LT(rel(g, homogeneous(c, k, kOmega, z, zp, eps)), 1e-12)
                << "eps=" << eps << " comp=" << static_cast<int>(c) << " z=" << z << " zp=" << zp;
            if (RegionPair::from(z, zp).same_side()) {
              const auto parts =
                  detail::reduced_g_parts(c, k, kOmega, z, zp, eps, eps, GreenVariant::consistent);
              EXPECT_EQ(parts.scattered, cplx(0.0));
            }
          }
        }
    }
  }
}

TEST(ReducedG, PrintedRowsMissHomogeneousLimitForNonUnitDielectric) {
  const double k = 1.2 * kK0, eps = 2.25;
  const cplx consistent = reduced_g(GComponent::xx, k, kOmega, -30e-9, 20e-9, eps, eps);
  const cplx printed =
      reduced_g(GComponent::xx, k, kOmega, -30e-9, 20e-9, eps, eps, GreenVariant::printed);
  EXPECT_LT(rel(consistent, homogeneous(GComponent::xx, k, kOmega, -30e-9, 20e-9, eps)), 1e-12);
  EXPECT_NEAR(std::abs(printed / consistent), 1.0 / eps, 1e-12);
  // Metal-metal g_zz: the printed direct term grows instead of matching the medium.
  const cplx zz_printed =
      reduced_g(GComponent::zz, k, kOmega, -30e-9, -70e-9, eps, eps, GreenVariant::printed);
  EXPECT_GT(rel(zz_printed, homogeneous(GComponent::zz, k, kOmega, -30e-9, -70e-9, eps)), 0.5);
}

TEST(ReducedG, YYContinuousAcrossInterface) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 100; ++n) {
    const double lambda = 400.0 + 400.0 * u(rng);
    const Interface itf = silver_air(lambda);
    const double k = 4.0 * itf.k0() * u(rng);
    const double zp = 1e-9 + 300e-9 * u(rng);
    const cplx above = reduced_g(GComponent::yy, k, itf.omega, 0.0, zp, itf.eps_d, itf.eps_m);
    const cplx below = reduced_g(GComponent::yy, k, itf.omega, -1e-30, zp, itf.eps_d, itf.eps_m);
    const auto [kd, km] = vertical_wavenumbers(k, itf.omega, itf.eps_d, itf.eps_m);
    const cplx expected = 4.0 * pi * I / (km - kd) * std::exp(I * kd * zp);
    EXPECT_LT(rel(above, below), 1e-10);
    EXPECT_LT(rel(above, expected), 1e-10);
  }
}

TEST(ReducedG, TangentialEAndNormalDContinuity) {
  const double zp = 40e-9;
  for (double k : {0.5 * kK0, 1.1 * kK0, 2.5 * kK0}) {
    auto g = [&](GComponent c, double z) {
      return reduced_g(c, k, kOmega, z, zp, kSilver.eps_d, kSilver.eps_m);
    };
    EXPECT_LT(rel(g(GComponent::xx, 0.0), g(GComponent::xx, -1e-30)), 1e-12);
    EXPECT_LT(rel(g(GComponent::xz, 0.0), g(GComponent::xz, -1e-30)), 1e-12);
    EXPECT_LT(rel(kSilver.eps_d * g(GComponent::zz, 0.0), kSilver.eps_m * g(GComponent::zz, -1e-30)),
              1e-12);
    EXPECT_LT(rel(kSilver.eps_d * g(GComponent::zx, 0.0), kSilver.eps_m * g(GComponent::zx, -1e-30)),
              1e-12);
  }
}

TEST(ReducedG, ReciprocityAcrossRegions) {
  const double eps_d = 2.25;
  const cplx eps_m = kSilver.eps_m;
  const std::pair<double, double> pairs[] = {{30e-9, -20e-9}, {-20e-9, 30e-9}, {10e-9, 60e-9},
                                             {-15e-9, -50e-9}};
  for (double k : {0.4 * kK0, 1.3 * kK0, 2.7 * kK0})
    for (auto [z, zp] : pairs) {
      auto g = [&](GComponent c, double a, double b, GreenVariant v = GreenVariant::consistent) {
        return reduced_g(c, k, kOmega, a, b, eps_d, eps_m, v);
      };
      EXPECT_LT(rel(g(GComponent::xx, z, zp), g(GComponent::xx, zp, z)), 1e-12);
      EXPECT_LT(rel(g(GComponent::yy, z, zp), g(GComponent::yy, zp, z)), 1e-12);
      EXPECT_LT(rel(g(GComponent::zz, z, zp), g(GComponent::zz, zp, z)), 1e-12);
      EXPECT_LT(rel(g(GComponent::xz, z, zp), -g(GComponent::zx, zp, z)), 1e-12);
    }
  // The printed cross-region g_xx is not reciprocal unless eps_d = 1.
  auto gp = [&](double a, double b) {
    return reduced_g(GComponent::xx, 1.3 * kK0, kOmega, a, b, eps_d, eps_m, GreenVariant::printed);
  };
  EXPECT_GT(rel(gp(30e-9, -20e-9), gp(-20e-9, 30e-9)), 0.5);
}

TEST(ReducedG, XZDirectTermFlipsSignAcrossSource) {
  const double zp = 50e-9, d = 1e-12, k = 1.5 * kK0;
  auto parts = [&](double z) {
    return detail::reduced_g_parts(GComponent::xz, k, kOmega, z, zp, kSilver.eps_d, kSilver.eps_m,
                                   GreenVariant::consistent);
  };
  const GreenParts above = parts(zp + d), below = parts(zp - d);
  EXPECT_LT(rel(above.direct, -below.direct), 1e-6);
  EXPECT_LT(rel(above.scattered, below.scattered), 1e-4);
}

TEST(ReducedG, PoleProximityOnLosslessInterface) {
  const cplx eps_m(-2.0, 0.0);
  const SppMode m = spp_pole(kOmega, 1.0, eps_m);
  try {
    reduced_g(GComponent::zz, m.k_spp.real(), kOmega, 10e-9, 10e-9, 1.0, eps_m);
    FAIL() << "expected PoleProximityError";
  } catch (const PoleProximityError& e) {
    EXPECT_LT(e.distance(), 1e-6 * m.k_spp.real());
  }
  EXPECT_NO_THROW(reduced_g(GComponent::yy, m.k_spp.real(), kOmega, 10e-9, 10e-9, 1.0, eps_m));
}

TEST(ReducedG, ContactTermIsSymbolic) {
  const auto g = reduced_g_matrix(1.3 * kK0, kOmega, 10e-9, 10e-9, kSilver.eps_d, kSilver.eps_m);
  EXPECT_TRUE(g.contact.present);
  EXPECT_LT(rel(g.contact.coefficient, 4.0 * pi / (kK0 * kK0 * kSilver.eps_d)), 1e-14);
  const auto cross = reduced_g_matrix(1.3 * kK0, kOmega, 10e-9, -10e-9, kSilver.eps_d, kSilver.eps_m);
  EXPECT_FALSE(cross.contact.present);
  EXPECT_TRUE(std::isfinite(std::abs(g.zz)));
}

TEST(ReducedG, RejectsBadArguments) {
  EXPECT_THROW(reduced_g(GComponent::xx, -1.0, kOmega, 1e-9, 1e-9, 1.0, kSilver.eps_m), DomainError);
  EXPECT_THROW(reduced_g(GComponent::xx, 1.0, kOmega, NAN, 1e-9, 1.0, kSilver.eps_m), DomainError);
}

TEST(RegionPair, InterfaceBelongsToDielectric) {
  EXPECT_EQ(side_of(0.0), Side::dielectric);
  EXPECT_EQ(side_of(-1e-30), Side::metal);
  const auto r = RegionPair::from(-1.0, 0.0);
  EXPECT_EQ(r.observer, Side::metal);
  EXPECT_EQ(r.source, Side::dielectric);
}

TEST(Rotation, AlignedAndQuarterTurn) {
  const Rotation a = rotation_s(2.0, 0.0);
  EXPECT_FALSE(a.degenerate);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.s[i][j], i == j ? 1.0 : 0.0);
  const Rotation q = rotation_s(0.0, 3.0);
  // s (0, k, 0) = (k, 0, 0)
  EXPECT_DOUBLE_EQ(q.s[0][1] * 3.0, 3.0);
  EXPECT_DOUBLE_EQ(q.s[1][1] * 3.0, 0.0);
  EXPECT_TRUE(rotation_s(0.0, 0.0).degenerate);
}

TEST(Rotation, MapsWaveVectorOntoXAndInverts) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 1000; ++n) {
    const double kx = u(rng), ky = u(rng);
    const Rotation r = rotation_s(kx, ky);
    const double kp = std::hypot(kx, ky);
    EXPECT_NEAR(r.s[0][0] * kx + r.s[0][1] * ky, kp, 1e-14 * kp);
    EXPECT_NEAR(r.s[1][0] * kx + r.s[1][1] * ky, 0.0, 1e-14 * kp);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double p = 0.0;
        for (int m = 0; m < 3; ++m) p += r.s_inv[i][m] * r.s[m][j];
        EXPECT_NEAR(p, i == j ? 1.0 : 0.0, 1e-15);
      }
  }
}

TEST(AssembleD, EqualsExplicitProduct) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 10000; ++n) {
    ReducedGreenMatrix g;
    g.xx = {u(rng), u(rng)};
    g.yy = {u(rng), u(rng)};
    g.zz = {u(rng), u(rng)};
    g.xz = {u(rng), u(rng)};
    g.zx = {u(rng), u(rng)};
    const double kx = u(rng), ky = u(rng);
    const Mat3c d = assemble_d(kx, ky, g);
    const Rotation r = rotation_s(kx, ky);
    const Mat3c gm{{{g.xx, 0.0, g.xz}, {0.0, g.yy, 0.0}, {g.zx, 0.0, g.zz}}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cplx p = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) p += r.s_inv[i][a] * gm[a][b] * r.s[b][j];
        ASSERT_LT(std::abs(p - d[i][j]), 1e-14);
      }
    if (std::abs(ky) > 1e-3) {
      EXPECT_LT(std::abs(d[0][2] / d[1][2] - kx / ky), 1e-12 * std::abs(kx / ky) + 1e-12);
    }
  }
}

TEST(AssembleD, AlignedWaveVectorGivesG) {
  ReducedGreenMatrix g{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {}};
  const Mat3c d = assemble_d(1.0, 0.0, g);
  EXPECT_EQ(d[0][0], g.xx);
  EXPECT_EQ(d[1][1], g.yy);
  EXPECT_EQ(d[2][2], g.zz);
  EXPECT_EQ(d[0][2], g.xz);
  EXPECT_EQ(d[2][0], g.zx);
  EXPECT_EQ(d[0][1], cplx(0.0));
  EXPECT_EQ(d[1][2], cplx(0.0));
  EXPECT_THROW(assemble_d(0.0, 0.0, g), DomainError);
}

TEST(FreeSpaceG0, FarFieldIsTransverse) {
  const double k = 1e7;
  const Vec3 dir{0.36, 0.48, 0.8};
  for (double R : {1e-4, 1e-3, 1e-2}) {
    const Vec3 r{dir.x * R, dir.y * R, dir.z * R};
    const Mat3c G = free_space_G0(r, {}, k);
    cplx radial = 0.0, trace = 0.0;
    for (int i = 0; i < 3; ++i) {
      trace += G[i][i];
      for (int j = 0; j < 3; ++j) radial += dir[i] * G[i][j] * dir[j];
    }
    EXPECT_LT(std::abs(radial) / std::abs(trace), 3.0 / (k * R));
  }
}

// mpmath: Im tr G0 at kR = 1e-6 equals k/(2 pi) to ~1e-12.
TEST(FreeSpaceG0, ImaginaryTraceAtSmallSeparation) {
  const double k = 1e7;
  const Mat3c G = free_space_G0({1e-13 / 3.0, 2e-13 / 3.0, 2e-13 / 3.0}, {}, k);
  const double im_tr = (G[0][0] + G[1][1] + G[2][2]).imag();
  EXPECT_NEAR(im_tr / (k / (2.0 * pi)), 1.0, 1e-6);
}

TEST(FreeSpaceG0, TranslationInvarianceAndSymmetry) {
  const Vec3 a{1e-7, 2e-7, 3e-7}, b{-4e-7, 1e-7, 0.5e-7}, t{5e-6, -3e-6, 7e-6};
  const Mat3c G1 = free_space_G0(a, b, 1.3e7);
  const Mat3c G2 = free_space_G0({a.x + t.x, a.y + t.y, a.z + t.z}, {b.x + t.x, b.y + t.y, b.z + t.z}, 1.3e7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_LT(rel(G1[i][j], G2[i][j]), 1e-9);
      EXPECT_EQ(G1[i][j], G1[j][i]);
    }
  EXPECT_THROW(free_space_G0(a, a, 1e7), DomainError);
  EXPECT_THROW(free_space_G0(a, b, -1.0), DomainError);
}

TEST(SommerfeldD, IntegratedDirectTermEqualsFreeSpaceDyadic) {
  // eps_m = eps_d: no reflection, so D is the direct wave alone.
  const Vec3 X{120e-9, -80e-9, 90e-9}, Xp{10e-9, 30e-9, 25e-9};
  SommerfeldOptions opt;
  opt.direct = DirectTerm::integrated;
  const double k = kK0;
  const Mat3c G0 = free_space_G0(X, Xp, k);
  for (Axis i : {Axis::x, Axis::y, Axis::z})
    for (Axis j : {Axis::x, Axis::y, Axis::z}) {
      const cplx D = sommerfeld_D(i, j, X, Xp, kOmega, 1.0, cplx(1.0, 0.0), PoleHandling::full, opt);
      EXPECT_LT(std::abs(D - 4.0 * pi * G0[index(i)][index(j)]), 1e-6 * 4.0 * pi * std::abs(G0[2][2]))
          << axis_name(i) << axis_name(j);
    }
}

TEST(SommerfeldD, OffDiagonalXYVanishesOnLineYEqualsYp) {
  const Vec3 X{300e-9, 40e-9, 30e-9}, Xp{-50e-9, 40e-9, 20e-9};
  const cplx xy = sommerfeld_D(Axis::x, Axis::y, X, Xp, kOmega, kSilver.eps_d, kSilver.eps_m, PoleHandling::full);
  const cplx xx = sommerfeld_D(Axis::x, Axis::x, X, Xp, kOmega, kSilver.eps_d, kSilver.eps_m, PoleHandling::full);
  EXPECT_LT(std::abs(xy), 1e-12 * std::abs(xx));
}

TEST(SommerfeldD, ReciprocityOnRandomPairs) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SommerfeldOptions opt;
  const double tol = 10.0 * opt.quad.rel_tol;
  for (int n = 0; n < 10; ++n) {
    const Interface itf = silver_air(450.0 + 250.0 * u(rng));
    const Vec3 X{(u(rng) - 0.5) * 1e-6, (u(rng) - 0.5) * 1e-6, (5.0 + 150.0 * u(rng)) * 1e-9};
    const Vec3 Xp{(u(rng) - 0.5) * 1e-6, (u(rng) - 0.5) * 1e-6, (5.0 + 150.0 * u(rng)) * 1e-9};
    for (Axis i : {Axis::x, Axis::y, Axis::z})
      for (Axis j : {Axis::x, Axis::y, Axis::z}) {
        const cplx a = sommerfeld_D(i, j, X, Xp, itf.omega, itf.eps_d, itf.eps_m, PoleHandling::full, opt);
        const cplx b = sommerfeld_D(j, i, Xp, X, itf.omega, itf.eps_d, itf.eps_m, PoleHandling::full, opt);
        EXPECT_LE(std::abs(a - b), tol * std::max(std::abs(a), std::abs(b)) + 1e-300);
      }
  }
}

TEST(SommerfeldD, CrossRegionReciprocitySelectsConsistentRows) {
  const double eps_d = 2.25;
  const Interface itf = make_interface(Dielectric{eps_d}, DrudeMetal{silver_default()}, kOmega);
  const Vec3 above{150e-9, 60e-9, 40e-9}, below{-30e-9, 10e-9, -8e-9};
  SommerfeldOptions consistent, printed;
  printed.variant = GreenVariant::printed;
  auto D = [&](Axis i, Axis j, const Vec3& a, const Vec3& b, const SommerfeldOptions& o) {
    return sommerfeld_D(i, j, a, b, itf.omega, itf.eps_d, itf.eps_m, PoleHandling::full, o);
  };
  for (auto [i, j] : {std::pair{Axis::x, Axis::x}, {Axis::z, Axis::x}, {Axis::x, Axis::z}}) {
    const cplx a = D(i, j, below, above, consistent), b = D(j, i, above, below, consistent);
    EXPECT_LT(rel(a, b), 1e-6) << axis_name(i) << axis_name(j);
  }
  const cplx pa = D(Axis::x, Axis::x, below, above, printed);
  const cplx pb = D(Axis::x, Axis::x, above, below, printed);
  EXPECT_GT(rel(pa, pb), 0.1);
}

TEST(SommerfeldD, PoleDecompositionIsConsistent) {
  const Vec3 X{200e-9, 100e-9, 30e-9}, Xp{0.0, 0.0, 50e-9};
  for (Axis i : {Axis::x, Axis::z})
    for (Axis j : {Axis::x, Axis::z}) {
      auto D = [&](PoleHandling h) {
        return sommerfeld_D(i, j, X, Xp, kOmega, kSilver.eps_d, kSilver.eps_m, h);
      };
      const cplx full = D(PoleHandling::full);
      EXPECT_LT(std::abs(full - D(PoleHandling::pole_only) - D(PoleHandling::pole_excluded)),
                1e-7 * std::abs(full));
    }
}

// pi i Res evaluated independently with mpmath (tests/oracles/derive_values.py).
TEST(SommerfeldD, PoleOnlyZZMatchesResidueOracle) {
  const cplx ref(215848.74698974813, -4974634.5379551354);
  const cplx D = sommerfeld_D(Axis::z, Axis::z, {300e-9, 0.0, 30e-9}, {0.0, 0.0, 30e-9}, kOmega,
                              kSilver.eps_d, kSilver.eps_m, PoleHandling::pole_only);
  EXPECT_LT(rel(D, ref), 1e-8);
}

TEST(SommerfeldD, LosslessInterfaceUsesIndentedPath) {
  const cplx eps_m(-2.0, 0.0);
  const Vec3 X{250e-9, -40e-9, 35e-9}, Xp{0.0, 20e-9, 15e-9};
  const cplx a = sommerfeld_D(Axis::z, Axis::x, X, Xp, kOmega, 1.0, eps_m, PoleHandling::full);
  const cplx b = sommerfeld_D(Axis::x, Axis::z, Xp, X, kOmega, 1.0, eps_m, PoleHandling::full);
  EXPECT_TRUE(std::isfinite(std::abs(a)));
  EXPECT_LT(rel(a, b), 1e-7);
}

TEST(SommerfeldD, Preconditions) {
  const Vec3 X{1e-7, 0.0, 2e-8};
  EXPECT_THROW(sommerfeld_D(Axis::z, Axis::z, X, X, kOmega, 1.0, kSilver.eps_m, PoleHandling::full),
               DomainError);
  EXPECT_THROW(sommerfeld_D(Axis::z, Axis::z, X, {0.0, 0.0, -1e-8}, kOmega, 1.0, kSilver.eps_m,
                            PoleHandling::pole_only),
               DomainError);
  EXPECT_THROW(sommerfeld_D(Axis::z, Axis::z, X, {0.0, 0.0, 1e-8}, kOmega, 1.0, cplx(-0.5, 0.1),
                            PoleHandling::pole_only),
               NoBoundModeError);
}
