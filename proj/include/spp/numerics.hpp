#pragma once

// Special functions, branch-controlled square roots and adaptive quadrature.
//
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "spp/errors.hpp"

namespace spp {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// ----------------------------------------------------------------------------
// Bessel functions of the first kind, orders 0..2
// ----------------------------------------------------------------------------

namespace detail {

// Below this the power series is used; its largest term is ~ e^x/(2 pi x),
// i.e. about 20 at x = 6, so cancellation costs at most two digits.
inline constexpr double kBesselSeriesMax = 6.0;
// Above this the Hankel asymptotic expansion converges to below 1e-17
// (its smallest term behaves like e^{-2x}).
inline constexpr double kBesselAsymptoticMin = 25.0;

inline double bessel_series(int n, double x) {
  const double h = 0.5 * x;
  const double h2 = h * h;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence normalised with J0 + 2 sum J_2k = 1.
inline double bessel_miller(int n, double x) {
  const int start = 2 * (static_cast<int>(x + 10.0 * std::sqrt(x) + 30.0) / 2);
  double jp1 = 0.0;
  double j = 1e-300;
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k > 0; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == n) result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  norm += j;  // J0
  return result / norm;
}

inline double bessel_asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (k * 8.0 * x);
    }
    if (std::abs(term) > prev) break;  // series starts to diverge
    prev = std::abs(term);
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// J_n(x) for n in {0, 1, 2} and real x >= 0.
inline double bessel_j(int order, double x) {
  if (order < 0 || order > 2) throw DomainError("bessel_j: order must be 0, 1 or 2");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("bessel_j: x must be finite and >= 0");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= detail::kBesselSeriesMax) return detail::bessel_series(order, x);
  if (x < detail::kBesselAsymptoticMin) return detail::bessel_miller(order, x);
  return detail::bessel_asymptotic(order, x);
}

/// J_n(z) for integer n and complex z, from the trapezoidal rule applied to
/// J_n(z) = (1/2pi) int_0^{2pi} exp(i (z sin t - n t)) dt. The rule is
/// spectrally accurate for this periodic integrand; the aliasing error is of
/// order J_{N-n}(z), negligible once N exceeds |z| by a few dozen. Intended for
/// moderate |Im z| (round-off grows like exp|Im z|).
inline cplx bessel_j(int order, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("bessel_j: non-finite complex argument");
  const int n_pts = 2 * static_cast<int>((std::abs(z) + std::abs(order) + 48.0) / 2.0);
  cplx sum = 0.0;
  const double h = 2.0 * std::numbers::pi / n_pts;
  for (int j = 0; j < n_pts; ++j) {
    const double t = j * h;
    sum += std::exp(I * (z * std::sin(t) - static_cast<double>(order) * t));
  }
  return sum / static_cast<double>(n_pts);
}

// ----------------------------------------------------------------------------
// Branch-controlled square root
// ----------------------------------------------------------------------------

enum class BranchRule {
  ImNonNegative,     ///< Im z >= 0; on Im z = 0 pick Re z >= 0
  PrincipalNegated,  ///< negative of ImNonNegative
};

inline cplx branched_sqrt(cplx w, BranchRule rule) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw DomainError("branched_sqrt: non-finite argument");
  cplx z = std::sqrt(w);
  if (z.imag() < 0.0 || (z.imag() == 0.0 && z.real() < 0.0)) z = -z;
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);  // normalise -0
  return rule == BranchRule::ImNonNegative ? z : -z;
}

// ----------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature
// ----------------------------------------------------------------------------

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
  /// Semi-infinite integrals are truncated at a + tail_cutoff * decay_length.
  double tail_cutoff = 40.0;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw DomainError("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(tail_cutoff >= 1.0)) throw DomainError("QuadratureSpec: tail_cutoff must be >= 1");
  }
};

/// Upper limit +infinity for an integrand whose envelope decays at least like
/// exp(-(x - a) / decay_length).
struct SemiInfinite {
  double decay_length;
};

struct QuadratureResult {
  cplx value;
  double error;
  int subdivisions;
};

namespace detail {

// 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525949528, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class F>
cplx eval_cplx(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (std::is_convertible_v<R, double> && !std::is_same_v<std::decay_t<R>, cplx>) {
    return cplx(static_cast<double>(f(x)), 0.0);
  } else {
    return static_cast<cplx>(f(x));
  }
}

struct Segment {
  double a;
  double b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = eval_cplx(f, center);
  cplx kronrod = kWgk[10] * fc;
  cplx gauss = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kXgk[i];
    const cplx sum = eval_cplx(f, center - dx) + eval_cplx(f, center + dx);
    kronrod += kWgk[i] * sum;
    if (i % 2 == 1) gauss += kWg[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive integration of f over consecutive intervals
/// [points[0], points[1]], ..., i.e. with the interior points as declared
/// breakpoints. Succeeds when the summed error estimate is at most
/// max(abs_tol, rel_tol * |result|); throws QuadratureError otherwise.
template <class F>
QuadratureResult adaptive_integrate_detailed(F&& f, std::span<const double> points,
                                             const QuadratureSpec& spec) {
  spec.validate();
  if (points.size() < 2) throw DomainError("adaptive_integrate: need at least two points");
  std::priority_queue<detail::Segment> heap;
  std::vector<detail::Segment> frozen;
  cplx total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!std::isfinite(points[i]) || !std::isfinite(points[i + 1]))
      throw DomainError("adaptive_integrate: limits must be finite");
    if (points[i] == points[i + 1]) continue;
    auto seg = detail::gauss_kronrod21(f, points[i], points[i + 1]);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  int count = static_cast<int>(heap.size());
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_err > tolerance()) {
    if (heap.empty() || count >= spec.max_subdivisions) {
      throw QuadratureError("adaptive_integrate: no convergence after " + std::to_string(count) +
                                " subdivisions",
                            total.real(), total.imag(), total_err);
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen.push_back(worst);  // interval at round-off resolution
      continue;
    }
    const auto left = detail::gauss_kronrod21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum to shed the drift of the running totals.
  cplx sum = 0.0;
  double err = 0.0;
  for (const auto& s : frozen) {
    sum += s.value;
    err += s.error;
  }
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sum, err, count};
}

template <class F>
cplx adaptive_integrate(F&& f, std::span<const double> points, const QuadratureSpec& spec) {
  return adaptive_integrate_detailed(std::forward<F>(f), points, spec).value;
}

template <class F>
cplx adaptive_integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  const std::array<double, 2> pts{a, b};
  return adaptive_integrate(std::forward<F>(f), std::span<const double>(pts), spec);
}

/// Integral over [a, +inf), truncated where the declared envelope has decayed
/// by exp(-tail_cutoff).
template <class F>
cplx adaptive_integrate(F&& f, double a, SemiInfinite upper, const QuadratureSpec& spec) {
  if (!(upper.decay_length > 0.0) || !std::isfinite(upper.decay_length))
    throw DomainError("adaptive_integrate: decay length must be finite and > 0");
  spec.validate();
  return adaptive_integrate(std::forward<F>(f), a, a + spec.tail_cutoff * upper.decay_length,
                            spec);
}

/// Contour integral of an analytic f along gamma(t), t in [t0, t1].
template <class F, class Path, class Tangent>
cplx integrate_path(F&& f, Path&& gamma, Tangent&& dgamma, double t0, double t1,
                    const QuadratureSpec& spec) {
  return adaptive_integrate([&](double t) -> cplx { return f(gamma(t)) * dgamma(t); }, t0, t1,
                            spec);
}

}  // namespace spp
