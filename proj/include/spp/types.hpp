#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace spp {

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr int index(Axis a) { return static_cast<int>(a); }

inline constexpr char axis_name(Axis a) { return "xyz"[index(a)]; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat3c = std::array<std::array<std::complex<double>, 3>, 3>;
using Vec3c = std::array<std::complex<double>, 3>;

inline Vec3 unit_vector(Axis a) {
  Vec3 v;
  if (a == Axis::x) v.x = 1.0;
  if (a == Axis::y) v.y = 1.0;
  if (a == Axis::z) v.z = 1.0;
  return v;
}

}  // namespace spp
