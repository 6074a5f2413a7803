#pragma once

#include <cmath>

namespace projbound {

/// w + x i + y j + z k. Reals and complexes embed with the trailing parts zero.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion conj() const noexcept { return {w, -x, -y, -z}; }
  constexpr double norm_sq() const noexcept { return w * w + x * x + y * y + z * z; }
  double abs() const noexcept { return std::sqrt(norm_sq()); }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) noexcept {
    return {a.w * s, a.x * s, a.y * s, a.z * s};
  }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
  friend constexpr auto operator<=>(const Quaternion&, const Quaternion&) = default;
};

} // namespace projbound
