#pragma once

#include <projbound/errors.hpp>

#include <string>
#include <string_view>

namespace projbound {

enum class FieldTag { R, C, H };

/// Ground field of the projective space: reals, complexes or quaternions.
/// `delta` is the real dimension of the field.
struct Field {
  FieldTag tag = FieldTag::R;

  constexpr int delta() const noexcept {
    switch (tag) {
    case FieldTag::R: return 1;
    case FieldTag::C: return 2;
    case FieldTag::H: return 4;
    }
    return 1;
  }

  constexpr char symbol() const noexcept {
    switch (tag) {
    case FieldTag::R: return 'R';
    case FieldTag::C: return 'C';
    case FieldTag::H: return 'H';
    }
    return '?';
  }

  static constexpr Field real() noexcept { return {FieldTag::R}; }
  static constexpr Field complex() noexcept { return {FieldTag::C}; }
  static constexpr Field quaternion() noexcept { return {FieldTag::H}; }

  /// Accepts "R", "C", "H" (case-insensitive).
  static Field parse(std::string_view s) {
    if (s.size() == 1) {
      switch (s[0]) {
      case 'R': case 'r': return real();
      case 'C': case 'c': return complex();
      case 'H': case 'h': return quaternion();
      default: break;
      }
    }
    throw InputError("unknown field '" + std::string(s) + "' (expected R, C or H)");
  }

  friend constexpr bool operator==(Field a, Field b) noexcept { return a.tag == b.tag; }
};

inline constexpr Field all_fields[] = {Field::real(), Field::complex(), Field::quaternion()};

inline std::string to_string(Field f) { return std::string(1, f.symbol()); }

} // namespace projbound
