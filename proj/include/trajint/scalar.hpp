#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace trajint {

using Rational = mpq_class;

/// Sign and zero decisions are the only places where the two numeric modes
/// differ: exact rationals never round, floats treat |x| <= 1e-9 as zero.
enum class NumericMode { exact_rational, floating };

inline constexpr double kFloatTolerance = 1e-9;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr NumericMode mode = NumericMode::floating;
  static constexpr const char* name = "float";
  static bool is_zero(double x) { return std::fabs(x) <= kFloatTolerance; }
  static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr NumericMode mode = NumericMode::exact_rational;
  static constexpr const char* name = "exact";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static int sign(const Rational& x) { return sgn(x); }
  static Rational abs(const Rational& x) { return Rational(::abs(x)); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return Rational(x); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
};

template <class T>
bool is_zero(const T& x) {
  return ScalarTraits<T>::is_zero(x);
}

template <class T>
int sign(const T& x) {
  return ScalarTraits<T>::sign(x);
}

/// a <= b up to the mode's zero band.
template <class T>
bool approx_le(const T& a, const T& b) {
  return sign(T(b - a)) >= 0;
}

template <class T>
bool approx_eq(const T& a, const T& b) {
  return is_zero(T(a - b));
}

/// Parses "3", "-2.5", "1e-3", or "p/q". Decimal literals are converted
/// exactly in rational mode ("0.1" is 1/10, not the nearest double).
template <class T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);

std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

}  // namespace trajint
