#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "trajint/scalar.hpp"

namespace trajint {

/// A value in [-inf, +inf] with the integration conventions:
///   0 * (+-inf) = 0,  inf + (-inf) = inf,  u - v = u + (-v).
template <class T>
class ExtReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  ExtReal() = default;
  ExtReal(T v) : kind_(Kind::finite), value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtReal pos_inf() { return ExtReal(Kind::pos_inf); }
  static ExtReal neg_inf() { return ExtReal(Kind::neg_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  /// Finite payload; zero for the infinities.
  const T& value() const { return value_; }

  ExtReal operator-() const {
    switch (kind_) {
      case Kind::pos_inf:
        return neg_inf();
      case Kind::neg_inf:
        return pos_inf();
      default:
        return ExtReal(T(-value_));
    }
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return ExtReal(T(a.value_ + b.value_));
  }

  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  friend bool operator<(const ExtReal& a, const ExtReal& b) { return a.rank_compare(b) < 0; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  double to_double() const;
  std::string to_string() const;

 private:
  explicit ExtReal(Kind k) : kind_(k), value_(0) {}

  int rank() const { return kind_ == Kind::neg_inf ? -1 : (kind_ == Kind::pos_inf ? 1 : 0); }
  int rank_compare(const ExtReal& o) const {
    if (rank() != o.rank()) return rank() < o.rank() ? -1 : 1;
    if (!is_finite()) return 0;
    if (value_ < o.value_) return -1;
    return o.value_ < value_ ? 1 : 0;
  }

  Kind kind_ = Kind::finite;
  T value_ = T(0);
};

template <class T>
ExtReal<T> ext_add(const ExtReal<T>& a, const ExtReal<T>& b) {
  return a + b;
}

/// c * a with 0 * (+-inf) = 0.
template <class T>
ExtReal<T> ext_scale(const T& c, const ExtReal<T>& a) {
  if (a.is_finite()) return ExtReal<T>(T(c * a.value()));
  const int s = sign(c);
  if (s == 0) return ExtReal<T>(T(0));
  return (s > 0) == a.is_pos_inf() ? ExtReal<T>::pos_inf() : ExtReal<T>::neg_inf();
}

template <class T>
ExtReal<T> ext_abs(const ExtReal<T>& a) {
  if (!a.is_finite()) return ExtReal<T>::pos_inf();
  return ExtReal<T>(ScalarTraits<T>::abs(a.value()));
}

template <class T>
ExtReal<T> ext_max(const ExtReal<T>& a, const ExtReal<T>& b) {
  return a < b ? b : a;
}

template <class T>
ExtReal<T> ext_min(const ExtReal<T>& a, const ExtReal<T>& b) {
  return b < a ? b : a;
}

template <class T>
ExtReal<T> positive_part(const ExtReal<T>& a) {
  return ext_max(a, ExtReal<T>(T(0)));
}

template <class T>
ExtReal<T> negative_part(const ExtReal<T>& a) {
  return ext_max(-a, ExtReal<T>(T(0)));
}

/// Equality that honours the float-mode zero band on finite values.
template <class T>
bool approx_eq(const ExtReal<T>& a, const ExtReal<T>& b) {
  if (a.is_finite() && b.is_finite()) return approx_eq(a.value(), b.value());
  return a == b;
}

template <class T>
bool approx_le(const ExtReal<T>& a, const ExtReal<T>& b) {
  if (a.is_finite() && b.is_finite()) return approx_le(a.value(), b.value());
  return a <= b;
}

template <class T>
bool is_zero(const ExtReal<T>& a) {
  return a.is_finite() && is_zero(a.value());
}

template <class T>
double ExtReal<T>::to_double() const {
  switch (kind_) {
    case Kind::pos_inf:
      return std::numeric_limits<double>::infinity();
    case Kind::neg_inf:
      return -std::numeric_limits<double>::infinity();
    default:
      return ScalarTraits<T>::to_double(value_);
  }
}

template <class T>
std::string ExtReal<T>::to_string() const {
  switch (kind_) {
    case Kind::pos_inf:
      return "inf";
    case Kind::neg_inf:
      return "-inf";
    default:
      return format_scalar(value_);
  }
}

template <class T>
std::ostream& operator<<(std::ostream& os, const ExtReal<T>& a) {
  return os << a.to_string();
}

/// Accepts every scalar literal plus "inf", "+inf", "-inf".
template <class T>
ExtReal<T> parse_ext_real(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return ExtReal<T>::pos_inf();
  if (text == "-inf" || text == "-infinity") return ExtReal<T>::neg_inf();
  return ExtReal<T>(parse_scalar<T>(text));
}

}  // namespace trajint
