#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tvlab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Ground field of an instance. Complex data is stored as pairs of rationals.
enum class Field { Real, Complex };

std::string_view to_string(Field f);
Field field_from_string(std::string_view s);

/// Real dimension of the field: 1 for R, 2 for C.
constexpr int field_factor(Field f) { return f == Field::Real ? 1 : 2; }

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or "-p/q". Throws InputError on malformed text or q == 0.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);

/// Exact element of Q[i]. Real data simply carries im == 0.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  FieldScalar(std::int64_t re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(int re) : re_(re) {}           // NOLINT(google-explicit-constructor)

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  FieldScalar conj() const { return {re_, -im_}; }
  /// |z|^2, always a nonnegative rational.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  FieldScalar inverse() const;

  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o);

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
  friend FieldScalar operator-(const FieldScalar& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const FieldScalar& z);

/// "a" for real values, "a+bi" style otherwise; components in p/q form.
std::string format_scalar(const FieldScalar& z);

}  // namespace tvlab
