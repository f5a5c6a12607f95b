#include "tvlab/core/scalar.hpp"

#include <ostream>

#include "tvlab/core/error.hpp"

namespace tvlab {

std::string_view to_string(Field f) { return f == Field::Real ? "R" : "C"; }

Field field_from_string(std::string_view s) {
  if (s == "R" || s == "real") return Field::Real;
  if (s == "C" || s == "complex") return Field::Complex;
  throw InputError("unknown field tag '" + std::string(s) + "'");
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  return Rational(num, den);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(num), Integer(den));
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw InputError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InputError("malformed rational '" + std::string(whole) + "'");
    }
  }
  Integer v(std::string(text.substr(pos)));
  return neg ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  return make_rational(num, den);
}

std::string format_rational(const Rational& q) {
  Integer den = denominator(q);
  if (den == 1) return numerator(q).str();
  return numerator(q).str() + "/" + den.str();
}

Integer numerator_of(const Rational& q) { return numerator(q); }
Integer denominator_of(const Rational& q) { return denominator(q); }

FieldScalar FieldScalar::inverse() const {
  Rational n = norm2();
  if (n == 0) throw std::domain_error("division by zero field scalar");
  return {re_ / n, -im_ / n};
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
  if (o.im_ == 0) {
    if (o.re_ == 0) throw std::domain_error("division by zero field scalar");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string format_scalar(const FieldScalar& z) {
  if (z.is_real()) return format_rational(z.re());
  std::string out = format_rational(z.re());
  if (z.im() >= 0) out += "+";
  out += format_rational(z.im()) + "i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const FieldScalar& z) { return os << format_scalar(z); }

}  // namespace tvlab
