#include "cyclica/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace cyclica {

Rational GaussianRational::parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  s = s.substr(first);
  if (s.empty()) throw InputError("empty rational literal");

  const auto dot = s.find('.');
  const auto exp = s.find_first_of("eE");
  if (dot != std::string::npos || exp != std::string::npos) {
    // decimal literal: mantissa digits over a power of ten
    std::string mantissa = s.substr(0, exp);
    long exponent = 0;
    if (exp != std::string::npos) {
      try {
        exponent = std::stol(s.substr(exp + 1));
      } catch (const std::exception&) {
        throw InputError("bad exponent in '" + s + "'");
      }
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      negative = mantissa[0] == '-';
      mantissa.erase(0, 1);
    }
    const auto mdot = mantissa.find('.');
    std::string digits = mantissa;
    if (mdot != std::string::npos) {
      exponent -= static_cast<long>(mantissa.size() - mdot - 1);
      digits.erase(mdot, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad decimal literal '" + s + "'");
    }
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  const auto valid = s.find_first_not_of("+-0123456789/");
  if (valid != std::string::npos) throw InputError("bad rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw InputError("bad rational literal '" + std::string(text) + "'");
  if (sgn(r.get_den()) == 0) throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Rational GaussianRational::rational_from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite number cannot be made exact");
  Rational r(v);
  r.canonicalize();
  return r;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw Error("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  const Rational den = o.norm2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string out = re_.get_str();
  out += sgn(im_) < 0 ? "-" : "+";
  out += Rational(abs(im_)).get_str();
  out += "i";
  return out;
}

}  // namespace cyclica
