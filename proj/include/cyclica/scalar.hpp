#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclica {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, bad schema, invalid index.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A randomized or exact-arithmetic search could not reach a certified answer.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Element of Q(i), stored as two canonical rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Parses "p", "p/q" or a decimal literal such as "-0.25".
  static Rational parse_rational(std::string_view text);
  /// Exact binary value of a double.
  static Rational rational_from_double(double v);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

using Exact = GaussianRational;
using Float = Complex;

/// Thresholds used by the complex floating-point backend. Exact arithmetic ignores them.
struct Tolerance {
  double rank = 1e-9;  ///< relative singular-value cutoff
  double gap = 1e-7;   ///< eigenvalue clustering distance

  void validate() const {
    if (!(rank > 0.0) || !(gap > 0.0)) throw InputError("tolerances must be positive");
  }
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Exact> {
  static constexpr bool exact = true;
  static constexpr const char* backend = "exact";
  static double magnitude(const Exact& x) { return std::abs(x.to_complex()); }
  static Complex to_complex(const Exact& x) { return x.to_complex(); }
  static Exact from_int(long v) { return Exact(v); }
  static Exact inverse(const Exact& x) { return Exact(1) / x; }
};

template <>
struct ScalarTraits<Float> {
  static constexpr bool exact = false;
  static constexpr const char* backend = "float";
  static double magnitude(const Float& x) { return std::abs(x); }
  static Complex to_complex(const Float& x) { return x; }
  static Float from_int(long v) { return Float(static_cast<double>(v), 0.0); }
  static Float inverse(const Float& x) { return Float(1.0) / x; }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// Zero test that is exact for rationals and relative to `scale` for floats.
template <class T>
bool negligible(const T& x, double scale, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    (void)scale;
    (void)tol;
    return x.is_zero();
  } else {
    return std::abs(x) <= tol.rank * (scale > 0.0 ? scale : 1.0);
  }
}

template <class T>
bool is_exact_zero(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.is_zero();
  } else {
    return x == T{};
  }
}

}  // namespace cyclica
