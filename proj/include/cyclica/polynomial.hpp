#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cyclica/matrix.hpp"

namespace cyclica {

/// Univariate polynomial, coefficients in ascending degree order.
/// The leading coefficient is nonzero unless the polynomial is zero.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(T c) { return Polynomial({std::move(c)}); }
  static Polynomial monomial(std::size_t degree, T c = ScalarTraits<T>::from_int(1)) {
    std::vector<T> v(degree + 1);
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }
  /// x - root
  static Polynomial linear(const T& root) {
    return Polynomial({-root, ScalarTraits<T>::from_int(1)});
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coefficients() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }
  const T& leading() const { return c_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  T evaluate(const T& x) const;
  Matrix<T> evaluate(const Matrix<T>& a) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder). Exact backend only.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

 private:
  void trim() {
    while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

/// Monic gcd over Q(i).
Polynomial<Exact> gcd(Polynomial<Exact> a, Polynomial<Exact> b);

/// Yun's square-free decomposition: returns (factor, multiplicity) pairs with
/// monic, square-free, pairwise coprime factors whose product with the given
/// multiplicities is monic(p).
std::vector<std::pair<Polynomial<Exact>, std::size_t>> squarefree_decomposition(
    const Polynomial<Exact>& p);

/// Monic characteristic polynomial det(xI - A).
/// Exact: Faddeev-LeVerrier. Float: product of (x - lambda) over a dense eigensolve.
Polynomial<Exact> char_poly(const Matrix<Exact>& a);
Polynomial<Float> char_poly(const Matrix<Float>& a);

/// Monic minimal polynomial via the first linear dependency among I, A, A^2, ...
Polynomial<Exact> min_poly(const Matrix<Exact>& a);

/// Numeric roots of a polynomial (companion-matrix eigenvalues, Newton polished).
std::vector<Complex> numeric_roots(const Polynomial<Complex>& p);
Polynomial<Complex> to_float(const Polynomial<Exact>& p);

struct Eigenvalue {
  Complex value;
  std::size_t multiplicity = 1;
  /// Set when the eigenvalue is verified to lie in Q(i).
  std::optional<Exact> exact;
};

struct Spectrum {
  std::vector<Eigenvalue> values;  ///< distinct eigenvalues, sorted by (re, im)
  /// Float backend only: two clusters closer than the ambiguity margin.
  bool degenerate = false;

  std::size_t multiplicity_of(const Complex& z, double gap) const;
};

/// Exact input: square-free decomposition drives the multiplicities, each
/// simple root is snapped to Q(i) when an exact evaluation confirms it.
Spectrum eigenvalues(const Matrix<Exact>& a, const Tolerance& tol = {});
/// Float input: dense eigensolve, clustering within tol.gap.
Spectrum eigenvalues(const Matrix<Float>& a, const Tolerance& tol = {});

/// Multiplicity of an exact root (repeated exact division).
std::size_t root_multiplicity(const Polynomial<Exact>& p, const Exact& root);

extern template class Polynomial<Exact>;
extern template class Polynomial<Float>;

}  // namespace cyclica
