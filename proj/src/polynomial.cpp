#include "cyclica/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "cyclica/subspace.hpp"

namespace cyclica {

template <class T>
Polynomial<T> Polynomial<T>::monic() const {
  if (is_zero()) return *this;
  const T inv = ScalarTraits<T>::inverse(leading());
  std::vector<T> v = c_;
  for (auto& x : v) x *= inv;
  v.back() = ScalarTraits<T>::from_int(1);
  return Polynomial(std::move(v));
}

template <class T>
Polynomial<T> Polynomial<T>::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<T> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    v[k - 1] = c_[k] * ScalarTraits<T>::from_int(static_cast<long>(k));
  return Polynomial(std::move(v));
}

template <class T>
T Polynomial<T>::evaluate(const T& x) const {
  T acc{};
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

template <class T>
Matrix<T> Polynomial<T>::evaluate(const Matrix<T>& a) const {
  if (!a.is_square()) throw InputError("polynomial evaluated at non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> acc(n, n);
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c_[k];
  }
  return acc;
}

template <class T>
std::pair<Polynomial<T>, Polynomial<T>> Polynomial<T>::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error("polynomial division by zero");
  std::vector<T> rem = c_;
  const std::size_t dd = divisor.c_.size();
  if (rem.size() < dd) return {Polynomial(), *this};
  std::vector<T> quot(rem.size() - dd + 1);
  const T inv = ScalarTraits<T>::inverse(divisor.leading());
  for (std::size_t k = rem.size(); k-- >= dd;) {
    const T q = rem[k] * inv;
    quot[k - dd + 1] = q;
    if (is_exact_zero(q)) {
      if (k == dd - 1) break;
      continue;
    }
    for (std::size_t j = 0; j < dd; ++j) rem[k - dd + 1 + j] -= q * divisor.c_[j];
    rem[k] = T{};
    if (k == dd - 1) break;
  }
  rem.resize(dd - 1);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

template class Polynomial<Exact>;
template class Polynomial<Float>;

Polynomial<Exact> gcd(Polynomial<Exact> a, Polynomial<Exact> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<Polynomial<Exact>, std::size_t>> squarefree_decomposition(
    const Polynomial<Exact>& p) {
  std::vector<std::pair<Polynomial<Exact>, std::size_t>> out;
  if (p.degree() < 1) return out;
  const Polynomial<Exact> f = p.monic();
  const Polynomial<Exact> df = f.derivative();
  Polynomial<Exact> a = gcd(f, df);
  Polynomial<Exact> b = f.divmod(a).first;
  Polynomial<Exact> c = df.divmod(a).first;
  Polynomial<Exact> d = c - b.derivative();
  std::size_t i = 1;
  while (b.degree() > 0) {
    Polynomial<Exact> g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Polynomial<Exact> char_poly(const Matrix<Exact>& a) {
  if (!a.is_square()) throw InputError("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Exact> c(n + 1);
  c[n] = Exact(1);
  Matrix<Exact> m = Matrix<Exact>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Matrix<Exact> am = a * m;
    c[n - k] = -am.trace() / Exact(static_cast<long>(k));
    m = am;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k];
  }
  return Polynomial<Exact>(std::move(c));
}

namespace {

Eigen::MatrixXcd to_eigen(const Matrix<Float>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

std::vector<Complex> dense_eigenvalues(const Matrix<Float>& a) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue solver did not converge");
  std::vector<Complex> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Best rational approximation with bounded denominator (continued fractions).
std::optional<Rational> reconstruct(double x, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 9e15) break;
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0;
    const long k2 = a * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - fl;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12 * std::max(1.0, std::abs(x)))
      break;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

std::optional<Exact> snap_root(const Polynomial<Exact>& f, const Complex& z) {
  constexpr long kMaxDen = 1000000;
  const double scale = std::max(1.0, std::abs(z));
  std::vector<Rational> re_candidates, im_candidates;
  if (auto q = reconstruct(z.real(), kMaxDen)) re_candidates.push_back(*q);
  if (std::abs(z.real()) < 1e-6 * scale) re_candidates.emplace_back(0);
  if (auto q = reconstruct(z.imag(), kMaxDen)) im_candidates.push_back(*q);
  if (std::abs(z.imag()) < 1e-6 * scale) im_candidates.emplace_back(0);
  for (const auto& re : re_candidates) {
    for (const auto& im : im_candidates) {
      const Exact candidate(re, im);
      if (std::abs(candidate.to_complex() - z) > 1e-6 * scale) continue;
      if (f.evaluate(candidate).is_zero()) return candidate;
    }
  }
  return std::nullopt;
}

}  // namespace

Polynomial<Float> char_poly(const Matrix<Float>& a) {
  if (!a.is_square()) throw InputError("characteristic polynomial of non-square matrix");
  Polynomial<Float> p = Polynomial<Float>::constant(Float(1.0));
  for (const auto& z : dense_eigenvalues(a)) p = p * Polynomial<Float>::linear(z);
  return p;
}

Polynomial<Exact> min_poly(const Matrix<Exact>& a) {
  if (!a.is_square()) throw InputError("minimal polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Vector<Exact>> powers;
  SpanBuilder<Exact> span(n * n);
  Matrix<Exact> p = Matrix<Exact>::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    if (span.contains(p.vec())) {
      const Matrix<Exact> basis = Matrix<Exact>::from_columns(n * n, powers);
      const auto coeffs = solve(basis, p.vec());
      if (!coeffs) throw Error("minimal polynomial: inconsistent dependency");
      std::vector<Exact> c(k + 1);
      for (std::size_t i = 0; i < k; ++i) c[i] = -(*coeffs)[i];
      c[k] = Exact(1);
      return Polynomial<Exact>(std::move(c));
    }
    span.insert(p.vec());
    powers.push_back(p.vec());
    p = p * a;
  }
  throw Error("minimal polynomial degree exceeded n");
}

Polynomial<Complex> to_float(const Polynomial<Exact>& p) {
  std::vector<Complex> c;
  for (const auto& x : p.coefficients()) c.push_back(x.to_complex());
  return Polynomial<Complex>(std::move(c));
}

std::vector<Complex> numeric_roots(const Polynomial<Complex>& p) {
  if (p.degree() < 1) return {};
  const Polynomial<Complex> f = p.monic();
  const auto d = static_cast<std::size_t>(f.degree());
  Matrix<Float> companion(d, d);
  for (std::size_t i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(i, d - 1) = -f.coeff(i);
  std::vector<Complex> roots = dense_eigenvalues(companion);
  const Polynomial<Complex> df = f.derivative();
  for (auto& z : roots) {
    for (int iter = 0; iter < 4; ++iter) {
      const Complex fz = f.evaluate(z);
      const Complex dz = df.evaluate(z);
      if (std::abs(dz) < 1e-300) break;
      const Complex next = z - fz / dz;
      if (std::abs(f.evaluate(next)) >= std::abs(fz)) break;
      z = next;
    }
  }
  std::sort(roots.begin(), roots.end(), complex_less);
  return roots;
}

std::size_t Spectrum::multiplicity_of(const Complex& z, double gap) const {
  for (const auto& e : values)
    if (std::abs(e.value - z) <= gap) return e.multiplicity;
  return 0;
}

Spectrum eigenvalues(const Matrix<Exact>& a, const Tolerance& tol) {
  (void)tol;
  Spectrum out;
  for (const auto& [factor, mult] : squarefree_decomposition(char_poly(a))) {
    if (factor.degree() == 1) {
      const Exact root = -factor.coeff(0);
      out.values.push_back({root.to_complex(), mult, root});
      continue;
    }
    for (const auto& z : numeric_roots(to_float(factor))) {
      Eigenvalue e{z, mult, snap_root(factor, z)};
      if (e.exact) e.value = e.exact->to_complex();
      out.values.push_back(std::move(e));
    }
  }
  std::sort(out.values.begin(), out.values.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return complex_less(x.value, y.value); });
  return out;
}

Spectrum eigenvalues(const Matrix<Float>& a, const Tolerance& tol) {
  if (!a.is_square()) throw InputError("eigenvalues of non-square matrix");
  std::vector<Complex> raw = dense_eigenvalues(a);
  std::sort(raw.begin(), raw.end(), complex_less);
  // single-linkage clustering within tol.gap
  std::vector<std::vector<Complex>> clusters;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> cl{raw[i]};
    used[i] = true;
    for (std::size_t grow = 0; grow < cl.size(); ++grow) {
      for (std::size_t j = 0; j < raw.size(); ++j) {
        if (used[j] || std::abs(raw[j] - cl[grow]) > tol.gap) continue;
        used[j] = true;
        cl.push_back(raw[j]);
      }
    }
    clusters.push_back(std::move(cl));
  }
  Spectrum out;
  for (const auto& cl : clusters) {
    Complex mean{};
    for (const auto& z : cl) mean += z;
    mean /= static_cast<double>(cl.size());
    out.values.push_back({mean, cl.size(), std::nullopt});
  }
  std::sort(out.values.begin(), out.values.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return complex_less(x.value, y.value); });
  const double margin = std::sqrt(tol.gap);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    for (std::size_t j = i + 1; j < out.values.size(); ++j)
      if (std::abs(out.values[i].value - out.values[j].value) < margin) out.degenerate = true;
  return out;
}

std::size_t root_multiplicity(const Polynomial<Exact>& p, const Exact& root) {
  if (p.is_zero()) throw InputError("multiplicity of a root of the zero polynomial");
  std::size_t m = 0;
  Polynomial<Exact> q = p;
  const Polynomial<Exact> lin = Polynomial<Exact>::linear(root);
  while (q.degree() >= 1) {
    auto [quot, rem] = q.divmod(lin);
    if (!rem.is_zero()) break;
    q = std::move(quot);
    ++m;
  }
  return m;
}

}  // namespace cyclica
