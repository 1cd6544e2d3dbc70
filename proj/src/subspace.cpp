#include "cyclica/subspace.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace cyclica {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix<Float>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

struct FloatSvd {
  std::size_t rank = 0;
  Eigen::MatrixXcd v;  // full right singular vectors
};

FloatSvd float_svd(const Matrix<Float>& m, const Tolerance& tol) {
  FloatSvd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.v = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(m.cols()),
                                       static_cast<Eigen::Index>(m.cols()));
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double sigma_max = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tol.rank * (sigma_max > 0.0 ? sigma_max : 1.0);
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++out.rank;
  out.v = svd.matrixV();
  return out;
}

template <class T>
void scale_row(Matrix<T>& m, std::size_t r, const T& s) {
  for (auto& x : m.row(r)) x *= s;
}

template <class T>
void axpy_row(Matrix<T>& m, std::size_t dst, std::size_t src, const T& factor) {
  // row[dst] -= factor * row[src]
  auto d = m.row(dst);
  auto s = m.row(src);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (is_exact_zero(s[j])) continue;
    d[j] -= factor * s[j];
  }
}

}  // namespace

template <class T>
RowEchelon<T> rref(const Matrix<T>& input, const Tolerance& tol) {
  Matrix<T> m = input;
  const double scale = m.max_abs();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (negligible(m(i, c), scale, tol)) continue;
      if constexpr (is_exact_v<T>) {
        best = i;
        break;
      } else {
        const double mag = std::abs(m(i, c));
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
    }
    if (best == m.rows()) {
      if constexpr (!is_exact_v<T>) {
        for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = T{};
      }
      continue;
    }
    if (best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    const T inv = ScalarTraits<T>::inverse(m(r, c));
    scale_row(m, r, inv);
    m(r, c) = ScalarTraits<T>::from_int(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_exact_zero(m(i, c))) continue;
      const T factor = m(i, c);
      axpy_row(m, i, r, factor);
      m(i, c) = T{};
    }
    pivots.push_back(c);
    ++r;
  }
  RowEchelon<T> out;
  out.reduced = m.block(0, 0, r, m.cols());
  out.pivots = std::move(pivots);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return rref(m, tol).pivots.size();
  } else {
    return float_svd(m, tol).rank;
  }
}

template <class T>
Subspace<T> Subspace<T>::full(std::size_t ambient) {
  return Subspace(ambient, Matrix<T>::identity(ambient));
}

template <class T>
Subspace<T> Subspace<T>::span_rows(const Matrix<T>& rows, const Tolerance& tol) {
  if constexpr (is_exact_v<T>) {
    return Subspace(rows.cols(), rref(rows, tol).reduced);
  } else {
    const std::size_t n = rows.cols();
    const FloatSvd svd = float_svd(rows, tol);
    Matrix<T> basis(svd.rank, n);
    for (std::size_t k = 0; k < svd.rank; ++k)
      for (std::size_t j = 0; j < n; ++j)
        basis(k, j) = std::conj(svd.v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
    Tolerance loose = tol;
    loose.rank = std::min(tol.rank, 1e-12);
    auto e = rref(basis, loose);
    return Subspace(n, std::move(e.reduced));
  }
}

template <class T>
Subspace<T> Subspace<T>::span_columns(const Matrix<T>& cols, const Tolerance& tol) {
  return span_rows(cols.transpose(), tol);
}

template <class T>
Subspace<T> Subspace<T>::span(std::size_t ambient, const std::vector<Vector<T>>& vectors,
                              const Tolerance& tol) {
  if (vectors.empty()) return Subspace(ambient);
  return span_rows(Matrix<T>::from_rows(ambient, vectors), tol);
}

template <class T>
bool Subspace<T>::contains(std::span<const T> v, const Tolerance& tol) const {
  if (v.size() != ambient_) throw InputError("vector length does not match ambient dimension");
  if constexpr (is_exact_v<T>) {
    Vector<T> r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const auto row = basis_.row(i);
      std::size_t p = 0;
      while (p < ambient_ && row[p].is_zero()) ++p;
      if (r[p].is_zero()) continue;
      const T f = r[p];
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!row[j].is_zero()) r[j] -= f * row[j];
    }
    return std::all_of(r.begin(), r.end(), [](const T& x) { return x.is_zero(); });
  } else {
    Matrix<T> stacked = vstack(basis_, Matrix<T>::row_vector(Vector<T>(v.begin(), v.end())));
    return rank(stacked, tol) == dim();
  }
}

template <class T>
bool Subspace<T>::contains(const Subspace& other, const Tolerance& tol) const {
  if (other.ambient_ != ambient_) throw InputError("ambient dimension mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i), tol)) return false;
  return true;
}

template <class T>
Subspace<T> kernel(const Matrix<T>& m, const Tolerance& tol) {
  const std::size_t n = m.cols();
  if constexpr (is_exact_v<T>) {
    const auto e = rref(m, tol);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector<T>> vecs;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      Vector<T> v(n);
      v[f] = T(1);
      for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
      vecs.push_back(std::move(v));
    }
    return Subspace<T>::span(n, vecs, tol);
  } else {
    const FloatSvd svd = float_svd(m, tol);
    std::vector<Vector<T>> vecs;
    for (std::size_t k = svd.rank; k < n; ++k) {
      Vector<T> v(n);
      for (std::size_t j = 0; j < n; ++j)
        v[j] = svd.v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      vecs.push_back(std::move(v));
    }
    if (vecs.empty()) return Subspace<T>(n);
    Tolerance loose = tol;
    loose.rank = std::min(tol.rank, 1e-12);
    return Subspace<T>::span_rows(Matrix<T>::from_rows(n, vecs), loose);
  }
}

template <class T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("ambient dimension mismatch");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Subspace<T>::span_rows(vstack(a.basis(), b.basis()), tol);
}

template <class T>
Subspace<T> annihilator(const Subspace<T>& s, const Tolerance& tol) {
  if (s.is_zero()) return Subspace<T>::full(s.ambient_dim());
  return kernel(s.basis(), tol);
}

template <class T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("ambient dimension mismatch");
  return annihilator(sum(annihilator(a, tol), annihilator(b, tol), tol), tol);
}

template <class T>
Subspace<T> image(const Matrix<T>& m, const Subspace<T>& s, const Tolerance& tol) {
  if (m.cols() != s.ambient_dim()) throw InputError("image shape mismatch");
  std::vector<Vector<T>> vecs;
  for (std::size_t i = 0; i < s.dim(); ++i) vecs.push_back(apply(m, s.basis().row(i)));
  return Subspace<T>::span(m.rows(), vecs, tol);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m, const Tolerance& tol) {
  if (!m.is_square()) throw InputError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const auto e = rref(hstack(m, Matrix<T>::identity(n)), tol);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw InputError("matrix is singular");
  return e.reduced.block(0, n, n, n);
}

template <class T>
std::optional<Vector<T>> solve(const Matrix<T>& m, const Vector<T>& b, const Tolerance& tol) {
  if (b.size() != m.rows()) throw InputError("solve shape mismatch");
  const std::size_t n = m.cols();
  const auto e = rref(hstack(m, Matrix<T>::column_vector(b)), tol);
  Vector<T> x(n);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == n) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, n);
  }
  return x;
}

template <class T>
Vector<T> SpanBuilder<T>::residual(std::span<const T> v) const {
  Vector<T> r(v.begin(), v.end());
  if constexpr (is_exact_v<T>) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (r[p].is_zero()) continue;
      const T f = r[p];
      const auto& row = rows_[k];
      for (std::size_t j = p; j < ambient_; ++j)
        if (!row[j].is_zero()) r[j] -= f * row[j];
    }
  } else {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : rows_) {
        T dot{};
        for (std::size_t j = 0; j < ambient_; ++j) dot += std::conj(q[j]) * r[j];
        for (std::size_t j = 0; j < ambient_; ++j) r[j] -= dot * q[j];
      }
    }
  }
  return r;
}

template <class T>
bool SpanBuilder<T>::contains(std::span<const T> v) const {
  if (v.size() != ambient_) throw InputError("span builder length mismatch");
  const Vector<T> r = residual(v);
  if constexpr (is_exact_v<T>) {
    return std::all_of(r.begin(), r.end(), [](const T& x) { return x.is_zero(); });
  } else {
    double nv = 0.0, nr = 0.0;
    for (std::size_t j = 0; j < ambient_; ++j) {
      nv += std::norm(v[j]);
      nr += std::norm(r[j]);
    }
    return std::sqrt(nr) <= tol_.rank * std::max(std::sqrt(nv), 1e-300);
  }
}

template <class T>
bool SpanBuilder<T>::insert(std::span<const T> v) {
  if (v.size() != ambient_) throw InputError("span builder length mismatch");
  if (rows_.size() == ambient_) return false;
  Vector<T> r = residual(v);
  if constexpr (is_exact_v<T>) {
    std::size_t p = 0;
    while (p < ambient_ && r[p].is_zero()) ++p;
    if (p == ambient_) return false;
    const T inv = T(1) / r[p];
    for (std::size_t j = p; j < ambient_; ++j)
      if (!r[j].is_zero()) r[j] *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
  } else {
    double nv = 0.0, nr = 0.0;
    for (std::size_t j = 0; j < ambient_; ++j) {
      nv += std::norm(v[j]);
      nr += std::norm(r[j]);
    }
    nv = std::sqrt(nv);
    nr = std::sqrt(nr);
    if (nv == 0.0 || nr <= tol_.rank * nv) return false;
    for (auto& x : r) x /= nr;
    rows_.push_back(std::move(r));
    pivots_.push_back(0);
  }
  accepted_.emplace_back(v.begin(), v.end());
  return true;
}

template <class T>
Subspace<T> SpanBuilder<T>::subspace() const {
  return Subspace<T>::span(ambient_, rows_, tol_);
}

#define CYCLICA_INSTANTIATE_SUBSPACE(T)                                                       \
  template class Subspace<T>;                                                                  \
  template class SpanBuilder<T>;                                                               \
  template RowEchelon<T> rref(const Matrix<T>&, const Tolerance&);                             \
  template std::size_t rank(const Matrix<T>&, const Tolerance&);                               \
  template Subspace<T> kernel(const Matrix<T>&, const Tolerance&);                             \
  template Subspace<T> sum(const Subspace<T>&, const Subspace<T>&, const Tolerance&);          \
  template Subspace<T> intersect(const Subspace<T>&, const Subspace<T>&, const Tolerance&);    \
  template Subspace<T> annihilator(const Subspace<T>&, const Tolerance&);                      \
  template Subspace<T> image(const Matrix<T>&, const Subspace<T>&, const Tolerance&);          \
  template Matrix<T> inverse(const Matrix<T>&, const Tolerance&);                              \
  template std::optional<Vector<T>> solve(const Matrix<T>&, const Vector<T>&, const Tolerance&);

CYCLICA_INSTANTIATE_SUBSPACE(Exact)
CYCLICA_INSTANTIATE_SUBSPACE(Float)

#undef CYCLICA_INSTANTIATE_SUBSPACE

}  // namespace cyclica
