#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cyclica/matrix.hpp"

namespace cyclica {

/// Subspace of T^n stored by a canonical row basis: reduced row echelon form
/// with unit pivots. Two subspaces are equal iff their canonical bases are.
template <class T>
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of T^n.
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace full(std::size_t ambient);
  /// Span of the rows of `rows`.
  static Subspace span_rows(const Matrix<T>& rows, const Tolerance& tol = {});
  /// Span of the columns of `cols`.
  static Subspace span_columns(const Matrix<T>& cols, const Tolerance& tol = {});
  static Subspace span(std::size_t ambient, const std::vector<Vector<T>>& vectors,
                       const Tolerance& tol = {});

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Canonical basis; one row per basis vector.
  const Matrix<T>& basis() const { return basis_; }
  std::vector<Vector<T>> basis_vectors() const { return basis_.row_list(); }
  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix<T> as_columns() const { return basis_.transpose(); }

  bool contains(std::span<const T> v, const Tolerance& tol = {}) const;
  bool contains(const Subspace& other, const Tolerance& tol = {}) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(std::size_t ambient, Matrix<T> canonical) : ambient_(ambient), basis_(std::move(canonical)) {}

  std::size_t ambient_ = 0;
  Matrix<T> basis_;
};

/// Result of Gauss-Jordan elimination.
template <class T>
struct RowEchelon {
  Matrix<T> reduced;               ///< nonzero rows only, unit pivots
  std::vector<std::size_t> pivots;  ///< pivot column of each row
};

/// Reduced row echelon form. Floats pivot by maximal magnitude with a threshold
/// relative to the largest entry.
template <class T>
RowEchelon<T> rref(const Matrix<T>& m, const Tolerance& tol = {});

/// Row rank. Floats count singular values above tol.rank * sigma_max.
template <class T>
std::size_t rank(const Matrix<T>& m, const Tolerance& tol = {});

/// Right kernel {v : M v = 0}.
template <class T>
Subspace<T> kernel(const Matrix<T>& m, const Tolerance& tol = {});

template <class T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b, const Tolerance& tol = {});

template <class T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b, const Tolerance& tol = {});

/// {p : p . v = 0 for all v in S}, covectors written as rows.
template <class T>
Subspace<T> annihilator(const Subspace<T>& s, const Tolerance& tol = {});

/// Image of a subspace under a linear map.
template <class T>
Subspace<T> image(const Matrix<T>& m, const Subspace<T>& s, const Tolerance& tol = {});

/// Inverse of a square matrix; throws InputError when singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m, const Tolerance& tol = {});

/// Some x with M x = b, if one exists.
template <class T>
std::optional<Vector<T>> solve(const Matrix<T>& m, const Vector<T>& b, const Tolerance& tol = {});

/// Incremental span used by closure and orbit computations.
/// Exact backend keeps a reduced echelon set; float backend an orthonormal set.
template <class T>
class SpanBuilder {
 public:
  SpanBuilder(std::size_t ambient, Tolerance tol = {}) : ambient_(ambient), tol_(tol) {}

  /// Adds `v`; returns true iff the span grew.
  bool insert(std::span<const T> v);
  bool insert(const Vector<T>& v) { return insert(std::span<const T>(v)); }
  bool contains(std::span<const T> v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  /// The inserted vectors that enlarged the span, in insertion order.
  const std::vector<Vector<T>>& accepted() const { return accepted_; }
  Subspace<T> subspace() const;

 private:
  Vector<T> residual(std::span<const T> v) const;

  std::size_t ambient_;
  Tolerance tol_;
  std::vector<Vector<T>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<T>> accepted_;
};

extern template class Subspace<Exact>;
extern template class Subspace<Float>;
extern template class SpanBuilder<Exact>;
extern template class SpanBuilder<Float>;

}  // namespace cyclica
