#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cyclica/algebra.hpp"
#include "cyclica/random.hpp"

namespace testing {

using cyclica::Exact;
using cyclica::Float;
using cyclica::GeneratorSet;
using cyclica::Matrix;
using cyclica::Vector;

inline Matrix<Exact> mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Exact>> tmp;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    std::vector<Exact> row;
    for (long x : r) row.emplace_back(x);
    cols = row.size();
    tmp.push_back(std::move(row));
  }
  return Matrix<Exact>::from_rows(cols, tmp);
}

inline Vector<Exact> vec(std::initializer_list<long> xs) {
  Vector<Exact> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Matrix<Exact> diag(std::initializer_list<long> xs) {
  Matrix<Exact> m(xs.size(), xs.size());
  std::size_t i = 0;
  for (long x : xs) {
    m(i, i) = Exact(x);
    ++i;
  }
  return m;
}

/// Nilpotent Jordan block of size n (ones on the superdiagonal).
inline Matrix<Exact> jordan(std::size_t n, long lambda = 0) {
  Matrix<Exact> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Exact(lambda);
    if (i + 1 < n) m(i, i + 1) = Exact(1);
  }
  return m;
}

inline GeneratorSet<Exact> gens(std::size_t n, std::vector<Matrix<Exact>> g) { return {n, std::move(g)}; }

/// Random integer matrix with entries in [-lo, lo].
inline Matrix<Exact> random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo = 3) {
  Matrix<Exact> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = Exact(static_cast<long>(rng() % (2 * lo + 1)) - lo);
  return m;
}

/// Random unimodular-ish invertible integer matrix (product of elementary steps).
inline Matrix<Exact> random_invertible(std::mt19937_64& rng, std::size_t n, int steps = 8) {
  Matrix<Exact> p = Matrix<Exact>::identity(n);
  if (n < 2) return p;
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) j = (j + 1) % n;
    const long f = static_cast<long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) p(i, c) += Exact(f) * p(j, c);
  }
  return p;
}

inline std::vector<Matrix<Exact>> upper_triangular_generators() {
  // Generators of the triangular algebra {a I + b N + c N^2} with N = J_3.
  return {jordan(3)};
}

inline std::vector<Matrix<Exact>> first_row_generators() {
  // E_12 and E_13 generate {a I + b E_12 + c E_13}.
  return {mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), mat({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})};
}

}  // namespace testing
