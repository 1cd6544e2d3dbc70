#pragma once

// Reference computations written against plain mpq_class matrices. They share
// no code with the library: elimination, word enumeration and Kalman blocks
// are redone here from scratch.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclica/matrix.hpp"

namespace oracle {

using Q = mpq_class;
using Row = std::vector<Q>;
using Mat = std::vector<Row>;  // row-major; rows may be empty

inline Mat from_library(const cyclica::Matrix<cyclica::Exact>& m) {
  Mat out(m.rows(), Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_real()) throw std::logic_error("oracle handles real rationals only");
      out[i][j] = m(i, j).re();
    }
  return out;
}

inline Row from_library(const cyclica::Vector<cyclica::Exact>& v) {
  Row out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_real()) throw std::logic_error("oracle handles real rationals only");
    out[i] = v[i].re();
  }
  return out;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat c(n, Row(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

inline Row mat_vec(const Mat& a, const Row& v) {
  Row out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

inline Mat transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat t(a[0].size(), Row(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Plain Gaussian elimination (no reduction above pivots); returns the rank.
inline std::size_t rank(Mat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of_rows(const std::vector<Row>& rows) { return rank(rows); }

/// Same span (as row spaces).
inline bool same_span(const std::vector<Row>& a, const std::vector<Row>& b) {
  std::vector<Row> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = rank(a), rb = rank(b), rab = rank(both);
  return ra == rab && rb == rab;
}

/// Nullspace basis {x : a x = 0} by back substitution on the echelon form.
inline std::vector<Row> nullspace(Mat a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Q inv = 1 / a[r][c];
    for (std::size_t j = 0; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Row> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row x(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -a[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

/// Vectors w.b for every word w of length 0..max_len in the generators,
/// enumerated level by level without early termination; the level sets are
/// pruned to a spanning subset to keep the enumeration finite in practice.
inline std::vector<Row> word_span(const std::vector<Mat>& gens, const std::vector<Row>& seeds,
                                  std::size_t max_len) {
  std::vector<Row> all = seeds;
  std::vector<Row> level = seeds;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Row> next;
    for (const auto& a : gens)
      for (const auto& v : level) next.push_back(mat_vec(a, v));
    // Keep an independent subset of this level; words of the next length are
    // images of this level, so the span of every length is preserved.
    std::vector<Row> kept;
    for (auto& v : next) {
      kept.push_back(v);
      if (rank(kept) < kept.size()) kept.pop_back();
    }
    level = kept;
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

/// Span of all words (as matrices) of length <= max_len, flattened row-major.
inline std::vector<Row> word_algebra(const std::vector<Mat>& gens, std::size_t n, std::size_t max_len) {
  auto flatten = [n](const Mat& m) {
    Row r;
    r.reserve(n * n);
    for (const auto& row : m) r.insert(r.end(), row.begin(), row.end());
    return r;
  };
  Mat id(n, Row(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::vector<Row> all = {flatten(id)};
  std::vector<Mat> level = {id};
  // A word in the span of words already kept contributes nothing new, and
  // neither do its products, so only fresh words are expanded.
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Mat> next;
    for (const auto& a : gens)
      for (const auto& w : level) {
        Mat p = multiply(a, w);
        all.push_back(flatten(p));
        if (rank(all) < all.size()) {
          all.pop_back();
          continue;
        }
        next.push_back(std::move(p));
      }
    level = std::move(next);
  }
  return all;
}

/// Columns of [B, AB, ..., A^(n-1) B] as rows.
inline std::vector<Row> kalman(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  std::vector<Row> cols = transpose(b);
  std::vector<Row> out = cols;
  for (std::size_t k = 1; k < n; ++k) {
    for (auto& c : cols) c = mat_vec(a, c);
    out.insert(out.end(), cols.begin(), cols.end());
  }
  return out;
}

}  // namespace oracle
