#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "cyclica/matrix.hpp"

namespace cyclica {

/// Sampling law for random vectors and subspaces.
enum class Sampling {
  small_integers,  ///< entries uniform on [-5, 5]; keeps exact arithmetic exact
  gaussian,        ///< standard normal real entries (float backend)
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th independent stream derived from `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851F42D4C957F2Dull));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, Sampling law = Sampling::small_integers)
      : engine_(seed), law_(law) {}

  long small_integer() { return static_cast<long>(engine_() % 11) - 5; }

  template <class T>
  T scalar() {
    if constexpr (is_exact_v<T>) {
      return T(small_integer());
    } else {
      if (law_ == Sampling::gaussian) return T(normal_(engine_), 0.0);
      return T(static_cast<double>(small_integer()), 0.0);
    }
  }

  template <class T>
  Vector<T> vector(std::size_t n) {
    Vector<T> v(n);
    for (auto& x : v) x = scalar<T>();
    return v;
  }

  template <class T>
  Matrix<T> matrix(std::size_t rows, std::size_t cols) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar<T>();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  Sampling law_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Runs `trial(i)` for i = 0..count-1 in parallel batches and returns the
/// result of the lowest index that produced a value. The answer does not
/// depend on scheduling.
template <class R, class Fn>
std::optional<std::pair<std::size_t, R>> first_success(std::size_t count, Fn&& trial) {
  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < count; start += workers) {
    const std::size_t end = std::min(count, start + workers);
    if (end - start == 1) {
      if (auto r = trial(start)) return std::make_pair(start, std::move(*r));
      continue;
    }
    std::vector<std::future<std::optional<R>>> batch;
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&trial, i] { return trial(i); }));
    std::optional<std::pair<std::size_t, R>> best;
    for (std::size_t i = start; i < end; ++i) {
      auto r = batch[i - start].get();
      if (r && !best) best = std::make_pair(i, std::move(*r));
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace cyclica
