#include <random>

#include "cyclica/mrb.hpp"
#include "cyclica/switched.hpp"
#include "doctest.h"
#include "oracles/oracle.hpp"
#include "support.hpp"

using namespace cyclica;
using namespace testing;

namespace {

const mrb::InertiaSpec kC({1, 2, 3, 4});

Matrix<Exact> lambda(std::size_t i, std::size_t j) { return mrb::lambda_operator(kC, {i, j}); }

SwitchedSystem<Exact> shared(std::vector<Matrix<Exact>> as, const Matrix<Exact>& b) {
  std::vector<Mode<Exact>> modes;
  for (auto& a : as) modes.push_back({std::move(a), std::nullopt});
  const std::size_t n = b.rows();
  return SwitchedSystem<Exact>(n, std::move(modes), b);
}

std::vector<oracle::Row> columns_of(const Matrix<Exact>& b) {
  std::vector<oracle::Row> out;
  for (const auto& c : b.columns()) out.push_back(oracle::from_library(c));
  return out;
}

}  // namespace

TEST_CASE("kalman case with a nilpotent block") {
  const auto sys = shared({jordan(3)}, Matrix<Exact>::column_vector(vec({0, 0, 1})));
  CHECK(reachable_subspace(sys).is_full());
  CHECK(is_globally_reachable(sys));
  const auto low = shared({jordan(3)}, Matrix<Exact>::column_vector(vec({0, 1, 0})));
  CHECK(reachable_subspace(low).dim() == 2);
}

TEST_CASE("zero input matrix is never reachable") {
  const auto sys = shared({jordan(3), diag({1, 2, 3})}, Matrix<Exact>(3, 2));
  CHECK(reachable_subspace(sys).dim() == 0);
  CHECK_FALSE(is_globally_reachable(sys));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(SwitchedSystem<Exact>(3, {}), InputError);
  CHECK_THROWS_AS(SwitchedSystem<Exact>(3, {{jordan(2), std::nullopt}}), InputError);
  CHECK_THROWS_AS(SwitchedSystem<Exact>(3, {{jordan(3), Matrix<Exact>(2, 1)}}), InputError);
  CHECK_THROWS_AS(SwitchedSystem<Exact>(3, {{jordan(3), std::nullopt}}, Matrix<Exact>(4, 1)), InputError);
}

TEST_CASE("rigid body modes") {
  std::mt19937_64 rng(5);
  const auto b = random_int(rng, 6, 1, 5);
  CHECK(is_globally_reachable(shared({lambda(1, 2), lambda(2, 3)}, b)));
  for (int t = 0; t < 10; ++t) {
    const auto sys = shared({lambda(1, 2), lambda(3, 4)}, random_int(rng, 6, 1, 5));
    CHECK(reachable_subspace(sys).dim() <= 5);
    CHECK_FALSE(is_globally_reachable(sys));
  }
}

TEST_CASE("reachable subspace is invariant and contains every input space") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 4;
    std::vector<Mode<Exact>> modes;
    for (int m = 0; m < 2; ++m) modes.push_back({random_int(rng, n, n, 2), random_int(rng, n, 1, 1)});
    const SwitchedSystem<Exact> sys(n, modes);
    const auto r = reachable_subspace(sys);
    for (const auto& m : modes) {
      CHECK(r.contains(Subspace<Exact>::span_columns(*m.b)));
      for (const auto& v : r.basis_vectors()) CHECK(r.contains(std::span<const Exact>(cyclica::apply(m.a, v))));
    }
  }
}

TEST_CASE("mode-dependent inputs match word enumeration by first mode") {
  // Words A_{m_k}^{l_k} ... A_{m_1}^{l_1} applied to B_{m_1}: the input space
  // enters only through the first-applied mode.
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<Mode<Exact>> modes;
    for (int m = 0; m < 2; ++m) modes.push_back({random_int(rng, n, n, 2), random_int(rng, n, 1, 2)});
    std::vector<oracle::Mat> as;
    for (const auto& m : modes) as.push_back(oracle::from_library(m.a));
    std::vector<oracle::Row> words;
    for (const auto& m : modes) {
      // A_{m_1}^{l_1} B_{m_1}, then any word of the remaining factors.
      std::vector<oracle::Row> seeds = columns_of(*m.b);
      const auto first = oracle::from_library(m.a);
      std::vector<oracle::Row> powered = seeds;
      for (std::size_t l = 1; l <= n; ++l) {
        for (auto& s : powered) s = oracle::mat_vec(first, s);
        seeds.insert(seeds.end(), powered.begin(), powered.end());
      }
      const auto span = oracle::word_span(as, seeds, n * n);
      words.insert(words.end(), span.begin(), span.end());
    }
    const auto lib = reachable_subspace(SwitchedSystem<Exact>(n, modes));
    std::vector<oracle::Row> lib_rows;
    for (const auto& v : lib.basis_vectors()) lib_rows.push_back(oracle::from_library(v));
    CHECK(oracle::same_span(words, lib_rows));
  }
}

TEST_CASE("single mode reachable subspace equals the kalman span") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t m = 1 + rng() % 2;
    auto a = random_int(rng, n, n, 2);
    if (t % 3 == 0) a = jordan(n, static_cast<long>(rng() % 3));
    const auto b = random_int(rng, n, m, 1);
    const auto r = reachable_subspace(shared({a}, b));
    std::vector<oracle::Row> lib_rows;
    for (const auto& v : r.basis_vectors()) lib_rows.push_back(oracle::from_library(v));
    CHECK(oracle::same_span(oracle::kalman(oracle::from_library(a), oracle::from_library(b)), lib_rows));
  }
}

TEST_CASE("design on a nilpotent block") {
  SearchOptions o;
  const auto d = design_inputs(gens(3, {jordan(3)}), o);
  CHECK(d.upper == 1);
  CHECK(d.lower == 1);
  CHECK(d.certified);
  CHECK(d.witness_rechecked);
  CHECK(d.witness == Matrix<Exact>::column_vector(vec({0, 0, 1})));
}

TEST_CASE("design with a repeated eigenvalue needs two inputs") {
  SearchOptions o;
  o.seed = 3;
  const auto d = design_inputs(gens(3, {diag({1, 1, 2})}), o);
  CHECK(d.lower == 2);
  CHECK(d.upper == 2);
  CHECK(d.certified);
  CHECK(d.witness_rechecked);
  REQUIRE(d.trail.size() >= 2);
  CHECK(d.trail[0].outcome == "refuted");
  CHECK(d.trail[0].criterion == "rank_drop");
}

TEST_CASE("design for the decoupled rigid body pair") {
  SearchOptions o;
  const auto d = design_inputs(gens(6, {lambda(1, 2), lambda(3, 4)}), o);
  CHECK(d.lower == 2);
  CHECK(d.upper == 2);
  CHECK(d.certified);
  CHECK(d.witness.cols() == 2);
  CHECK(d.witness_rechecked);
}

TEST_CASE("commutative instances: lower bound is exact") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const auto p = random_invertible(rng, n);
    const auto p_inv = inverse(p);
    std::vector<Matrix<Exact>> as;
    for (int m = 0; m < 2; ++m) {
      Matrix<Exact> d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = Exact(static_cast<long>(rng() % 2));
      as.push_back(p_inv * d * p);
    }
    SearchOptions o;
    o.seed = t;
    const auto g = gens(n, as);
    const auto d = design_inputs(g, o);
    CHECK(d.upper == std::max<std::size_t>(1, rank_drop_locus(g).max_drop));
    CHECK(d.certified);
    CHECK(d.witness_rechecked);
  }
}
