#include <algorithm>
#include <random>

#include "cyclica/hautus.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyclica;
using namespace testing;

namespace {

const LocusEntry<Exact>* find_entry(const RankDropLocus<Exact>& l, std::vector<long> mu) {
  for (const auto& e : l.entries) {
    if (!e.mu_exact || e.mu_exact->size() != mu.size()) continue;
    bool same = true;
    for (std::size_t j = 0; j < mu.size(); ++j) same = same && (*e.mu_exact)[j] == Exact(mu[j]);
    if (same) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("locus of commuting diagonal pair") {
  const auto l = rank_drop_locus(gens(2, {diag({1, 2}), diag({3, 4})}));
  CHECK(l.entries.size() == 2);
  const auto* a = find_entry(l, {1, 3});
  const auto* b = find_entry(l, {2, 4});
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->dim_p == 1);
  CHECK(a->p_space->basis().row_copy(0) == vec({1, 0}));
  CHECK(b->p_space->basis().row_copy(0) == vec({0, 1}));
  CHECK(l.max_drop == 1);
}

TEST_CASE("locus of the identity") {
  const auto l = rank_drop_locus(gens(3, {Matrix<Exact>::identity(3)}));
  REQUIRE(l.entries.size() == 1);
  CHECK(l.entries[0].dim_p == 3);
  CHECK(l.entries[0].rank == 0);
  CHECK_THROWS_AS(rank_drop_locus(gens(3, {})), InputError);
}

TEST_CASE("hautus necessary condition") {
  const auto g = gens(3, first_row_generators());
  CHECK_FALSE(hautus_necessary(g, 1));
  CHECK(hautus_necessary(g, 2));
  CHECK_THROWS_AS(hautus_necessary(g, 0), InputError);
  const auto ob = rank_drop_obstruction(rank_drop_locus(g), 1);
  REQUIRE(ob);
  CHECK(ob->dim_p == 2);
  CHECK(ob->kind == ObstructionKind::rank_drop);
}

TEST_CASE("locus soundness by direct rank evaluation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const std::size_t m = 1 + rng() % 2;
    std::vector<Matrix<Exact>> g;
    for (std::size_t j = 0; j < m; ++j) {
      // triangular with small diagonal so spectra are rational and shared
      Matrix<Exact> a = random_int(rng, n, n, 1);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) a(r, c) = Exact(0);
      g.push_back(a);
    }
    const auto gs = gens(n, g);
    const auto l = rank_drop_locus(gs);
    for (const auto& e : l.entries) {
      REQUIRE(e.mu_exact);
      CHECK(rank(stacked_block(gs, *e.mu_exact)) == n - e.dim_p);
      CHECK(e.rank == n - e.dim_p);
      CHECK(e.dim_p > 0);
    }
    // triangular generators share the covector e_n^*: the locus is nonempty
    CHECK_FALSE(l.entries.empty());
  }
}

TEST_CASE("irrational eigenvalues fall back to numeric covectors") {
  const auto l = rank_drop_locus(gens(2, {mat({{0, 2}, {1, 0}})}));
  REQUIRE(l.entries.size() == 2);
  for (const auto& e : l.entries) {
    CHECK_FALSE(e.exact());
    CHECK_FALSE(e.p_space);
    CHECK(e.dim_p == 1);
    CHECK(std::abs(std::abs(e.mu[0]) - std::sqrt(2.0)) < 1e-12);
  }
}

TEST_CASE("shifting a generator shifts the locus") {
  const auto a = mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
  const auto b = mat({{0, 0, 0}, {0, 0, 1}, {0, 0, 3}});
  const auto l1 = rank_drop_locus(gens(3, {a, b}));
  const auto shifted = a + Matrix<Exact>::identity(3) * Exact(5);
  const auto l2 = rank_drop_locus(gens(3, {shifted, b}));
  REQUIRE(l1.entries.size() == l2.entries.size());
  for (const auto& e : l1.entries) {
    bool matched = false;
    for (const auto& e2 : l2.entries)
      if ((*e2.mu_exact)[0] == (*e.mu_exact)[0] + Exact(5) && (*e2.mu_exact)[1] == (*e.mu_exact)[1])
        matched = e2.dim_p == e.dim_p;
    CHECK(matched);
  }
  CHECK(l1.max_drop == l2.max_drop);
}

TEST_CASE("lie closure and solvability") {
  const auto upper = gens(3, {mat({{1, 2, 0}, {0, 3, 1}, {0, 0, 1}}), mat({{0, 1, 1}, {0, 2, 0}, {0, 0, 5}})});
  CHECK(is_solvable(lie_closure(upper)));
  const auto sl2 = lie_closure(gens(2, {mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})}));
  CHECK(sl2.dim() == 3);
  CHECK_FALSE(is_solvable(sl2));
  CHECK(sl2.derived_dims.back() == 3);
  CHECK(is_solvable(lie_closure(gens(3, {jordan(3)}))));
  // derived series is non-increasing
  for (std::size_t i = 1; i < sl2.derived_dims.size(); ++i) CHECK(sl2.derived_dims[i] <= sl2.derived_dims[i - 1]);
}

TEST_CASE("hautus verdicts") {
  CHECK(hautus_verdict(gens(2, {diag({1, 2}), diag({3, 4})}), 1) == HautusVerdict::generic_cyclic_subspace);
  CHECK(hautus_verdict(gens(3, first_row_generators()), 1) == HautusVerdict::no_cyclic_subspace);
  CHECK(hautus_verdict(gens(2, {mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})}), 1) ==
        HautusVerdict::necessary_holds_only);
  CHECK(to_string(HautusVerdict::no_cyclic_subspace) == "no_cyclic_subspace");
}

TEST_CASE("float backend locus") {
  const GeneratorSet<Float> g(2, {to_float(diag({1, 2})), to_float(diag({3, 4}))});
  const auto l = rank_drop_locus(g);
  CHECK(l.entries.size() == 2);
  CHECK(l.max_drop == 1);
  CHECK_FALSE(l.degenerate);
}
