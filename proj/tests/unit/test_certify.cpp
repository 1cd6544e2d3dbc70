#include <random>

#include "cyclica/certify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyclica;
using namespace testing;

namespace {

// diag(X, X, X) for X in {E_12, E_21}: three copies of the irreducible L(C^2).
GeneratorSet<Exact> three_copies() {
  const auto e12 = mat({{0, 1}, {0, 0}});
  const auto e21 = mat({{0, 0}, {1, 0}});
  std::vector<Matrix<Exact>> g;
  for (const auto& x : {e12, e21}) {
    Matrix<Exact> m(6, 6);
    for (std::size_t b = 0; b < 3; ++b) m.set_block(2 * b, 2 * b, x);
    g.push_back(m);
  }
  return gens(6, g);
}

}  // namespace

TEST_CASE("first-row algebra is refuted by the rank-drop locus") {
  const auto g = gens(3, first_row_generators());
  const auto cert = decide_cyclic_vector(g, {});
  CHECK(cert.verdict == Verdict::not_cyclic);
  REQUIRE(cert.obstruction);
  CHECK(cert.obstruction->kind == ObstructionKind::rank_drop);
  CHECK(cert.obstruction->dim_p == 2);
  CHECK(recheck(g, cert));
  CHECK(cert.trials == 64);
}

TEST_CASE("triangular algebra certifies a cyclic vector") {
  const auto g = gens(3, upper_triangular_generators());
  const auto cert = decide_cyclic_vector(g, {});
  CHECK(cert.verdict == Verdict::cyclic);
  CHECK(cert.orbit_dim == 3);
  CHECK(recheck(g, cert));
}

TEST_CASE("tampered certificates fail recheck") {
  const auto g = gens(3, upper_triangular_generators());
  auto cert = decide_cyclic_vector(g, {});
  REQUIRE(cert.verdict == Verdict::cyclic);
  cert.witness = Matrix<Exact>::column_vector(vec({1, 0, 0}));
  CHECK_FALSE(recheck(g, cert));

  const auto f = gens(3, first_row_generators());
  auto neg = decide_cyclic_vector(f, {});
  REQUIRE(neg.obstruction);
  neg.obstruction->mu_exact = std::vector<Exact>{Exact(1), Exact(0)};
  CHECK_FALSE(recheck(f, neg));

  auto cov = is_cyclic_vector(f, vec({1, 1, 1}));
  REQUIRE(cov.verdict == Verdict::not_cyclic);
  CHECK(recheck(f, cov));
  cov.obstruction->covector = vec({1, 0, 0});
  CHECK_FALSE(recheck(f, cov));
}

TEST_CASE("multiplicity obstruction on repeated irreducible blocks") {
  const auto g = three_copies();
  CHECK(rank_drop_locus(g).max_drop == 0);
  bool semisimple = false;
  CHECK(multiplicity_lower_bound(g, {}, 0, semisimple) == 2);
  CHECK(semisimple);

  const auto cert = decide_cyclic_vector(g, {});
  CHECK(cert.verdict == Verdict::not_cyclic);
  REQUIRE(cert.obstruction);
  CHECK(cert.obstruction->kind == ObstructionKind::multiplicity);
  CHECK(cert.obstruction->block_dim == 2);
  CHECK(cert.obstruction->class_multiplicity == 3);
  CHECK(recheck(g, cert));

  CHECK(decide_cyclic_subspace(g, 2, {}).verdict == Verdict::cyclic);
}

TEST_CASE("minimal dimension trail") {
  const auto md = minimal_cyclic_dimension(three_copies(), {});
  CHECK(md.lower_bound == 2);
  CHECK(md.r == 2);
  CHECK(md.exact);
  CHECK(md.semisimple);
  REQUIRE(md.steps.size() == 2);
  CHECK(md.steps[0].criterion == "multiplicity");
  CHECK(md.steps[0].outcome == "refuted");
  CHECK(md.steps[1].criterion == "sampling");
  CHECK(md.steps[1].outcome == "cyclic");
  CHECK(orbit(three_copies(), Subspace<Exact>::span_columns(md.witness)).is_full());
}

TEST_CASE("no generators: the unital algebra is the scalars") {
  const auto g = gens(3, {});
  const auto md = minimal_cyclic_dimension(g, {});
  CHECK(md.lower_bound == 3);
  CHECK(md.r == 3);
  CHECK(md.exact);
  CHECK(decide_cyclic_vector(g, {}).verdict == Verdict::not_cyclic);
}

TEST_CASE("n = 1: every nonzero vector is cyclic") {
  const auto g = gens(1, {mat({{5}})});
  CHECK(is_cyclic_vector(g, vec({2})).verdict == Verdict::cyclic);
  CHECK(is_cyclic_vector(g, vec({0})).verdict == Verdict::not_cyclic);
  CHECK(minimal_cyclic_dimension(g, {}).r == 1);
}

TEST_CASE("float backend agrees on the first-row algebra") {
  std::vector<Matrix<Float>> fg;
  for (const auto& m : first_row_generators()) fg.push_back(to_float(m));
  const GeneratorSet<Float> g(3, fg);
  const auto cert = decide_cyclic_vector(g, {});
  CHECK(cert.verdict == Verdict::not_cyclic);
  CHECK(recheck(g, cert));
  const auto md = minimal_cyclic_dimension(g, {});
  CHECK(md.r == 2);
  CHECK(md.exact);
}

TEST_CASE("certificate soundness on random instances") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<Matrix<Exact>> as;
    const std::size_t m = 1 + rng() % 2;
    for (std::size_t j = 0; j < m; ++j) {
      auto a = random_int(rng, n, n, 1);
      // Keep some instances reducible.
      if (t % 2 == 0)
        for (std::size_t i = 1; i < n; ++i) a(i, 0) = Exact(0);
      as.push_back(a);
    }
    const auto g = gens(n, as);
    SearchOptions o;
    o.seed = t;
    for (std::size_t r = 1; r <= n; ++r) {
      const auto cert = decide_cyclic_subspace(g, r, o);
      CHECK(recheck(g, cert));
      if (cert.verdict == Verdict::cyclic) CHECK(hautus_necessary(g, r));
    }
  }
}
