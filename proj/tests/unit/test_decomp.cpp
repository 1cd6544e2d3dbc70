#include <algorithm>
#include <random>

#include "cyclica/certify.hpp"
#include "cyclica/decomp.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cyclica;
using namespace testing;

namespace {

bool block_upper_triangular(const BlockTriangularForm<Exact>& btf) {
  for (const auto& a : btf.transformed.generators())
    for (std::size_t bi = 0; bi < btf.blocks(); ++bi)
      for (std::size_t bj = 0; bj < bi; ++bj) {
        const auto blk = a.block(btf.offset(bi), btf.offset(bj), btf.block_dims[bi], btf.block_dims[bj]);
        if (!blk.is_zero()) return false;
      }
  return true;
}

/// Irreducible pair on Q^2 (closure of dimension 4).
std::vector<Matrix<Exact>> irreducible2() { return {mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})}; }

GeneratorSet<Exact> direct_sum(const std::vector<GeneratorSet<Exact>>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.n();
  const std::size_t m = parts.front().size();
  std::vector<Matrix<Exact>> out(m, Matrix<Exact>(n, n));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < m; ++j) out[j].set_block(off, off, p[j]);
    off += p.n();
  }
  return {n, std::move(out)};
}

}  // namespace

TEST_CASE("invariant subspaces") {
  const auto j = gens(3, {jordan(3)});
  const auto w = find_invariant_subspace(j);
  REQUIRE(w);
  CHECK(!w->is_zero());
  CHECK(!w->is_full());
  for (const auto& v : w->basis_vectors()) CHECK(w->contains(std::span<const Exact>(cyclica::apply(jordan(3), v))));
  CHECK_FALSE(find_invariant_subspace(gens(2, irreducible2())));
  CHECK_FALSE(find_invariant_subspace(gens(1, {})));
  const auto scalars = find_invariant_subspace(gens(3, {}));
  REQUIRE(scalars);
  CHECK(scalars->dim() >= 1);
}

TEST_CASE("semisimple actions split through the commutant") {
  // diag block of an irreducible pair, twice, conjugated to hide coordinates
  std::mt19937_64 rng(3);
  const auto base = direct_sum({gens(2, irreducible2()), gens(2, irreducible2())});
  const auto p = random_invertible(rng, 4, 12);
  const auto g = base.conjugated(p, inverse(p));
  CHECK(is_semisimple(g));
  const auto w = find_invariant_subspace(g);
  REQUIRE(w);
  CHECK(w->dim() == 2);
  CHECK(commutant(g).size() == 4);
}

TEST_CASE("radical detects non-semisimple algebras") {
  CHECK_FALSE(is_semisimple(gens(3, {jordan(3)})));
  CHECK(radical(closure(gens(3, {jordan(3)}))).size() == 2);
  CHECK(is_semisimple(gens(2, {diag({1, 2})})));
  CHECK(is_semisimple(gens(2, irreducible2())));
}

TEST_CASE("block triangular forms") {
  const auto j = block_triangularize(gens(3, {jordan(3)}));
  CHECK(j.block_dims == std::vector<std::size_t>{1, 1, 1});
  CHECK(block_upper_triangular(j));
  const auto irr = block_triangularize(gens(2, irreducible2()));
  CHECK(irr.block_dims == std::vector<std::size_t>{2});
  const auto d = block_triangularize(gens(2, {diag({1, 2})}));
  CHECK(d.block_dims == std::vector<std::size_t>{1, 1});
  CHECK(d.change_of_basis * d.change_of_basis_inv == Matrix<Exact>::identity(2));
}

TEST_CASE("Jordan-Holder stability and per-block Burnside") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    // block upper-triangular model: irreducible 2-block, 1-block, with random coupling
    Matrix<Exact> a(3, 3), b(3, 3);
    a.set_block(0, 0, irreducible2()[0]);
    b.set_block(0, 0, irreducible2()[1]);
    a(2, 2) = Exact(static_cast<long>(rng() % 3));
    b(2, 2) = Exact(static_cast<long>(rng() % 3));
    a(0, 2) = Exact(static_cast<long>(rng() % 3));
    b(1, 2) = Exact(static_cast<long>(rng() % 3));
    const auto p = random_invertible(rng, 3);
    const auto g = gens(3, {a, b}).conjugated(p, inverse(p));
    SplitOptions s1, s2;
    s1.seed = 1;
    s2.seed = 99;
    const auto f1 = block_triangularize(g, s1);
    const auto f2 = block_triangularize(g, s2);
    auto d1 = f1.block_dims, d2 = f2.block_dims;
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    CHECK(d1 == d2);
    CHECK(d1 == std::vector<std::size_t>{1, 2});
    CHECK(block_upper_triangular(f1));
    for (std::size_t i = 0; i < f1.blocks(); ++i)
      CHECK(closure(f1.diagonal_block(i)).dim() == f1.block_dims[i] * f1.block_dims[i]);
  }
}

TEST_CASE("isotypic classification") {
  const auto two = block_triangularize(direct_sum({gens(2, irreducible2()), gens(2, irreducible2())}));
  const auto s = classify_blocks(two);
  REQUIRE(s.classes.size() == 1);
  CHECK(s.classes[0].multiplicity() == 2);
  CHECK(s.classes[0].d == 2);
  CHECK(theorem_condition(s));

  for (const auto& g : {gens(3, upper_triangular_generators()), gens(3, first_row_generators())}) {
    const auto t = classify_blocks(block_triangularize(g));
    REQUIRE(t.classes.size() == 1);
    CHECK(t.classes[0].multiplicity() == 3);
    CHECK(t.classes[0].d == 1);
    CHECK_FALSE(theorem_condition(t));
  }

  const auto sep = classify_blocks(block_triangularize(gens(2, {diag({1, 2})})));
  CHECK(sep.classes.size() == 2);
}

TEST_CASE("intertwiners identify members generator by generator") {
  std::mt19937_64 rng(8);
  const auto q = random_invertible(rng, 2, 6);
  const auto qi = inverse(q);
  const auto second = gens(2, irreducible2()).conjugated(q, qi);
  const auto btf = block_triangularize(direct_sum({gens(2, irreducible2()), second}));
  const auto s = classify_blocks(btf);
  REQUIRE(s.classes.size() == 1);
  const auto& cls = s.classes[0];
  const auto first = btf.diagonal_block(cls.members[0]);
  for (std::size_t t = 0; t < cls.members.size(); ++t) {
    const auto member = btf.diagonal_block(cls.members[t]);
    const auto& x = cls.intertwiners[t];
    CHECK(rank(x) == 2);
    for (std::size_t j = 0; j < member.size(); ++j) CHECK(x * member[j] == first[j] * x);
  }
}

TEST_CASE("constructed cyclic vectors") {
  const auto g = direct_sum({gens(2, irreducible2()), gens(2, irreducible2())});
  const auto btf = block_triangularize(g);
  const auto s = classify_blocks(btf);
  const auto x = construct_cyclic_vector(g, btf, s);
  CHECK(x.from_construction);
  CHECK(orbit(g, x.vector).is_full());

  const auto single = gens(3, {diag({1, 2, 3})});
  const auto bs = block_triangularize(single);
  CHECK(construct_cyclic_vector(single, bs, classify_blocks(bs)).certificate.verdict == Verdict::cyclic);

  const auto a = gens(3, upper_triangular_generators());
  const auto ba = block_triangularize(a);
  CHECK_THROWS_AS(construct_cyclic_vector(a, ba, classify_blocks(ba)), PreconditionError);
}

TEST_CASE("multiplicity obstruction") {
  const auto g = direct_sum({gens(1, {diag({2})}), gens(1, {diag({2})}), gens(1, {diag({2})})});
  const auto s = classify_blocks(block_triangularize(g));
  CHECK(multiplicity_obstruction(s, true, 1));
  CHECK(multiplicity_obstruction(s, true, 2));
  CHECK_FALSE(multiplicity_obstruction(s, true, 3));
  CHECK_FALSE(multiplicity_obstruction(s, false, 1));
  const auto dec = decide_cyclic_vector(g, {});
  CHECK(dec.verdict == Verdict::not_cyclic);
  CHECK(recheck(g, dec));
}

TEST_CASE("decomposition report") {
  const auto d = decompose(gens(3, {diag({1, 2, 3})}));
  CHECK(d.condition);
  CHECK(d.semisimple);
  REQUIRE(d.witness);
  CHECK(d.witness->certificate.verdict == Verdict::cyclic);
  const auto t = decompose(gens(3, upper_triangular_generators()));
  CHECK_FALSE(t.condition);
  CHECK_FALSE(t.semisimple);
  CHECK_FALSE(t.witness);
}
