#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/algebra.hpp"

namespace cyclica {

struct SplitOptions {
  std::uint64_t seed = 0;
  /// Random algebra elements tried before the exhaustive pass.
  std::size_t probes = 20;
  Tolerance tol{};
};

/// All X with X A_j = B_j X for every j (A acting on the source, B on the target).
template <class T>
std::vector<Matrix<T>> intertwiners(const GeneratorSet<T>& source, const GeneratorSet<T>& target,
                                    const Tolerance& tol = {});

/// Basis of the commutant { X : X A_j = A_j X }.
template <class T>
std::vector<Matrix<T>> commutant(const GeneratorSet<T>& g, const Tolerance& tol = {});

/// Basis of the radical: the kernel of the trace form Tr(XY) on the closure.
template <class T>
std::vector<Matrix<T>> radical(const AlgebraBasis<T>& algebra, const Tolerance& tol = {});

/// Completely reducible action (zero radical).
template <class T>
bool is_semisimple(const GeneratorSet<T>& g, const Tolerance& tol = {});

/// A proper nonzero invariant subspace, or none when the closure is all of
/// L(T^n). Throws Inconclusive when the search cannot find one that exists.
template <class T>
std::optional<Subspace<T>> find_invariant_subspace(const GeneratorSet<T>& g, const SplitOptions& opts = {});

template <class T>
struct BlockTriangularForm {
  std::size_t n = 0;
  Matrix<T> change_of_basis;
  Matrix<T> change_of_basis_inv;
  std::vector<std::size_t> block_dims;
  /// P^-1 A_j P, block upper-triangular.
  GeneratorSet<T> transformed;

  std::size_t blocks() const { return block_dims.size(); }
  std::size_t offset(std::size_t i) const;
  /// Diagonal block family of block i.
  GeneratorSet<T> diagonal_block(std::size_t i) const;
};

template <class T>
BlockTriangularForm<T> block_triangularize(const GeneratorSet<T>& g, const SplitOptions& opts = {});

template <class T>
struct IsotypicClass {
  std::vector<std::size_t> members;  ///< block indices, ascending
  std::size_t d = 0;
  /// intertwiners[t] X satisfies X A_(members[t]) = A_(members[0]) X; the first is I.
  std::vector<Matrix<T>> intertwiners;

  std::size_t multiplicity() const { return members.size(); }
};

template <class T>
struct IsotypicSummary {
  std::vector<IsotypicClass<T>> classes;
};

template <class T>
IsotypicSummary<T> classify_blocks(const BlockTriangularForm<T>& btf, const Tolerance& tol = {});

/// d_s >= |J_s| for every class.
template <class T>
bool theorem_condition(const IsotypicSummary<T>& summary);

template <class T>
struct ConstructedVector {
  Vector<T> vector;
  /// False when the construction failed certification and sampling supplied it.
  bool from_construction = true;
  Certificate<T> certificate;
};

/// Cyclic vector assembled class by class from the block form, certified by
/// an orbit computation. Throws PreconditionError when the condition fails.
template <class T>
ConstructedVector<T> construct_cyclic_vector(const GeneratorSet<T>& g, const BlockTriangularForm<T>& btf,
                                             const IsotypicSummary<T>& summary, const SearchOptions& opts = {});

/// For a completely reducible action a class with |J_s| > d_s rules out
/// cyclic subspaces of dimension below ceil(|J_s| / d_s).
template <class T>
std::optional<Obstruction<T>> multiplicity_obstruction(const IsotypicSummary<T>& summary, bool semisimple,
                                                       std::size_t r);

template <class T>
struct Decomposition {
  BlockTriangularForm<T> btf;
  IsotypicSummary<T> summary;
  bool condition = false;
  bool semisimple = false;
  std::optional<ConstructedVector<T>> witness;
};

template <class T>
Decomposition<T> decompose(const GeneratorSet<T>& g, const SplitOptions& split = {},
                           const SearchOptions& search = {});

}  // namespace cyclica
