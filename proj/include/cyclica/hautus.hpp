#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/algebra.hpp"
#include "cyclica/polynomial.hpp"

namespace cyclica {

/// One tuple mu with a nonzero common eigencovector space
/// P_mu = { p : p (A_j - mu_j I) = 0 for all j }.
template <class T>
struct LocusEntry {
  std::vector<Complex> mu;
  /// Present when every mu_j lies in the scalar field of T.
  std::optional<std::vector<T>> mu_exact;
  /// P_mu in the backend field; absent when some mu_j is irrational (exact input).
  std::optional<Subspace<T>> p_space;
  /// P_mu numerically; always filled.
  Subspace<Float> p_numeric;
  std::size_t dim_p = 0;
  /// rank [A_1 - mu_1 I | ... | A_m - mu_m I] = n - dim_p
  std::size_t rank = 0;

  bool exact() const { return p_space.has_value() && is_exact_v<T>; }
};

template <class T>
struct RankDropLocus {
  std::size_t n = 0;
  std::vector<LocusEntry<T>> entries;
  std::size_t max_drop = 0;
  /// Some generator spectrum had clusters too close to separate reliably.
  bool degenerate = false;

  const LocusEntry<T>* largest() const;
};

/// Stacked block [A_1 - mu_1 I | ... | A_m - mu_m I] (n x nm).
template <class T>
Matrix<T> stacked_block(const GeneratorSet<T>& g, const std::vector<T>& mu);

template <class T>
RankDropLocus<T> rank_drop_locus(const GeneratorSet<T>& g, const Tolerance& tol = {});

/// False refutes every cyclic subspace of dimension r.
template <class T>
bool hautus_necessary(const RankDropLocus<T>& locus, std::size_t r);
template <class T>
bool hautus_necessary(const GeneratorSet<T>& g, std::size_t r, const Tolerance& tol = {});

/// A rank_drop obstruction refuting dimension r, if the locus provides one.
template <class T>
std::optional<Obstruction<T>> rank_drop_obstruction(const RankDropLocus<T>& locus, std::size_t r);

template <class T>
struct LieClosure {
  std::size_t n = 0;
  std::vector<Matrix<T>> basis;
  /// dim L, dim L', dim L'', ... until zero or stable.
  std::vector<std::size_t> derived_dims;

  std::size_t dim() const { return basis.size(); }
};

/// Lie algebra generated by the A_j under the commutator (identity not adjoined).
template <class T>
LieClosure<T> lie_closure(const GeneratorSet<T>& g, const Tolerance& tol = {});

template <class T>
bool is_solvable(const LieClosure<T>& l);

enum class HautusVerdict { no_cyclic_subspace, generic_cyclic_subspace, necessary_holds_only };
std::string to_string(HautusVerdict v);

HautusVerdict hautus_verdict(bool necessary, bool solvable);

template <class T>
HautusVerdict hautus_verdict(const GeneratorSet<T>& g, std::size_t r, const Tolerance& tol = {});

}  // namespace cyclica
