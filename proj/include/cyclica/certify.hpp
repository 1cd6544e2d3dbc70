#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/algebra.hpp"
#include "cyclica/decomp.hpp"
#include "cyclica/hautus.hpp"

namespace cyclica {

/// Proofs of non-existence: rank-drop locus first, then the isotypic
/// multiplicity argument when the action is completely reducible.
template <class T>
ObstructionProvider<T> standard_obstructions(const Tolerance& tol = {}, std::uint64_t seed = 0);

/// Sampling plus the standard obstructions.
template <class T>
Certificate<T> decide_cyclic_vector(const GeneratorSet<T>& g, const SearchOptions& opts);

template <class T>
Certificate<T> decide_cyclic_subspace(const GeneratorSet<T>& g, std::size_t r, const SearchOptions& opts);

/// Re-validates a certificate against the generators.
template <class T>
bool recheck(const GeneratorSet<T>& g, const Certificate<T>& cert, const Tolerance& tol = {});

/// How one candidate dimension was settled.
struct DimensionStep {
  std::size_t r = 0;
  std::string criterion;  ///< rank_drop, multiplicity, sampling or full_space
  std::string outcome;    ///< refuted, cyclic or undetermined
};

template <class T>
struct MinimalDimension {
  /// Proven: no cyclic subspace of smaller dimension exists.
  std::size_t lower_bound = 1;
  /// Smallest dimension at which a cyclic subspace was certified.
  std::size_t r = 0;
  Matrix<T> witness;
  std::size_t orbit_dim = 0;
  /// r == lower_bound.
  bool exact = false;
  std::size_t max_drop = 0;
  bool solvable = false;
  bool semisimple = false;
  std::vector<DimensionStep> steps;
};

/// Largest ceil(|J_s| / d_s) when the action is completely reducible, else 0.
template <class T>
std::size_t multiplicity_lower_bound(const GeneratorSet<T>& g, const Tolerance& tol, std::uint64_t seed,
                                     bool& semisimple);

/// Dimensions 1..n in order: proven refutations below the lower bound, then
/// random subspaces until one is certified cyclic (r = n always is).
template <class T>
MinimalDimension<T> minimal_cyclic_dimension(const GeneratorSet<T>& g, const SearchOptions& opts);

}  // namespace cyclica
