#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/certify.hpp"

namespace cyclica {

template <class T>
struct Mode {
  Matrix<T> a;
  /// Mode-dependent input matrix; the shared one applies when absent.
  std::optional<Matrix<T>> b;
};

/// x' = A_s x + B_s u with switching signal s.
template <class T>
class SwitchedSystem {
 public:
  SwitchedSystem(std::size_t n, std::vector<Mode<T>> modes, std::optional<Matrix<T>> shared_b = std::nullopt);

  std::size_t n() const { return n_; }
  const std::vector<Mode<T>>& modes() const { return modes_; }
  const std::optional<Matrix<T>>& shared_b() const { return shared_b_; }

  GeneratorSet<T> generators() const;
  /// Sum of the column spaces of every input matrix in use.
  Subspace<T> input_space(const Tolerance& tol = {}) const;

 private:
  std::size_t n_;
  std::vector<Mode<T>> modes_;
  std::optional<Matrix<T>> shared_b_;
};

/// Smallest subspace containing every input space and invariant under every A_i.
template <class T>
Subspace<T> reachable_subspace(const SwitchedSystem<T>& sys, const Tolerance& tol = {});

template <class T>
bool is_globally_reachable(const SwitchedSystem<T>& sys, const Tolerance& tol = {});

template <class T>
struct DesignResult {
  std::size_t lower = 1;
  std::size_t upper = 0;
  /// lower == upper
  bool certified = false;
  /// n x upper input matrix that makes the system globally reachable.
  Matrix<T> witness;
  /// Global reachability re-checked with the witness as shared input matrix.
  bool witness_rechecked = false;
  std::vector<DimensionStep> trail;
  std::string hautus_at_lower;
  bool solvable = false;
};

/// Smallest number of shared inputs that makes the switched system with
/// the given modes globally reachable, with a witness input matrix. A witness
/// made of standard basis vectors is preferred when one exists.
template <class T>
DesignResult<T> design_inputs(const GeneratorSet<T>& modes, const SearchOptions& opts);

}  // namespace cyclica
