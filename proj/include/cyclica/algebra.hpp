#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/matrix.hpp"
#include "cyclica/random.hpp"
#include "cyclica/subspace.hpp"

namespace cyclica {

/// The operators A_1, ..., A_m acting on T^n.
template <class T>
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::size_t n, std::vector<Matrix<T>> gens) : n_(n), gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (g.rows() != n_ || g.cols() != n_) throw InputError("generator is not " + shape());
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const std::vector<Matrix<T>>& generators() const { return gens_; }
  const Matrix<T>& operator[](std::size_t i) const { return gens_[i]; }

  GeneratorSet transposed() const {
    std::vector<Matrix<T>> t;
    for (const auto& g : gens_) t.push_back(g.transpose());
    return {n_, std::move(t)};
  }
  /// { P^-1 A_j P }
  GeneratorSet conjugated(const Matrix<T>& p, const Matrix<T>& p_inv) const {
    std::vector<Matrix<T>> t;
    for (const auto& g : gens_) t.push_back(p_inv * g * p);
    return {n_, std::move(t)};
  }

 private:
  std::string shape() const { return std::to_string(n_) + "x" + std::to_string(n_); }

  std::size_t n_ = 0;
  std::vector<Matrix<T>> gens_;
};

/// Basis of the unital algebra generated by a GeneratorSet.
template <class T>
struct AlgebraBasis {
  std::size_t n = 0;
  std::vector<Matrix<T>> elements;  ///< identity first, then products in discovery order
  Subspace<T> span;                 ///< canonical form inside n^2-space

  std::size_t dim() const { return elements.size(); }
  bool contains(const Matrix<T>& m, const Tolerance& tol = {}) const {
    return span.contains(std::span<const T>(m.vec()), tol);
  }
};

enum class Verdict { cyclic, not_cyclic, undetermined };
std::string to_string(Verdict v);

enum class ObstructionKind {
  annihilating_covector,  ///< a covector vanishing on one specific orbit
  rank_drop,              ///< common eigencovectors at mu: refutes every subspace of dim < dim P
  multiplicity,           ///< completely reducible action with an isotypic class k > d
};
std::string to_string(ObstructionKind k);

template <class T>
struct Obstruction {
  ObstructionKind kind = ObstructionKind::annihilating_covector;
  /// annihilating_covector: p with p . orbit = 0.
  Vector<T> covector;
  /// rank_drop: the tuple mu, the covector space P_mu and the refuted dimension.
  std::vector<Complex> mu;
  std::optional<std::vector<T>> mu_exact;
  std::optional<Subspace<T>> p_space;
  Subspace<Float> p_space_numeric;
  std::size_t dim_p = 0;
  /// multiplicity: the offending class.
  std::size_t block_dim = 0;
  std::size_t class_multiplicity = 0;
  std::string detail;
};

template <class T>
struct Certificate {
  Verdict verdict = Verdict::undetermined;
  std::size_t n = 0;
  /// Dimension of the tested or sought subspace (1 for vectors).
  std::size_t target_dim = 1;
  /// Dimension of the orbit of the witness (or of the tested vector/subspace).
  std::size_t orbit_dim = 0;
  /// Columns span the witness vector or subspace.
  std::optional<Matrix<T>> witness;
  std::optional<Obstruction<T>> obstruction;
  std::size_t trials = 0;
  std::optional<std::size_t> winning_trial;
};

struct SearchOptions {
  std::size_t trials = 64;
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::small_integers;
  Tolerance tol{};
};

/// Supplies a proof that no cyclic subspace of the given dimension exists.
template <class T>
using ObstructionProvider =
    std::function<std::optional<Obstruction<T>>(const GeneratorSet<T>&, std::size_t dim)>;

template <class T>
AlgebraBasis<T> closure(const GeneratorSet<T>& g, const Tolerance& tol = {});

/// Smallest generator-invariant subspace containing `b`.
template <class T>
Subspace<T> orbit(const GeneratorSet<T>& g, const Subspace<T>& b, const Tolerance& tol = {});

template <class T>
Subspace<T> orbit(const GeneratorSet<T>& g, const Vector<T>& v, const Tolerance& tol = {});

template <class T>
Certificate<T> is_cyclic_vector(const GeneratorSet<T>& g, const Vector<T>& v, const Tolerance& tol = {});

template <class T>
Certificate<T> is_cyclic_subspace(const GeneratorSet<T>& g, const Subspace<T>& b,
                                  const Tolerance& tol = {});

/// Burnside: every nonzero vector is cyclic iff the closure is all of L(T^n).
template <class T>
bool is_transitive(const GeneratorSet<T>& g, const Tolerance& tol = {});

/// A single operator has a cyclic vector iff its minimal polynomial has degree n.
bool single_generator_cyclic(const Matrix<Exact>& a);

/// Randomized search for a cyclic vector; sampling failure alone never yields
/// not_cyclic, only a proof from `prove_absent` does.
template <class T>
Certificate<T> find_cyclic_vector(const GeneratorSet<T>& g, const SearchOptions& opts,
                                  const ObstructionProvider<T>& prove_absent = {});

/// Same search over random r-dimensional subspaces.
template <class T>
Certificate<T> find_cyclic_subspace(const GeneratorSet<T>& g, std::size_t r, const SearchOptions& opts,
                                    const ObstructionProvider<T>& prove_absent = {});

extern template AlgebraBasis<Exact> closure(const GeneratorSet<Exact>&, const Tolerance&);
extern template AlgebraBasis<Float> closure(const GeneratorSet<Float>&, const Tolerance&);

}  // namespace cyclica
