#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclica/certify.hpp"
#include "cyclica/decomp.hpp"
#include "cyclica/hautus.hpp"
#include "cyclica/polynomial.hpp"

namespace cyclica::mrb {

/// Principal moments 0 < C_1 < ... < C_n.
class InertiaSpec {
 public:
  explicit InertiaSpec(std::vector<Rational> c);

  std::size_t n() const { return c_.size(); }
  const std::vector<Rational>& moments() const { return c_; }
  /// C_j for 1-based j.
  const Rational& operator()(std::size_t j) const { return c_.at(j - 1); }

 private:
  std::vector<Rational> c_;
};

/// Principal axis S^{ij} = 1_{ij} - 1_{ji}, 1-based, i != j.
struct Axis {
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Lexicographic basis S^{12}, S^{13}, ..., S^{(n-1)n} of so(n).
class SoBasis {
 public:
  explicit SoBasis(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return n_ * (n_ - 1) / 2; }
  /// 0-based coordinate of S^{ij} for i < j (1-based indices).
  std::size_t index(std::size_t i, std::size_t j) const;
  /// The pair (i, j), i < j, at a 0-based coordinate.
  Axis pair(std::size_t k) const;
  /// Coordinates of S^{ij}; S^{ji} = -S^{ij}.
  Vector<Exact> coords(const Axis& a) const;

  Matrix<Exact> to_matrix(const Vector<Exact>& coords) const;
  /// Throws InputError when `m` is not skew-symmetric.
  Vector<Exact> from_matrix(const Matrix<Exact>& m) const;

 private:
  void check(const Axis& a) const;
  std::size_t n_;
};

/// c_jk = (C_k - C_j) / (C_j + C_k) for 1-based j != k.
Rational coupling(const InertiaSpec& c, std::size_t j, std::size_t k);

/// E from the multiplication table: disjoint pairs give 0 and
/// E(S^{ij}, S^{ik}) = c_jk S^{jk}, extended bilinearly.
Vector<Exact> bilinear_E(const InertiaSpec& c, const Vector<Exact>& x, const Vector<Exact>& y);

/// 1/2 I_C^{-1} [C, X Y + Y X] by matrix arithmetic. The table equals twice this.
Vector<Exact> bilinear_E_direct(const InertiaSpec& c, const Vector<Exact>& x, const Vector<Exact>& y);

/// E(b, b) lies in `controls`.
bool extension_admissible(const InertiaSpec& c, const Vector<Exact>& b_hat, const Subspace<Exact>& controls);

enum class Convention {
  /// Customary sign pattern for these matrices: a column whose basis element
  /// precedes the axis carries the opposite sign.
  displayed,
  /// Column at S^{hk} is E(S^{ij}, S^{hk}) exactly.
  table,
};
std::string to_string(Convention c);

Matrix<Exact> lambda_operator(const InertiaSpec& c, const Axis& axis, Convention conv = Convention::displayed);

struct PerturbationCoefficients {
  Rational p0, p1, p2, p3, p4;
  Rational coeff5;
  Rational delta() const { return p1 * p1 - 4 * p2 * p0; }
};

struct Perturbation {
  Rational epsilon;
  Matrix<Exact> lambda;
  Polynomial<Exact> char_poly;
  Spectrum spectrum;
  /// Smallest distance between two eigenvalues (numeric).
  double min_gap = 0.0;
  /// Absent at epsilon = 0, where the extraction divides by zero.
  std::optional<PerturbationCoefficients> coefficients;

  /// Throws InputError at epsilon = 0.
  Rational delta() const;
};

/// Lambda^a + Lambda^b + eps Lambda^a Lambda^b, its characteristic polynomial
/// zeta^6 + p4 zeta^4 - eps p3 zeta^3 + p2 zeta^2 - eps p1 zeta + eps^2 p0,
/// and the extracted coefficients.
Perturbation perturbed_operator(const InertiaSpec& c, const Axis& a, const Axis& b, const Rational& eps,
                                Convention conv = Convention::displayed);

struct PerturbationConsistency {
  Perturbation first;
  Perturbation second;
  /// max_i |p_i(eps1) - p_i(eps2)| / max(|p_i(eps1)|, |p_i(eps2)|, tiny)
  double max_relative_difference = 0.0;
  /// The zeta^5 coefficient is nonzero for one of the two values.
  bool structural_warning = false;
};

PerturbationConsistency perturbation_consistency(const InertiaSpec& c, const Axis& a, const Axis& b,
                                                 const Rational& eps1, const Rational& eps2,
                                                 Convention conv = Convention::displayed);

struct MrbSystem {
  InertiaSpec inertia;
  std::vector<Axis> axes;
  std::vector<Vector<Exact>> extra_controls;
  std::optional<Matrix<Exact>> damping;
  bool include_damping = false;
  Convention convention = Convention::displayed;
};

struct MrbReport {
  std::size_t dim = 0;
  std::vector<Matrix<Exact>> generators;
  /// Span of axes and extra controls.
  Subspace<Exact> controls;
  bool controls_span_everything = false;
  bool controls_cyclic = false;

  RankDropLocus<Exact> locus;
  bool solvable = false;
  HautusVerdict hautus = HautusVerdict::necessary_holds_only;

  /// Decomposition summary; numeric when the exact splitter needed an extension field.
  std::optional<std::vector<std::size_t>> block_dims;
  std::vector<std::pair<std::size_t, std::size_t>> classes;  ///< (d, multiplicity)
  std::optional<bool> theorem_condition;
  bool decomposition_numeric = false;
  std::string decomposition_note;

  Certificate<Exact> cyclic_vector;
  MinimalDimension<Exact> minimal;

  std::optional<PerturbationConsistency> perturbation;
  bool non_generic_inertia = false;

  std::string verdict;
};

MrbReport analyze(const MrbSystem& sys, const SearchOptions& opts);

}  // namespace cyclica::mrb
