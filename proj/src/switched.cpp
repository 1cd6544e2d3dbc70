#include "cyclica/switched.hpp"

namespace cyclica {

template <class T>
SwitchedSystem<T>::SwitchedSystem(std::size_t n, std::vector<Mode<T>> modes, std::optional<Matrix<T>> shared_b)
    : n_(n), modes_(std::move(modes)), shared_b_(std::move(shared_b)) {
  if (modes_.empty()) throw InputError("a switched system needs at least one mode");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    if (m.a.rows() != n_ || m.a.cols() != n_)
      throw InputError("mode " + std::to_string(i) + ": A is not " + std::to_string(n_) + "x" + std::to_string(n_));
    if (m.b && m.b->rows() != n_)
      throw InputError("mode " + std::to_string(i) + ": B must have " + std::to_string(n_) + " rows");
  }
  if (shared_b_ && shared_b_->rows() != n_) throw InputError("B must have " + std::to_string(n_) + " rows");
}

template <class T>
GeneratorSet<T> SwitchedSystem<T>::generators() const {
  std::vector<Matrix<T>> a;
  for (const auto& m : modes_) a.push_back(m.a);
  return {n_, std::move(a)};
}

template <class T>
Subspace<T> SwitchedSystem<T>::input_space(const Tolerance& tol) const {
  std::vector<Vector<T>> cols;
  auto add = [&cols](const Matrix<T>& b) {
    for (auto& c : b.columns()) cols.push_back(std::move(c));
  };
  for (const auto& m : modes_) {
    if (m.b) {
      add(*m.b);
    } else if (shared_b_) {
      add(*shared_b_);
    }
  }
  return Subspace<T>::span(n_, cols, tol);
}

// Words may start in any mode with a zero exponent, so every input space sees
// every word; one orbit of the summed input space covers all of them.
template <class T>
Subspace<T> reachable_subspace(const SwitchedSystem<T>& sys, const Tolerance& tol) {
  return orbit(sys.generators(), sys.input_space(tol), tol);
}

template <class T>
bool is_globally_reachable(const SwitchedSystem<T>& sys, const Tolerance& tol) {
  return reachable_subspace(sys, tol).is_full();
}

namespace {

// First r-subset of standard basis vectors whose span is cyclic, scanning at
// most `budget` subsets in lexicographic order.
template <class T>
std::optional<Matrix<T>> coordinate_witness(const GeneratorSet<T>& g, std::size_t r, std::size_t budget,
                                            const Tolerance& tol) {
  const std::size_t n = g.n();
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (std::size_t seen = 0; seen < budget; ++seen) {
    Matrix<T> b(n, r);
    for (std::size_t c = 0; c < r; ++c) b(idx[c], c) = ScalarTraits<T>::from_int(1);
    if (orbit(g, Subspace<T>::span_columns(b, tol), tol).is_full()) return b;
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t c = k; c < r; ++c) idx[c] = idx[c - 1] + 1;
  }
  return std::nullopt;
}

}  // namespace

template <class T>
DesignResult<T> design_inputs(const GeneratorSet<T>& modes, const SearchOptions& opts) {
  if (modes.empty()) throw InputError("design needs at least one mode");
  const MinimalDimension<T> md = minimal_cyclic_dimension(modes, opts);
  DesignResult<T> out;
  out.lower = md.lower_bound;
  out.upper = md.r;
  out.certified = md.exact;
  out.witness = md.witness;
  if (md.r < modes.n())
    if (auto b = coordinate_witness(modes, md.r, 256, opts.tol)) out.witness = std::move(*b);
  out.trail = md.steps;
  out.solvable = md.solvable;
  out.hautus_at_lower = to_string(hautus_verdict(md.max_drop <= md.lower_bound, md.solvable));

  std::vector<Mode<T>> ms;
  for (const auto& a : modes.generators()) ms.push_back({a, std::nullopt});
  out.witness_rechecked = is_globally_reachable(SwitchedSystem<T>(modes.n(), std::move(ms), md.witness), opts.tol);
  return out;
}

#define CYCLICA_INSTANTIATE_SWITCHED(T)                                                 \
  template class SwitchedSystem<T>;                                                     \
  template Subspace<T> reachable_subspace(const SwitchedSystem<T>&, const Tolerance&); \
  template bool is_globally_reachable(const SwitchedSystem<T>&, const Tolerance&);     \
  template DesignResult<T> design_inputs(const GeneratorSet<T>&, const SearchOptions&);

CYCLICA_INSTANTIATE_SWITCHED(Exact)
CYCLICA_INSTANTIATE_SWITCHED(Float)

#undef CYCLICA_INSTANTIATE_SWITCHED

}  // namespace cyclica
