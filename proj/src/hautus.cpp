#include "cyclica/hautus.hpp"

#include <cmath>
#include <deque>

namespace cyclica {

namespace {

Subspace<Float> numeric_copy(const Subspace<Exact>& s, const Tolerance& tol) {
  return Subspace<Float>::span_rows(to_float(s.basis()), tol);
}
Subspace<Float> numeric_copy(const Subspace<Float>& s, const Tolerance&) { return s; }

template <class T>
Matrix<T> shifted(const Matrix<T>& a, const T& mu) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= mu;
  return out;
}

/// Candidate eigenvalue of one generator.
template <class T>
struct Candidate {
  Complex value;
  std::optional<T> in_field;
};

template <class T>
std::vector<Candidate<T>> candidates(const Matrix<T>& a, const Tolerance& tol, bool& degenerate) {
  const Spectrum spec = eigenvalues(a, tol);
  degenerate = degenerate || spec.degenerate;
  std::vector<Candidate<T>> out;
  for (const auto& ev : spec.values) {
    Candidate<T> c{ev.value, std::nullopt};
    if constexpr (is_exact_v<T>) {
      c.in_field = ev.exact;
    } else {
      c.in_field = ev.value;
    }
    out.push_back(std::move(c));
  }
  return out;
}

template <class T>
struct SearchState {
  std::vector<Complex> mu;
  std::vector<T> mu_field;
  bool in_field = true;
  Subspace<T> p;          // valid while in_field
  Subspace<Float> p_num;  // valid once !in_field
};

template <class T>
class LocusSearch {
 public:
  LocusSearch(const GeneratorSet<T>& g, const Tolerance& tol) : g_(g), tol_(tol) {
    for (std::size_t j = 0; j < g.size(); ++j) cands_.push_back(candidates(g[j], tol, degenerate_));
    for (const auto& a : g.generators()) floats_.push_back(to_float_matrix(a));
  }

  RankDropLocus<T> run() {
    SearchState<T> root;
    root.p = Subspace<T>::full(g_.n());
    visit(0, root);
    RankDropLocus<T> out;
    out.n = g_.n();
    out.degenerate = degenerate_;
    out.entries = std::move(entries_);
    for (const auto& e : out.entries) out.max_drop = std::max(out.max_drop, e.dim_p);
    return out;
  }

 private:
  static Matrix<Float> to_float_matrix(const Matrix<T>& a) {
    if constexpr (is_exact_v<T>) {
      return to_float(a);
    } else {
      return a;
    }
  }

  void visit(std::size_t j, const SearchState<T>& s) {
    if (j == g_.size()) {
      record(s);
      return;
    }
    for (const auto& c : cands_[j]) {
      SearchState<T> next;
      next.mu = s.mu;
      next.mu.push_back(c.value);
      next.mu_field = s.mu_field;
      if (s.in_field && c.in_field) {
        next.mu_field.push_back(*c.in_field);
        // p = x . basis(P); require p (A_j - mu I) = 0.
        const Matrix<T> m = s.p.basis() * shifted(g_[j], *c.in_field);
        const Subspace<T> coeffs = kernel(m.transpose(), tol_);
        if (coeffs.is_zero()) continue;
        next.p = Subspace<T>::span_rows(coeffs.basis() * s.p.basis(), tol_);
      } else {
        next.in_field = false;
        next.p_num = numeric_kernel(next.mu);
        if (next.p_num.is_zero()) continue;
      }
      visit(j + 1, next);
    }
  }

  Subspace<Float> numeric_kernel(const std::vector<Complex>& mu) const {
    const std::size_t n = g_.n();
    Matrix<Float> stacked(n * mu.size(), n);
    for (std::size_t k = 0; k < mu.size(); ++k)
      stacked.set_block(k * n, 0, shifted(floats_[k], mu[k]).transpose());
    return kernel(stacked, tol_);
  }

  void record(const SearchState<T>& s) {
    LocusEntry<T> e;
    e.mu = s.mu;
    if (s.in_field) {
      e.mu_exact = s.mu_field;
      e.p_space = s.p;
      e.p_numeric = numeric_copy(s.p, tol_);
      e.dim_p = s.p.dim();
    } else {
      e.p_numeric = s.p_num;
      e.dim_p = s.p_num.dim();
    }
    e.rank = g_.n() - e.dim_p;
    entries_.push_back(std::move(e));
  }

  const GeneratorSet<T>& g_;
  Tolerance tol_;
  bool degenerate_ = false;
  std::vector<std::vector<Candidate<T>>> cands_;
  std::vector<Matrix<Float>> floats_;
  std::vector<LocusEntry<T>> entries_;
};

template <class T>
void scale_float(Matrix<T>& m) {
  if constexpr (!is_exact_v<T>) {
    const double s = m.max_abs();
    if (s > 0.0) m *= T(1.0 / s);
  } else {
    (void)m;
  }
}

template <class T>
std::vector<Matrix<T>> derived(const std::vector<Matrix<T>>& basis, std::size_t n, const Tolerance& tol) {
  SpanBuilder<T> span(n * n, tol);
  std::vector<Matrix<T>> out;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      Matrix<T> c = commutator(basis[a], basis[b]);
      scale_float(c);
      if (span.insert(c.vec())) out.push_back(std::move(c));
    }
  return out;
}

}  // namespace

template <class T>
const LocusEntry<T>* RankDropLocus<T>::largest() const {
  const LocusEntry<T>* best = nullptr;
  for (const auto& e : entries)
    if (!best || e.dim_p > best->dim_p) best = &e;
  return best;
}

template <class T>
Matrix<T> stacked_block(const GeneratorSet<T>& g, const std::vector<T>& mu) {
  if (mu.size() != g.size()) throw InputError("tuple length does not match generator count");
  const std::size_t n = g.n();
  Matrix<T> out(n, n * g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out.set_block(0, j * n, shifted(g[j], mu[j]));
  return out;
}

template <class T>
RankDropLocus<T> rank_drop_locus(const GeneratorSet<T>& g, const Tolerance& tol) {
  if (g.empty()) throw InputError("rank-drop locus needs at least one generator");
  return LocusSearch<T>(g, tol).run();
}

template <class T>
bool hautus_necessary(const RankDropLocus<T>& locus, std::size_t r) {
  if (r < 1 || r > locus.n) throw InputError("r must satisfy 1 <= r <= n");
  return locus.max_drop <= r;
}

template <class T>
bool hautus_necessary(const GeneratorSet<T>& g, std::size_t r, const Tolerance& tol) {
  return hautus_necessary(rank_drop_locus(g, tol), r);
}

template <class T>
std::optional<Obstruction<T>> rank_drop_obstruction(const RankDropLocus<T>& locus, std::size_t r) {
  const LocusEntry<T>* e = locus.largest();
  if (!e || e->dim_p <= r) return std::nullopt;
  Obstruction<T> ob;
  ob.kind = ObstructionKind::rank_drop;
  ob.mu = e->mu;
  ob.mu_exact = e->mu_exact;
  ob.p_space = e->p_space;
  ob.p_space_numeric = e->p_numeric;
  ob.dim_p = e->dim_p;
  if (e->p_space) ob.covector = e->p_space->basis().row_copy(0);
  ob.detail = "common eigencovector space of dimension " + std::to_string(e->dim_p) +
              " refutes every cyclic subspace of dimension below it";
  return ob;
}

template <class T>
LieClosure<T> lie_closure(const GeneratorSet<T>& g, const Tolerance& tol) {
  const std::size_t n = g.n();
  LieClosure<T> out;
  out.n = n;
  SpanBuilder<T> span(n * n, tol);
  std::deque<Matrix<T>> queue;
  for (const auto& a : g.generators()) {
    Matrix<T> x = a;
    scale_float(x);
    if (span.insert(x.vec())) {
      out.basis.push_back(x);
      queue.push_back(std::move(x));
    }
  }
  while (!queue.empty()) {
    const Matrix<T> x = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : g.generators()) {
      Matrix<T> y = commutator(a, x);
      scale_float(y);
      if (!span.insert(y.vec())) continue;
      out.basis.push_back(y);
      queue.push_back(std::move(y));
    }
  }
  out.derived_dims.push_back(out.basis.size());
  std::vector<Matrix<T>> current = out.basis;
  while (!current.empty()) {
    std::vector<Matrix<T>> next = derived(current, n, tol);
    out.derived_dims.push_back(next.size());
    if (next.size() == current.size()) break;
    current = std::move(next);
  }
  return out;
}

template <class T>
bool is_solvable(const LieClosure<T>& l) {
  return l.derived_dims.empty() || l.derived_dims.back() == 0;
}

std::string to_string(HautusVerdict v) {
  switch (v) {
    case HautusVerdict::no_cyclic_subspace:
      return "no_cyclic_subspace";
    case HautusVerdict::generic_cyclic_subspace:
      return "generic_cyclic_subspace";
    case HautusVerdict::necessary_holds_only:
      return "necessary_holds_only";
  }
  return "necessary_holds_only";
}

HautusVerdict hautus_verdict(bool necessary, bool solvable) {
  if (!necessary) return HautusVerdict::no_cyclic_subspace;
  return solvable ? HautusVerdict::generic_cyclic_subspace : HautusVerdict::necessary_holds_only;
}

template <class T>
HautusVerdict hautus_verdict(const GeneratorSet<T>& g, std::size_t r, const Tolerance& tol) {
  const bool necessary = hautus_necessary(g, r, tol);
  if (!necessary) return HautusVerdict::no_cyclic_subspace;
  return hautus_verdict(true, is_solvable(lie_closure(g, tol)));
}

#define CYCLICA_INSTANTIATE_HAUTUS(T)                                                          \
  template struct RankDropLocus<T>;                                                            \
  template Matrix<T> stacked_block(const GeneratorSet<T>&, const std::vector<T>&);           \
  template RankDropLocus<T> rank_drop_locus(const GeneratorSet<T>&, const Tolerance&);         \
  template bool hautus_necessary(const RankDropLocus<T>&, std::size_t);                        \
  template bool hautus_necessary(const GeneratorSet<T>&, std::size_t, const Tolerance&);       \
  template std::optional<Obstruction<T>> rank_drop_obstruction(const RankDropLocus<T>&,        \
                                                               std::size_t);                   \
  template LieClosure<T> lie_closure(const GeneratorSet<T>&, const Tolerance&);                \
  template bool is_solvable(const LieClosure<T>&);                                             \
  template HautusVerdict hautus_verdict(const GeneratorSet<T>&, std::size_t, const Tolerance&);

CYCLICA_INSTANTIATE_HAUTUS(Exact)
CYCLICA_INSTANTIATE_HAUTUS(Float)

#undef CYCLICA_INSTANTIATE_HAUTUS

}  // namespace cyclica
