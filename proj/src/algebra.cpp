#include "cyclica/algebra.hpp"

#include <cmath>
#include <deque>

#include "cyclica/polynomial.hpp"

namespace cyclica {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::cyclic:
      return "cyclic";
    case Verdict::not_cyclic:
      return "not_cyclic";
    case Verdict::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::annihilating_covector:
      return "annihilating_covector";
    case ObstructionKind::rank_drop:
      return "rank_drop";
    case ObstructionKind::multiplicity:
      return "multiplicity";
  }
  return "annihilating_covector";
}

namespace {

template <class T>
void normalize_float(Vector<T>& v) {
  if constexpr (!is_exact_v<T>) {
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (auto& x : v) x /= norm;
  } else {
    (void)v;
  }
}

template <class T>
Certificate<T> certify_orbit(const GeneratorSet<T>& g, Matrix<T> witness, const Subspace<T>& orb,
                             const Tolerance& tol) {
  Certificate<T> cert;
  cert.n = g.n();
  cert.target_dim = witness.cols();
  cert.orbit_dim = orb.dim();
  cert.witness = std::move(witness);
  if (orb.is_full()) {
    cert.verdict = Verdict::cyclic;
    return cert;
  }
  cert.verdict = Verdict::not_cyclic;
  Obstruction<T> ob;
  ob.kind = ObstructionKind::annihilating_covector;
  ob.covector = annihilator(orb, tol).basis().row_copy(0);
  ob.detail = "covector vanishes on the orbit of the tested subspace";
  cert.obstruction = std::move(ob);
  return cert;
}

}  // namespace

template <class T>
AlgebraBasis<T> closure(const GeneratorSet<T>& g, const Tolerance& tol) {
  const std::size_t n = g.n();
  SpanBuilder<T> span(n * n, tol);
  AlgebraBasis<T> out;
  out.n = n;
  std::deque<Matrix<T>> queue;
  const Matrix<T> id = Matrix<T>::identity(n);
  span.insert(id.vec());
  out.elements.push_back(id);
  queue.push_back(id);
  while (!queue.empty() && span.dim() < n * n) {
    const Matrix<T> x = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : g.generators()) {
      Matrix<T> y = a * x;
      if constexpr (!is_exact_v<T>) {
        const double s = y.max_abs();
        if (s > 0.0) y *= T(1.0 / s);
      }
      if (!span.insert(y.vec())) continue;
      out.elements.push_back(y);
      queue.push_back(std::move(y));
      if (span.dim() == n * n) break;
    }
  }
  out.span = span.subspace();
  return out;
}

template <class T>
Subspace<T> orbit(const GeneratorSet<T>& g, const Subspace<T>& b, const Tolerance& tol) {
  if (b.ambient_dim() != g.n()) throw InputError("subspace ambient dimension does not match generators");
  const std::size_t n = g.n();
  SpanBuilder<T> span(n, tol);
  std::deque<Vector<T>> queue;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    Vector<T> v = b.basis().row_copy(i);
    if (span.insert(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty() && span.dim() < n) {
    const Vector<T> v = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : g.generators()) {
      Vector<T> w = cyclica::apply(a, v);
      normalize_float(w);
      if (span.insert(w)) queue.push_back(std::move(w));
      if (span.dim() == n) break;
    }
  }
  return span.subspace();
}

template <class T>
Subspace<T> orbit(const GeneratorSet<T>& g, const Vector<T>& v, const Tolerance& tol) {
  if (v.size() != g.n()) throw InputError("vector length does not match generators");
  return orbit(g, Subspace<T>::span(g.n(), {v}, tol), tol);
}

template <class T>
Certificate<T> is_cyclic_vector(const GeneratorSet<T>& g, const Vector<T>& v, const Tolerance& tol) {
  return certify_orbit(g, Matrix<T>::column_vector(v), orbit(g, v, tol), tol);
}

template <class T>
Certificate<T> is_cyclic_subspace(const GeneratorSet<T>& g, const Subspace<T>& b, const Tolerance& tol) {
  return certify_orbit(g, b.as_columns(), orbit(g, b, tol), tol);
}

template <class T>
bool is_transitive(const GeneratorSet<T>& g, const Tolerance& tol) {
  const std::size_t n = g.n();
  if (n <= 1) return n == 1;
  return closure(g, tol).dim() == n * n;
}

bool single_generator_cyclic(const Matrix<Exact>& a) {
  if (!a.is_square()) throw InputError("single_generator_cyclic needs a square matrix");
  return min_poly(a).degree() == static_cast<long>(a.rows());
}

template <class T>
Certificate<T> find_cyclic_subspace(const GeneratorSet<T>& g, std::size_t r, const SearchOptions& opts,
                                    const ObstructionProvider<T>& prove_absent) {
  if (opts.trials < 1) throw InputError("trials must be at least 1");
  const std::size_t n = g.n();
  if (r > n) throw InputError("subspace dimension exceeds ambient dimension");
  std::vector<std::size_t> dims(opts.trials, 0);

  auto trial = [&](std::size_t i) -> std::optional<Certificate<T>> {
    Sampler sampler(derive_seed(opts.seed, i), opts.sampling);
    std::vector<Vector<T>> vecs;
    for (std::size_t k = 0; k < r; ++k) vecs.push_back(sampler.vector<T>(n));
    const Subspace<T> b = Subspace<T>::span(n, vecs, opts.tol);
    if (b.dim() != r) return std::nullopt;
    const Subspace<T> orb = orbit(g, b, opts.tol);
    dims[i] = orb.dim();
    if (!orb.is_full()) return std::nullopt;
    Certificate<T> cert;
    cert.verdict = Verdict::cyclic;
    cert.n = n;
    cert.target_dim = r;
    cert.orbit_dim = orb.dim();
    cert.witness = r == 1 ? Matrix<T>::column_vector(vecs.front()) : Matrix<T>::from_columns(n, vecs);
    return cert;
  };

  if (auto found = first_success<Certificate<T>>(opts.trials, trial)) {
    Certificate<T> cert = std::move(found->second);
    cert.winning_trial = found->first;
    cert.trials = found->first + 1;
    return cert;
  }

  Certificate<T> cert;
  cert.n = n;
  cert.target_dim = r;
  cert.trials = opts.trials;
  for (auto d : dims) cert.orbit_dim = std::max(cert.orbit_dim, d);
  if (prove_absent) {
    if (auto ob = prove_absent(g, r)) {
      cert.verdict = Verdict::not_cyclic;
      cert.obstruction = std::move(*ob);
      return cert;
    }
  }
  cert.verdict = Verdict::undetermined;
  return cert;
}

template <class T>
Certificate<T> find_cyclic_vector(const GeneratorSet<T>& g, const SearchOptions& opts,
                                  const ObstructionProvider<T>& prove_absent) {
  return find_cyclic_subspace(g, 1, opts, prove_absent);
}

#define CYCLICA_INSTANTIATE_ALGEBRA(T)                                                              \
  template AlgebraBasis<T> closure(const GeneratorSet<T>&, const Tolerance&);                       \
  template Subspace<T> orbit(const GeneratorSet<T>&, const Subspace<T>&, const Tolerance&);         \
  template Subspace<T> orbit(const GeneratorSet<T>&, const Vector<T>&, const Tolerance&);           \
  template Certificate<T> is_cyclic_vector(const GeneratorSet<T>&, const Vector<T>&, const Tolerance&); \
  template Certificate<T> is_cyclic_subspace(const GeneratorSet<T>&, const Subspace<T>&,            \
                                             const Tolerance&);                                     \
  template bool is_transitive(const GeneratorSet<T>&, const Tolerance&);                            \
  template Certificate<T> find_cyclic_vector(const GeneratorSet<T>&, const SearchOptions&,          \
                                             const ObstructionProvider<T>&);                        \
  template Certificate<T> find_cyclic_subspace(const GeneratorSet<T>&, std::size_t,                 \
                                               const SearchOptions&, const ObstructionProvider<T>&);

CYCLICA_INSTANTIATE_ALGEBRA(Exact)
CYCLICA_INSTANTIATE_ALGEBRA(Float)

#undef CYCLICA_INSTANTIATE_ALGEBRA

}  // namespace cyclica
