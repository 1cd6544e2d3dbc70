#include "cyclica/decomp.hpp"

#include <algorithm>

#include "cyclica/polynomial.hpp"

namespace cyclica {

namespace {

template <class T>
T trace_of_product(const Matrix<T>& x, const Matrix<T>& y) {
  T acc{};
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (is_exact_zero(x(i, j))) continue;
      acc += x(i, j) * y(j, i);
    }
  return acc;
}

template <class T>
Matrix<T> combination(const std::vector<Matrix<T>>& basis, std::span<const T> coeffs, std::size_t n) {
  Matrix<T> out(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (is_exact_zero(coeffs[a])) continue;
    out += basis[a] * coeffs[a];
  }
  return out;
}

template <class T>
bool is_scalar_matrix(const Matrix<T>& x, const Tolerance& tol) {
  const double scale = std::max(1.0, x.max_abs());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const T d = i == j ? x(i, j) - x(0, 0) : x(i, j);
      if (!negligible(d, scale, tol)) return false;
    }
  return true;
}

/// Eigenvalues of `x` that lie in the field of T.
template <class T>
std::vector<T> field_eigenvalues(const Matrix<T>& x, const Tolerance& tol) {
  std::vector<T> out;
  for (const auto& ev : eigenvalues(x, tol).values) {
    if constexpr (is_exact_v<T>) {
      if (ev.exact) out.push_back(*ev.exact);
    } else {
      out.push_back(ev.value);
    }
  }
  return out;
}

template <class T>
Matrix<T> minus_scalar(Matrix<T> x, const T& lambda) {
  for (std::size_t i = 0; i < x.rows(); ++i) x(i, i) -= lambda;
  return x;
}

template <class T>
bool proper(const Subspace<T>& s) {
  return !s.is_zero() && !s.is_full();
}

/// Orbit tests of a vector under the generators and of the same vector as a
/// covector under the transposes.
template <class T>
class Prober {
 public:
  Prober(const GeneratorSet<T>& g, const Tolerance& tol) : g_(g), gt_(g.transposed()), tol_(tol) {}

  std::optional<Subspace<T>> probe(const Vector<T>& v) const {
    const Subspace<T> o = orbit(g_, v, tol_);
    if (proper(o)) return o;
    const Subspace<T> dual = orbit(gt_, v, tol_);
    if (proper(dual)) return annihilator(dual, tol_);
    return std::nullopt;
  }

  /// Probes kernel vectors of x - lambda I for every field eigenvalue lambda.
  std::optional<Subspace<T>> probe_element(const Matrix<T>& x) const {
    for (const T& lambda : field_eigenvalues(x, tol_)) {
      const Matrix<T> shifted = minus_scalar(x, lambda);
      for (const auto& v : kernel(shifted, tol_).basis_vectors())
        if (auto s = probe(v)) return s;
      for (const auto& v : kernel(shifted.transpose(), tol_).basis_vectors())
        if (auto s = probe(v)) return s;
    }
    return std::nullopt;
  }

 private:
  const GeneratorSet<T>& g_;
  GeneratorSet<T> gt_;
  Tolerance tol_;
};

template <class T>
std::optional<Subspace<T>> from_radical(const AlgebraBasis<T>& alg, const Tolerance& tol) {
  const auto rad = radical(alg, tol);
  if (rad.empty()) return std::nullopt;
  // Rad . V is invariant and proper because the radical is nilpotent.
  std::vector<Vector<T>> cols;
  for (const auto& r : rad)
    for (auto& c : r.columns()) cols.push_back(std::move(c));
  const Subspace<T> w = Subspace<T>::span(alg.n, cols, tol);
  if (proper(w)) return w;
  return std::nullopt;
}

template <class T>
std::optional<Subspace<T>> from_commutant(const GeneratorSet<T>& g, const Tolerance& tol) {
  for (const auto& x : commutant(g, tol)) {
    if (is_scalar_matrix(x, tol)) continue;
    for (const T& lambda : field_eigenvalues(x, tol)) {
      const Matrix<T> y = minus_scalar(x, lambda);
      const Subspace<T> im = Subspace<T>::span_columns(y, tol);
      if (proper(im)) return im;
      const Subspace<T> ker = kernel(y, tol);
      if (proper(ker)) return ker;
    }
  }
  return std::nullopt;
}

}  // namespace

template <class T>
std::vector<Matrix<T>> intertwiners(const GeneratorSet<T>& source, const GeneratorSet<T>& target,
                                    const Tolerance& tol) {
  if (source.size() != target.size()) throw InputError("generator counts differ");
  const std::size_t da = source.n(), db = target.n();
  const std::size_t unknowns = da * db;
  if (unknowns == 0) return {};
  Matrix<T> system(std::max<std::size_t>(1, source.size()) * unknowns, unknowns);
  for (std::size_t g = 0; g < source.size(); ++g) {
    const Matrix<T>& a = source[g];
    const Matrix<T>& b = target[g];
    for (std::size_t p = 0; p < db; ++p)
      for (std::size_t q = 0; q < da; ++q) {
        const std::size_t row = g * unknowns + p * da + q;
        // (X A)_pq - (B X)_pq
        for (std::size_t r = 0; r < da; ++r) system(row, p * da + r) += a(r, q);
        for (std::size_t r = 0; r < db; ++r) system(row, r * da + q) -= b(p, r);
      }
  }
  std::vector<Matrix<T>> out;
  for (const auto& v : kernel(system, tol).basis_vectors()) out.push_back(Matrix<T>(db, da, v));
  return out;
}

template <class T>
std::vector<Matrix<T>> commutant(const GeneratorSet<T>& g, const Tolerance& tol) {
  return intertwiners(g, g, tol);
}

template <class T>
std::vector<Matrix<T>> radical(const AlgebraBasis<T>& algebra, const Tolerance& tol) {
  const auto& b = algebra.elements;
  const std::size_t d = b.size();
  Matrix<T> gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      gram(i, j) = trace_of_product(b[i], b[j]);
      gram(j, i) = gram(i, j);
    }
  std::vector<Matrix<T>> out;
  for (const auto& c : kernel(gram, tol).basis_vectors())
    out.push_back(combination(b, std::span<const T>(c), algebra.n));
  return out;
}

template <class T>
bool is_semisimple(const GeneratorSet<T>& g, const Tolerance& tol) {
  return radical(closure(g, tol), tol).empty();
}

template <class T>
std::optional<Subspace<T>> find_invariant_subspace(const GeneratorSet<T>& g, const SplitOptions& opts) {
  const std::size_t n = g.n();
  if (n == 0) throw InputError("ambient dimension must be positive");
  const Tolerance& tol = opts.tol;
  const AlgebraBasis<T> alg = closure(g, tol);
  if (alg.dim() == n * n) return std::nullopt;

  const Prober<T> prober(g, tol);
  for (std::size_t i = 0; i < n; ++i) {
    Vector<T> e(n);
    e[i] = ScalarTraits<T>::from_int(1);
    if (auto s = prober.probe(e)) return s;
  }
  if (auto s = from_radical(alg, tol)) return s;
  if (auto s = from_commutant(g, tol)) return s;

  for (std::size_t k = 0; k < opts.probes; ++k) {
    Sampler sampler(derive_seed(opts.seed, k));
    const Vector<T> coeffs = sampler.vector<T>(alg.dim());
    const Matrix<T> r = combination(alg.elements, std::span<const T>(coeffs), n);
    if (auto s = prober.probe_element(r)) return s;
  }
  for (const auto& x : alg.elements)
    if (auto s = prober.probe_element(x)) return s;

  throw Inconclusive("no invariant subspace found although the algebra has dimension " +
                     std::to_string(alg.dim()) + " < " + std::to_string(n * n) +
                     "; it may split only over an algebraic extension of the input field");
}

template <class T>
std::size_t BlockTriangularForm<T>::offset(std::size_t i) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < i; ++k) off += block_dims[k];
  return off;
}

template <class T>
GeneratorSet<T> BlockTriangularForm<T>::diagonal_block(std::size_t i) const {
  const std::size_t off = offset(i), d = block_dims.at(i);
  std::vector<Matrix<T>> gens;
  for (const auto& a : transformed.generators()) gens.push_back(a.block(off, off, d, d));
  return {d, std::move(gens)};
}

namespace {

template <class T>
struct Split {
  Matrix<T> p;
  std::vector<std::size_t> dims;
};

template <class T>
Split<T> split_recursive(const GeneratorSet<T>& g, const SplitOptions& opts, std::uint64_t& counter) {
  const std::size_t n = g.n();
  SplitOptions local = opts;
  local.seed = derive_seed(opts.seed, counter++);
  const auto w = find_invariant_subspace(g, local);
  if (!w) return {Matrix<T>::identity(n), {n}};

  const std::size_t k = w->dim();
  SpanBuilder<T> span(n, opts.tol);
  std::vector<Vector<T>> cols;
  for (auto& v : w->basis_vectors()) {
    span.insert(v);
    cols.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    Vector<T> e(n);
    e[i] = ScalarTraits<T>::from_int(1);
    if (span.insert(e)) cols.push_back(std::move(e));
  }
  const Matrix<T> p0 = Matrix<T>::from_columns(n, cols);
  const GeneratorSet<T> conj = g.conjugated(p0, inverse(p0, opts.tol));

  std::vector<Matrix<T>> top, bottom;
  for (const auto& a : conj.generators()) {
    top.push_back(a.block(0, 0, k, k));
    bottom.push_back(a.block(k, k, n - k, n - k));
  }
  const Split<T> s1 = split_recursive(GeneratorSet<T>(k, std::move(top)), opts, counter);
  const Split<T> s2 = split_recursive(GeneratorSet<T>(n - k, std::move(bottom)), opts, counter);
  Matrix<T> diag(n, n);
  diag.set_block(0, 0, s1.p);
  diag.set_block(k, k, s2.p);
  Split<T> out{p0 * diag, s1.dims};
  out.dims.insert(out.dims.end(), s2.dims.begin(), s2.dims.end());
  return out;
}

}  // namespace

template <class T>
BlockTriangularForm<T> block_triangularize(const GeneratorSet<T>& g, const SplitOptions& opts) {
  BlockTriangularForm<T> out;
  out.n = g.n();
  if (g.n() == 0) return out;
  std::uint64_t counter = 0;
  Split<T> s = split_recursive(g, opts, counter);
  out.change_of_basis = std::move(s.p);
  out.change_of_basis_inv = inverse(out.change_of_basis, opts.tol);
  out.block_dims = std::move(s.dims);
  out.transformed = g.conjugated(out.change_of_basis, out.change_of_basis_inv);
  return out;
}

template <class T>
IsotypicSummary<T> classify_blocks(const BlockTriangularForm<T>& btf, const Tolerance& tol) {
  IsotypicSummary<T> out;
  std::vector<GeneratorSet<T>> models;
  for (std::size_t i = 0; i < btf.blocks(); ++i) {
    const GeneratorSet<T> block = btf.diagonal_block(i);
    bool placed = false;
    for (std::size_t c = 0; c < out.classes.size() && !placed; ++c) {
      auto& cls = out.classes[c];
      if (cls.d != block.n()) continue;
      const auto xs = intertwiners(block, models[c], tol);
      if (xs.empty()) continue;
      cls.members.push_back(i);
      cls.intertwiners.push_back(xs.front());
      placed = true;
    }
    if (placed) continue;
    IsotypicClass<T> cls;
    cls.members = {i};
    cls.d = block.n();
    cls.intertwiners = {Matrix<T>::identity(block.n())};
    out.classes.push_back(std::move(cls));
    models.push_back(block);
  }
  return out;
}

template <class T>
bool theorem_condition(const IsotypicSummary<T>& summary) {
  for (const auto& c : summary.classes)
    if (c.multiplicity() > c.d) return false;
  return true;
}

template <class T>
ConstructedVector<T> construct_cyclic_vector(const GeneratorSet<T>& g, const BlockTriangularForm<T>& btf,
                                             const IsotypicSummary<T>& summary, const SearchOptions& opts) {
  if (!theorem_condition(summary))
    throw PreconditionError("some isotypic class has multiplicity larger than its block dimension");
  const std::size_t n = g.n();
  Vector<T> y(n);
  for (const auto& cls : summary.classes) {
    for (std::size_t t = 0; t < cls.members.size(); ++t) {
      Vector<T> e(cls.d);
      e[t] = ScalarTraits<T>::from_int(1);
      const Vector<T> comp = cyclica::apply(inverse(cls.intertwiners[t], opts.tol), e);
      const std::size_t off = btf.offset(cls.members[t]);
      for (std::size_t i = 0; i < cls.d; ++i) y[off + i] = comp[i];
    }
  }
  ConstructedVector<T> out;
  out.vector = cyclica::apply(btf.change_of_basis, y);
  out.certificate = is_cyclic_vector(g, out.vector, opts.tol);
  if (out.certificate.verdict == Verdict::cyclic) return out;

  Certificate<T> sampled = find_cyclic_vector(g, opts);
  if (sampled.verdict != Verdict::cyclic)
    throw Inconclusive("constructed vector failed certification and sampling found no cyclic vector");
  out.vector = sampled.witness->column(0);
  out.from_construction = false;
  out.certificate = std::move(sampled);
  return out;
}

template <class T>
std::optional<Obstruction<T>> multiplicity_obstruction(const IsotypicSummary<T>& summary, bool semisimple,
                                                       std::size_t r) {
  if (!semisimple) return std::nullopt;
  for (const auto& c : summary.classes) {
    const std::size_t k = c.multiplicity();
    if (c.d == 0 || r * c.d >= k) continue;
    Obstruction<T> ob;
    ob.kind = ObstructionKind::multiplicity;
    ob.block_dim = c.d;
    ob.class_multiplicity = k;
    ob.detail = "completely reducible action with an isotypic class of multiplicity " + std::to_string(k) +
                " on blocks of dimension " + std::to_string(c.d);
    return ob;
  }
  return std::nullopt;
}

template <class T>
Decomposition<T> decompose(const GeneratorSet<T>& g, const SplitOptions& split, const SearchOptions& search) {
  Decomposition<T> out;
  out.btf = block_triangularize(g, split);
  out.summary = classify_blocks(out.btf, split.tol);
  out.condition = theorem_condition(out.summary);
  out.semisimple = is_semisimple(g, split.tol);
  if (out.condition) out.witness = construct_cyclic_vector(g, out.btf, out.summary, search);
  return out;
}

#define CYCLICA_INSTANTIATE_DECOMP(T)                                                                  \
  template std::vector<Matrix<T>> intertwiners(const GeneratorSet<T>&, const GeneratorSet<T>&,        \
                                               const Tolerance&);                                      \
  template std::vector<Matrix<T>> commutant(const GeneratorSet<T>&, const Tolerance&);                \
  template std::vector<Matrix<T>> radical(const AlgebraBasis<T>&, const Tolerance&);                  \
  template bool is_semisimple(const GeneratorSet<T>&, const Tolerance&);                               \
  template std::optional<Subspace<T>> find_invariant_subspace(const GeneratorSet<T>&,                 \
                                                              const SplitOptions&);                    \
  template struct BlockTriangularForm<T>;                                                              \
  template BlockTriangularForm<T> block_triangularize(const GeneratorSet<T>&, const SplitOptions&);   \
  template IsotypicSummary<T> classify_blocks(const BlockTriangularForm<T>&, const Tolerance&);       \
  template bool theorem_condition(const IsotypicSummary<T>&);                                          \
  template ConstructedVector<T> construct_cyclic_vector(const GeneratorSet<T>&,                       \
                                                        const BlockTriangularForm<T>&,                 \
                                                        const IsotypicSummary<T>&, const SearchOptions&); \
  template std::optional<Obstruction<T>> multiplicity_obstruction(const IsotypicSummary<T>&, bool,    \
                                                                  std::size_t);                        \
  template Decomposition<T> decompose(const GeneratorSet<T>&, const SplitOptions&, const SearchOptions&);

CYCLICA_INSTANTIATE_DECOMP(Exact)
CYCLICA_INSTANTIATE_DECOMP(Float)

#undef CYCLICA_INSTANTIATE_DECOMP

}  // namespace cyclica
