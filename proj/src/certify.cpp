#include "cyclica/certify.hpp"

#include <cmath>

namespace cyclica {

template <class T>
std::size_t multiplicity_lower_bound(const GeneratorSet<T>& g, const Tolerance& tol, std::uint64_t seed,
                                     bool& semisimple) {
  semisimple = is_semisimple(g, tol);
  if (!semisimple) return 0;
  try {
    SplitOptions split;
    split.seed = seed;
    split.tol = tol;
    const auto summary = classify_blocks(block_triangularize(g, split), tol);
    std::size_t bound = 0;
    for (const auto& c : summary.classes)
      bound = std::max(bound, (c.multiplicity() + c.d - 1) / c.d);
    return bound;
  } catch (const Inconclusive&) {
    return 0;
  }
}

namespace {

template <class T>
bool annihilates(const Vector<T>& p, const Matrix<T>& m, const Tolerance& tol) {
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    T acc{};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += p[i] * m(i, j);
    if (!negligible(acc, scale, tol)) return false;
  }
  return true;
}

template <class T>
Matrix<Float> as_float(const Matrix<T>& m) {
  if constexpr (is_exact_v<T>) {
    return to_float(m);
  } else {
    return m;
  }
}

template <class T>
bool recheck_rank_drop(const GeneratorSet<T>& g, const Obstruction<T>& ob, std::size_t r, const Tolerance& tol) {
  if (ob.dim_p <= r || ob.mu.size() != g.size()) return false;
  if (ob.p_space && ob.mu_exact) {
    if (ob.p_space->dim() != ob.dim_p) return false;
    for (const auto& p : ob.p_space->basis_vectors())
      for (std::size_t j = 0; j < g.size(); ++j) {
        Matrix<T> shifted = g[j];
        for (std::size_t i = 0; i < g.n(); ++i) shifted(i, i) -= (*ob.mu_exact)[j];
        if (!annihilates(p, shifted, tol)) return false;
      }
    return true;
  }
  // Numeric covectors: allow a residual well above rounding error.
  Tolerance loose = tol;
  loose.rank = std::sqrt(tol.rank);
  if (ob.p_space_numeric.dim() != ob.dim_p) return false;
  for (const auto& p : ob.p_space_numeric.basis_vectors())
    for (std::size_t j = 0; j < g.size(); ++j) {
      Matrix<Float> shifted = as_float(g[j]);
      for (std::size_t i = 0; i < g.n(); ++i) shifted(i, i) -= ob.mu[j];
      if (!annihilates(p, shifted, loose)) return false;
    }
  return true;
}

}  // namespace

template <class T>
ObstructionProvider<T> standard_obstructions(const Tolerance& tol, std::uint64_t seed) {
  return [tol, seed](const GeneratorSet<T>& g, std::size_t r) -> std::optional<Obstruction<T>> {
    if (!g.empty())
      if (auto ob = rank_drop_obstruction(rank_drop_locus(g, tol), r)) return ob;
    if (!is_semisimple(g, tol)) return std::nullopt;
    try {
      SplitOptions split;
      split.seed = seed;
      split.tol = tol;
      const auto summary = classify_blocks(block_triangularize(g, split), tol);
      return multiplicity_obstruction(summary, true, r);
    } catch (const Inconclusive&) {
      return std::nullopt;
    }
  };
}

template <class T>
Certificate<T> decide_cyclic_vector(const GeneratorSet<T>& g, const SearchOptions& opts) {
  return find_cyclic_vector(g, opts, standard_obstructions<T>(opts.tol, opts.seed));
}

template <class T>
Certificate<T> decide_cyclic_subspace(const GeneratorSet<T>& g, std::size_t r, const SearchOptions& opts) {
  return find_cyclic_subspace(g, r, opts, standard_obstructions<T>(opts.tol, opts.seed));
}

template <class T>
bool recheck(const GeneratorSet<T>& g, const Certificate<T>& cert, const Tolerance& tol) {
  switch (cert.verdict) {
    case Verdict::undetermined:
      return !cert.obstruction.has_value();
    case Verdict::cyclic: {
      if (!cert.witness || cert.witness->rows() != g.n()) return false;
      const Subspace<T> b = Subspace<T>::span_columns(*cert.witness, tol);
      return b.dim() == cert.target_dim && orbit(g, b, tol).is_full();
    }
    case Verdict::not_cyclic:
      break;
  }
  if (!cert.obstruction) return false;
  const Obstruction<T>& ob = *cert.obstruction;
  switch (ob.kind) {
    case ObstructionKind::annihilating_covector: {
      if (!cert.witness || ob.covector.size() != g.n()) return false;
      bool nonzero = false;
      for (const auto& x : ob.covector) nonzero = nonzero || !is_exact_zero(x);
      if (!nonzero) return false;
      const Subspace<T> orb = orbit(g, Subspace<T>::span_columns(*cert.witness, tol), tol);
      return annihilates(ob.covector, orb.as_columns(), tol);
    }
    case ObstructionKind::rank_drop:
      return recheck_rank_drop(g, ob, cert.target_dim, tol);
    case ObstructionKind::multiplicity: {
      bool semisimple = false;
      const std::size_t bound = multiplicity_lower_bound(g, tol, 0, semisimple);
      return semisimple && bound > cert.target_dim && ob.class_multiplicity > cert.target_dim * ob.block_dim;
    }
  }
  return false;
}

template <class T>
MinimalDimension<T> minimal_cyclic_dimension(const GeneratorSet<T>& g, const SearchOptions& opts) {
  const std::size_t n = g.n();
  if (n == 0) throw InputError("ambient dimension must be positive");
  MinimalDimension<T> out;
  if (!g.empty()) out.max_drop = rank_drop_locus(g, opts.tol).max_drop;
  out.solvable = is_solvable(lie_closure(g, opts.tol));
  const std::size_t mult = multiplicity_lower_bound(g, opts.tol, opts.seed, out.semisimple);
  out.lower_bound = std::max<std::size_t>({1, out.max_drop, mult});

  for (std::size_t r = 1; r <= n; ++r) {
    if (r < out.lower_bound) {
      out.steps.push_back({r, r < out.max_drop ? "rank_drop" : "multiplicity", "refuted"});
      continue;
    }
    if (r == n) {
      out.steps.push_back({r, "full_space", "cyclic"});
      out.r = n;
      out.witness = Matrix<T>::identity(n);
      out.orbit_dim = n;
      break;
    }
    SearchOptions local = opts;
    local.seed = derive_seed(opts.seed, r);
    const Certificate<T> cert = find_cyclic_subspace(g, r, local);
    if (cert.verdict == Verdict::cyclic) {
      out.steps.push_back({r, "sampling", "cyclic"});
      out.r = r;
      out.witness = *cert.witness;
      out.orbit_dim = cert.orbit_dim;
      break;
    }
    out.steps.push_back({r, "sampling", "undetermined"});
  }
  out.exact = out.r == out.lower_bound;
  return out;
}

#define CYCLICA_INSTANTIATE_CERTIFY(T)                                                                \
  template std::size_t multiplicity_lower_bound(const GeneratorSet<T>&, const Tolerance&, std::uint64_t, \
                                                bool&);                                              \
  template ObstructionProvider<T> standard_obstructions<T>(const Tolerance&, std::uint64_t);         \
  template Certificate<T> decide_cyclic_vector(const GeneratorSet<T>&, const SearchOptions&);        \
  template Certificate<T> decide_cyclic_subspace(const GeneratorSet<T>&, std::size_t,                \
                                                 const SearchOptions&);                              \
  template bool recheck(const GeneratorSet<T>&, const Certificate<T>&, const Tolerance&);            \
  template MinimalDimension<T> minimal_cyclic_dimension(const GeneratorSet<T>&, const SearchOptions&);

CYCLICA_INSTANTIATE_CERTIFY(Exact)
CYCLICA_INSTANTIATE_CERTIFY(Float)

#undef CYCLICA_INSTANTIATE_CERTIFY

}  // namespace cyclica
