#include "cyclica/mrb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cyclica::mrb {

namespace {

std::string name(const Axis& a) { return "S^{" + std::to_string(a.i) + "," + std::to_string(a.j) + "}"; }

Rational real_part(const Exact& x) {
  if (!x.is_real()) throw Error("expected a real coefficient, got " + x.to_string());
  return x.re();
}

}  // namespace

InertiaSpec::InertiaSpec(std::vector<Rational> c) : c_(std::move(c)) {
  if (c_.size() < 2) throw InputError("inertia needs at least two principal moments");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) <= 0) throw InputError("inertia: C_" + std::to_string(i + 1) + " must be positive");
    if (i > 0 && !(c_[i - 1] < c_[i]))
      throw InputError("inertia: moments must be strictly increasing (C_" + std::to_string(i) + " >= C_" +
                       std::to_string(i + 1) + ")");
  }
}

SoBasis::SoBasis(std::size_t n) : n_(n) {
  if (n < 2) throw InputError("so(n) needs n >= 2");
}

void SoBasis::check(const Axis& a) const {
  if (a.i < 1 || a.j < 1 || a.i > n_ || a.j > n_)
    throw InputError("axis " + name(a) + " out of range 1.." + std::to_string(n_));
  if (a.i == a.j) throw InputError("axis " + name(a) + " has equal indices");
}

std::size_t SoBasis::index(std::size_t i, std::size_t j) const {
  check({i, j});
  if (i > j) throw InputError("index expects i < j, got " + name({i, j}));
  // Pairs (1,2..n), (2,3..n), ...: rows before i contribute (n - r) each.
  std::size_t k = 0;
  for (std::size_t r = 1; r < i; ++r) k += n_ - r;
  return k + (j - i - 1);
}

Axis SoBasis::pair(std::size_t k) const {
  if (k >= dim()) throw InputError("so(n) coordinate " + std::to_string(k) + " out of range");
  for (std::size_t i = 1; i < n_; ++i) {
    if (k < n_ - i) return {i, i + 1 + k};
    k -= n_ - i;
  }
  throw Error("unreachable so(n) coordinate");
}

Vector<Exact> SoBasis::coords(const Axis& a) const {
  check(a);
  Vector<Exact> v(dim());
  if (a.i < a.j) {
    v[index(a.i, a.j)] = Exact(1);
  } else {
    v[index(a.j, a.i)] = Exact(-1);
  }
  return v;
}

Matrix<Exact> SoBasis::to_matrix(const Vector<Exact>& coords) const {
  if (coords.size() != dim())
    throw InputError("so(" + std::to_string(n_) + ") coordinates need length " + std::to_string(dim()));
  Matrix<Exact> m(n_, n_);
  for (std::size_t k = 0; k < dim(); ++k) {
    const Axis a = pair(k);
    m(a.i - 1, a.j - 1) += coords[k];
    m(a.j - 1, a.i - 1) -= coords[k];
  }
  return m;
}

Vector<Exact> SoBasis::from_matrix(const Matrix<Exact>& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw InputError("expected a " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(m(i, j) == -m(j, i))) throw InputError("matrix is not skew-symmetric");
  Vector<Exact> v(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const Axis a = pair(k);
    v[k] = m(a.i - 1, a.j - 1);
  }
  return v;
}

Rational coupling(const InertiaSpec& c, std::size_t j, std::size_t k) {
  if (j < 1 || k < 1 || j > c.n() || k > c.n())
    throw InputError("coupling index out of range 1.." + std::to_string(c.n()));
  if (j == k) throw InputError("coupling c_jk needs j != k");
  Rational r = (c(k) - c(j)) / (c(j) + c(k));
  r.canonicalize();
  return r;
}

namespace {

// E(e_a, e_b) for basis coordinates a, b, added into `out` with weight w.
void add_basis_product(const InertiaSpec& c, const SoBasis& so, std::size_t a, std::size_t b, const Exact& w,
                       Vector<Exact>& out) {
  const Axis p = so.pair(a);
  const Axis q = so.pair(b);
  std::size_t shared = 0;
  if (p.i == q.i || p.i == q.j) shared = p.i;
  if (p.j == q.i || p.j == q.j) {
    if (shared != 0) return;  // same element: E(S, S) = 0
    shared = p.j;
  }
  if (shared == 0) return;
  // S^p = sp S^{shared x}, S^q = sq S^{shared y}
  const std::size_t x = p.i == shared ? p.j : p.i;
  const std::size_t y = q.i == shared ? q.j : q.i;
  const int sp = p.i == shared ? 1 : -1;
  const int sq = q.i == shared ? 1 : -1;
  const int sxy = x < y ? 1 : -1;
  const Exact coeff = Exact(coupling(c, x, y)) * Exact(sp * sq * sxy);
  out[so.index(std::min(x, y), std::max(x, y))] += w * coeff;
}

}  // namespace

Vector<Exact> bilinear_E(const InertiaSpec& c, const Vector<Exact>& x, const Vector<Exact>& y) {
  const SoBasis so(c.n());
  if (x.size() != so.dim() || y.size() != so.dim())
    throw InputError("E expects so(" + std::to_string(c.n()) + ") coordinates of length " + std::to_string(so.dim()));
  Vector<Exact> out(so.dim());
  for (std::size_t a = 0; a < so.dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < so.dim(); ++b) {
      if (y[b].is_zero()) continue;
      add_basis_product(c, so, a, b, x[a] * y[b], out);
    }
  }
  return out;
}

Vector<Exact> bilinear_E_direct(const InertiaSpec& c, const Vector<Exact>& x, const Vector<Exact>& y) {
  const SoBasis so(c.n());
  const Matrix<Exact> xm = so.to_matrix(x);
  const Matrix<Exact> ym = so.to_matrix(y);
  Matrix<Exact> cm(c.n(), c.n());
  for (std::size_t i = 0; i < c.n(); ++i) cm(i, i) = Exact(c(i + 1));
  const Matrix<Exact> sym = xm * ym + ym * xm;
  Vector<Exact> k = so.from_matrix(cm * sym - sym * cm);
  // I_C(S^{ij}) = (C_i + C_j) S^{ij}
  for (std::size_t q = 0; q < so.dim(); ++q) {
    const Axis a = so.pair(q);
    k[q] /= Exact(Rational(2) * (c(a.i) + c(a.j)));
  }
  return k;
}

bool extension_admissible(const InertiaSpec& c, const Vector<Exact>& b_hat, const Subspace<Exact>& controls) {
  const SoBasis so(c.n());
  if (controls.ambient_dim() != so.dim()) throw InputError("control subspace lives in the wrong space");
  const Vector<Exact> e = bilinear_E(c, b_hat, b_hat);
  return controls.contains(std::span<const Exact>(e));
}

std::string to_string(Convention c) { return c == Convention::displayed ? "displayed" : "table"; }

Matrix<Exact> lambda_operator(const InertiaSpec& c, const Axis& axis, Convention conv) {
  const SoBasis so(c.n());
  const Vector<Exact> s = so.coords(axis);
  const std::size_t own = so.index(std::min(axis.i, axis.j), std::max(axis.i, axis.j));
  std::vector<Vector<Exact>> cols;
  for (std::size_t b = 0; b < so.dim(); ++b) {
    Vector<Exact> e(so.dim());
    e[b] = Exact(1);
    Vector<Exact> col = bilinear_E(c, s, e);
    if (conv == Convention::displayed && b < own)
      for (auto& v : col) v = -v;
    cols.push_back(std::move(col));
  }
  return Matrix<Exact>::from_columns(so.dim(), cols);
}

Rational Perturbation::delta() const {
  if (!coefficients) throw InputError("the discriminant is undefined at epsilon = 0");
  return coefficients->delta();
}

Perturbation perturbed_operator(const InertiaSpec& c, const Axis& a, const Axis& b, const Rational& eps,
                                Convention conv) {
  const Matrix<Exact> la = lambda_operator(c, a, conv);
  const Matrix<Exact> lb = lambda_operator(c, b, conv);
  Perturbation out;
  out.epsilon = eps;
  out.lambda = la + lb + (la * lb) * Exact(eps);
  out.char_poly = char_poly(out.lambda);
  out.spectrum = eigenvalues(out.lambda);

  const auto roots = numeric_roots(to_float(out.char_poly));
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) out.min_gap = std::min(out.min_gap, std::abs(roots[i] - roots[j]));
  for (const auto& ev : out.spectrum.values)
    if (ev.multiplicity > 1) out.min_gap = 0.0;

  if (sgn(eps) != 0) {
    const auto& p = out.char_poly;
    PerturbationCoefficients k;
    k.coeff5 = real_part(p.coeff(5));
    k.p4 = real_part(p.coeff(4));
    k.p3 = -real_part(p.coeff(3)) / eps;
    k.p2 = real_part(p.coeff(2));
    k.p1 = -real_part(p.coeff(1)) / eps;
    k.p0 = real_part(p.coeff(0)) / (eps * eps);
    for (Rational* r : {&k.p0, &k.p1, &k.p2, &k.p3, &k.p4}) r->canonicalize();
    out.coefficients = k;
  }
  return out;
}

PerturbationConsistency perturbation_consistency(const InertiaSpec& c, const Axis& a, const Axis& b,
                                                 const Rational& eps1, const Rational& eps2, Convention conv) {
  if (sgn(eps1) == 0 || sgn(eps2) == 0) throw InputError("consistency check needs nonzero epsilon values");
  PerturbationConsistency out{perturbed_operator(c, a, b, eps1, conv), perturbed_operator(c, a, b, eps2, conv)};
  const auto& k1 = *out.first.coefficients;
  const auto& k2 = *out.second.coefficients;
  const Rational* first[] = {&k1.p0, &k1.p1, &k1.p2, &k1.p3, &k1.p4};
  const Rational* second[] = {&k2.p0, &k2.p1, &k2.p2, &k2.p3, &k2.p4};
  for (std::size_t i = 0; i < 5; ++i) {
    const double u = first[i]->get_d();
    const double v = second[i]->get_d();
    const double scale = std::max({std::abs(u), std::abs(v), 1e-300});
    out.max_relative_difference = std::max(out.max_relative_difference, std::abs(u - v) / scale);
  }
  out.structural_warning = sgn(k1.coeff5) != 0 || sgn(k2.coeff5) != 0;
  return out;
}

MrbReport analyze(const MrbSystem& sys, const SearchOptions& opts) {
  const InertiaSpec& c = sys.inertia;
  const SoBasis so(c.n());
  const std::size_t dim = so.dim();
  if (sys.axes.empty()) throw InputError("at least one controlled axis is required");

  std::vector<Vector<Exact>> controls;
  for (const auto& a : sys.axes) controls.push_back(so.coords(a));
  for (std::size_t i = 0; i < sys.extra_controls.size(); ++i) {
    if (sys.extra_controls[i].size() != dim)
      throw InputError("extra control " + std::to_string(i) + " needs " + std::to_string(dim) + " coordinates");
    controls.push_back(sys.extra_controls[i]);
  }

  MrbReport out;
  out.dim = dim;
  out.controls = Subspace<Exact>::span(dim, controls);
  for (const auto& a : sys.axes)
    if (!extension_admissible(c, so.coords(a), out.controls))
      throw PreconditionError("axis " + name(a) + " is not admissible: E(b, b) leaves the control span");
  for (std::size_t i = 0; i < sys.extra_controls.size(); ++i)
    if (!extension_admissible(c, sys.extra_controls[i], out.controls))
      throw PreconditionError("extra control " + std::to_string(i) +
                              " is not admissible: E(b, b) leaves the control span");

  for (const auto& a : sys.axes) out.generators.push_back(lambda_operator(c, a, sys.convention));
  if (sys.include_damping) {
    if (!sys.damping) throw InputError("damping requested but no damping matrix given");
    if (sys.damping->rows() != dim || sys.damping->cols() != dim)
      throw InputError("damping matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    out.generators.push_back(*sys.damping);
  }
  const GeneratorSet<Exact> g(dim, out.generators);
  const Tolerance& tol = opts.tol;

  out.controls_span_everything = out.controls.is_full();
  out.controls_cyclic = orbit(g, out.controls, tol).is_full();

  out.locus = rank_drop_locus(g, tol);
  out.solvable = is_solvable(lie_closure(g, tol));
  out.hautus = hautus_verdict(hautus_necessary(out.locus, 1), out.solvable);

  SplitOptions split;
  split.seed = opts.seed;
  split.tol = tol;
  auto record = [&out](const auto& summary, const auto& btf) {
    out.block_dims = btf.block_dims;
    for (const auto& cls : summary.classes) out.classes.emplace_back(cls.d, cls.multiplicity());
    out.theorem_condition = theorem_condition(summary);
  };
  try {
    const auto btf = block_triangularize(g, split);
    record(classify_blocks(btf, tol), btf);
  } catch (const Inconclusive& ex) {
    std::vector<Matrix<Float>> fg;
    for (const auto& m : out.generators) fg.push_back(to_float(m));
    try {
      const GeneratorSet<Float> gf(dim, fg);
      const auto btf = block_triangularize(gf, split);
      record(classify_blocks(btf, tol), btf);
      out.decomposition_numeric = true;
      out.decomposition_note = "exact splitting needs an algebraic extension; blocks computed numerically";
    } catch (const Inconclusive& ex2) {
      out.decomposition_note = std::string("decomposition inconclusive: ") + ex2.what();
    }
  }

  out.cyclic_vector = decide_cyclic_vector(g, opts);
  out.minimal = minimal_cyclic_dimension(g, opts);

  if (sys.axes.size() == 2) {
    out.perturbation = perturbation_consistency(c, sys.axes[0], sys.axes[1], Rational(1, 100), Rational(2, 100),
                                                sys.convention);
    out.non_generic_inertia = sgn(out.perturbation->first.delta()) == 0;
  }

  if (out.controls_cyclic) {
    out.verdict = "globally reachable with the given controls";
  } else if (out.cyclic_vector.verdict == Verdict::cyclic) {
    out.verdict = "globally reachable with one additional control direction";
  } else if (out.cyclic_vector.verdict == Verdict::not_cyclic) {
    out.verdict = "no single additional control suffices; " + std::to_string(out.minimal.r) +
                  " directions are " + (out.minimal.exact ? "necessary and sufficient" : "sufficient");
  } else {
    out.verdict = "undetermined";
  }
  return out;
}

}  // namespace cyclica::mrb
