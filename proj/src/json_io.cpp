#include "cyclica/json_io.hpp"

#include <cmath>
#include <limits>

namespace cyclica::io {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string field(const std::string& path, const char* key) { return path + "." + key; }

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(field(path, key), "missing required field");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::size_t parse_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Rational parse_real(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.dump());
    // Shortest round-trip text of the double, read back as an exact decimal.
    if (j.is_number_float()) {
      if (!std::isfinite(j.get<double>())) throw SchemaError(path, "non-finite number");
      return GaussianRational::parse_rational(j.dump());
    }
    if (j.is_string()) return GaussianRational::parse_rational(j.get<std::string>());
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, std::string("bad number: ") + e.what());
  }
  throw SchemaError(path, "expected a number or a \"p/q\" string");
}

// A flat list of scalars is read as one column.
Matrix<Exact> parse_input_matrix(const Json& j, const std::string& path, std::size_t n) {
  Matrix<Exact> m;
  if (j.is_array() && !j.empty() && (j[0].is_number() || j[0].is_string())) {
    m = Matrix<Exact>::column_vector(parse_vector(j, path));
  } else {
    m = parse_matrix(j, path);
  }
  if (m.rows() != n) throw SchemaError(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(m.rows()));
  return m;
}

Json real_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

double clean(double x) { return x == 0.0 ? 0.0 : x; }

template <class T>
Json mu_json(const std::vector<Complex>& mu) {
  Json out = Json::array();
  for (const auto& z : mu) out.push_back(to_json(Float(z)));
  return out;
}

template <class T>
Json exact_mu_json(const std::optional<std::vector<T>>& mu) {
  if (!mu) return nullptr;
  Json out = Json::array();
  for (const auto& x : *mu) out.push_back(to_json(x));
  return out;
}

Json steps_json(const std::vector<DimensionStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) out.push_back({{"r", s.r}, {"criterion", s.criterion}, {"outcome", s.outcome}});
  return out;
}

}  // namespace

Json parse(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Recover line and column from the byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError(origin + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
  }
}

Exact parse_scalar(const Json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) throw SchemaError(path, "complex scalars are [re, im]");
    return Exact(parse_real(j[0], at(path, 0)), parse_real(j[1], at(path, 1)));
  }
  return Exact(parse_real(j, path));
}

Vector<Exact> parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected a list of scalars");
  Vector<Exact> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_scalar(j[i], at(path, i)));
  return v;
}

Matrix<Exact> parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected a matrix (list of rows)");
  std::vector<Vector<Exact>> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw SchemaError(at(path, i), "expected a row (list of scalars)");
    rows.push_back(parse_vector(j[i], at(path, i)));
    if (i == 0) cols = rows.back().size();
    if (rows.back().size() != cols)
      throw SchemaError(at(path, i), "row has " + std::to_string(rows.back().size()) + " entries, expected " +
                                         std::to_string(cols));
  }
  return Matrix<Exact>::from_rows(cols, rows);
}

void check_schema(const Json& j) {
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  if (const Json* s = optional_field(j, "schema"))
    if (!s->is_string() || s->get<std::string>() != kSchema)
      throw SchemaError("$.schema", std::string("unsupported schema, expected \"") + kSchema + "\"");
}

GeneratorSet<Exact> parse_generators(const Json& j) {
  check_schema(j);
  const Json& gj = require(j, "generators", "$");
  if (!gj.is_array()) throw SchemaError("$.generators", "expected a list of matrices");
  std::vector<Matrix<Exact>> gens;
  for (std::size_t i = 0; i < gj.size(); ++i) gens.push_back(parse_matrix(gj[i], at("$.generators", i)));
  std::size_t n = 0;
  if (const Json* nj = optional_field(j, "n")) {
    n = parse_count(*nj, "$.n");
  } else if (!gens.empty()) {
    n = gens[0].rows();
  } else {
    throw SchemaError("$.n", "required when there are no generators");
  }
  if (n == 0) throw SchemaError("$.n", "dimension must be positive");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].rows() != n || gens[i].cols() != n)
      throw SchemaError(at("$.generators", i), "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  return {n, std::move(gens)};
}

SwitchedSystem<Exact> parse_system(const Json& j) {
  check_schema(j);
  const Json& mj = require(j, "modes", "$");
  if (!mj.is_array() || mj.empty()) throw SchemaError("$.modes", "expected a non-empty list of modes");
  std::vector<Mode<Exact>> modes;
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const std::string p = at("$.modes", i);
    modes.push_back({parse_matrix(require(mj[i], "A", p), field(p, "A")), std::nullopt});
  }
  std::size_t n = modes[0].a.rows();
  if (const Json* nj = optional_field(j, "n")) n = parse_count(*nj, "$.n");
  for (std::size_t i = 0; i < mj.size(); ++i) {
    const std::string p = at("$.modes", i);
    if (modes[i].a.rows() != n || modes[i].a.cols() != n)
      throw SchemaError(field(p, "A"), "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (const Json* b = optional_field(mj[i], "B")) modes[i].b = parse_input_matrix(*b, field(p, "B"), n);
  }
  std::optional<Matrix<Exact>> shared;
  if (const Json* b = optional_field(j, "B")) shared = parse_input_matrix(*b, "$.B", n);
  return SwitchedSystem<Exact>(n, std::move(modes), std::move(shared));
}

mrb::MrbSystem parse_mrb(const Json& j) {
  check_schema(j);
  const Json& cj = require(j, "C", "$");
  if (!cj.is_array()) throw SchemaError("$.C", "expected a list of principal moments");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < cj.size(); ++i) c.push_back(parse_real(cj[i], at("$.C", i)));
  if (const Json* nj = optional_field(j, "n"))
    if (parse_count(*nj, "$.n") != c.size()) throw SchemaError("$.n", "does not match the length of C");

  std::optional<mrb::InertiaSpec> inertia;
  try {
    inertia.emplace(std::move(c));
  } catch (const InputError& e) {
    throw SchemaError("$.C", e.what());
  }
  const std::size_t n = inertia->n();
  const std::size_t dim = n * (n - 1) / 2;

  mrb::MrbSystem sys{*inertia, {}, {}, std::nullopt, false, mrb::Convention::displayed};
  const Json& aj = require(j, "axes", "$");
  if (!aj.is_array()) throw SchemaError("$.axes", "expected a list of [i, j] pairs");
  for (std::size_t k = 0; k < aj.size(); ++k) {
    const std::string p = at("$.axes", k);
    if (!aj[k].is_array() || aj[k].size() != 2) throw SchemaError(p, "expected [i, j]");
    const mrb::Axis a{parse_count(aj[k][0], at(p, 0)), parse_count(aj[k][1], at(p, 1))};
    if (a.i < 1 || a.j < 1 || a.i > n || a.j > n || a.i == a.j)
      throw SchemaError(p, "axis indices must be distinct and in 1.." + std::to_string(n));
    sys.axes.push_back(a);
  }
  if (const Json* ej = optional_field(j, "extra_controls")) {
    if (!ej->is_array()) throw SchemaError("$.extra_controls", "expected a list of so(n) coordinate vectors");
    for (std::size_t k = 0; k < ej->size(); ++k) {
      auto v = parse_vector((*ej)[k], at("$.extra_controls", k));
      if (v.size() != dim) throw SchemaError(at("$.extra_controls", k), "expected " + std::to_string(dim) + " coordinates");
      sys.extra_controls.push_back(std::move(v));
    }
  }
  if (const Json* dj = optional_field(j, "D")) {
    auto d = parse_matrix(*dj, "$.D");
    if (d.rows() != dim || d.cols() != dim)
      throw SchemaError("$.D", "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    sys.damping = std::move(d);
  }
  if (const Json* f = optional_field(j, "include_damping")) {
    if (!f->is_boolean()) throw SchemaError("$.include_damping", "expected true or false");
    sys.include_damping = f->get<bool>();
    if (sys.include_damping && !sys.damping) throw SchemaError("$.D", "required when include_damping is true");
  }
  if (const Json* cv = optional_field(j, "convention")) {
    const std::string s = cv->is_string() ? cv->get<std::string>() : "";
    if (s == "displayed") {
      sys.convention = mrb::Convention::displayed;
    } else if (s == "table") {
      sys.convention = mrb::Convention::table;
    } else {
      throw SchemaError("$.convention", "expected \"displayed\" or \"table\"");
    }
  }
  return sys;
}

Json to_json(const Exact& x) {
  if (x.is_real()) return real_json(x.re());
  return Json::array({real_json(x.re()), real_json(x.im())});
}

Json to_json(const Float& x) {
  if (x.imag() == 0.0) return clean(x.real());
  return Json::array({clean(x.real()), clean(x.imag())});
}

template <class T>
Json to_json(const Vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (const auto& r : m.row_list()) out.push_back(to_json(r));
  return out;
}

template <class T>
Json to_json(const Subspace<T>& s) {
  return {{"dim", s.dim()}, {"ambient", s.ambient_dim()}, {"basis", to_json(s.basis())}};
}

template <class T>
Json to_json(const Obstruction<T>& ob) {
  Json out = {{"kind", to_string(ob.kind)}};
  switch (ob.kind) {
    case ObstructionKind::annihilating_covector:
      out["covector"] = to_json(ob.covector);
      break;
    case ObstructionKind::rank_drop:
      out["mu"] = mu_json<T>(ob.mu);
      out["mu_exact"] = exact_mu_json(ob.mu_exact);
      out["dimP"] = ob.dim_p;
      out["P"] = ob.p_space ? to_json(ob.p_space->basis()) : to_json(ob.p_space_numeric.basis());
      out["P_exact"] = ob.p_space.has_value() && is_exact_v<T>;
      break;
    case ObstructionKind::multiplicity:
      out["block_dim"] = ob.block_dim;
      out["class_multiplicity"] = ob.class_multiplicity;
      break;
  }
  if (!ob.detail.empty()) out["detail"] = ob.detail;
  return out;
}

template <class T>
Json to_json(const Certificate<T>& c) {
  Json out = {{"verdict", to_string(c.verdict)},
              {"n", c.n},
              {"target_dim", c.target_dim},
              {"orbit_dim", c.orbit_dim},
              {"trials", c.trials}};
  out["winning_trial"] = c.winning_trial ? Json(*c.winning_trial) : Json(nullptr);
  if (c.witness) out["witness"] = c.witness->cols() == 1 ? to_json(c.witness->column(0)) : to_json(*c.witness);
  out["obstruction"] = c.obstruction ? to_json(*c.obstruction) : Json(nullptr);
  return out;
}

template <class T>
Json to_json(const RankDropLocus<T>& l) {
  Json entries = Json::array();
  for (const auto& e : l.entries) {
    Json x = {{"mu", mu_json<T>(e.mu)}, {"dimP", e.dim_p}, {"rank", e.rank}, {"exact", e.exact()}};
    x["mu_exact"] = exact_mu_json(e.mu_exact);
    x["P"] = e.p_space ? to_json(e.p_space->basis()) : to_json(e.p_numeric.basis());
    entries.push_back(std::move(x));
  }
  return {{"entries", entries}, {"max_drop", l.max_drop}, {"degenerate", l.degenerate}};
}

template <class T>
Json to_json(const Decomposition<T>& d) {
  Json classes = Json::array();
  for (const auto& c : d.summary.classes)
    classes.push_back({{"members", c.members}, {"d", c.d}, {"multiplicity", c.multiplicity()}});
  Json out = {{"blocks", d.btf.blocks()},
              {"block_dims", d.btf.block_dims},
              {"change_of_basis", to_json(d.btf.change_of_basis)},
              {"classes", classes},
              {"theorem_condition", d.condition},
              {"semisimple", d.semisimple}};
  if (d.witness) {
    out["witness"] = {{"vector", to_json(d.witness->vector)},
                      {"from_construction", d.witness->from_construction},
                      {"certificate", to_json(d.witness->certificate)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

template <class T>
Json to_json(const MinimalDimension<T>& md) {
  return {{"r", md.r},
          {"lower_bound", md.lower_bound},
          {"exact", md.exact},
          {"orbit_dim", md.orbit_dim},
          {"max_drop", md.max_drop},
          {"solvable", md.solvable},
          {"semisimple", md.semisimple},
          {"witness", to_json(md.witness)},
          {"steps", steps_json(md.steps)}};
}

template <class T>
Json to_json(const DesignResult<T>& d) {
  return {{"r_min", d.certified ? Json(d.upper) : Json(nullptr)},
          {"bracket", {d.lower, d.upper}},
          {"certified", d.certified},
          {"witness_B", to_json(d.witness)},
          {"witness_rechecked", d.witness_rechecked},
          {"hautus_at_lower", d.hautus_at_lower},
          {"solvable", d.solvable},
          {"trail", steps_json(d.trail)}};
}

Json to_json(const mrb::MrbReport& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  Json out = {{"verdict", r.verdict},
              {"dim", r.dim},
              {"controls", to_json(r.controls)},
              {"controls_span_everything", r.controls_span_everything},
              {"controls_cyclic", r.controls_cyclic},
              {"generators", gens},
              {"hautus", {{"verdict", to_string(r.hautus)}, {"solvable", r.solvable}, {"locus", to_json(r.locus)}}}};
  Json dec = {{"numeric", r.decomposition_numeric}};
  if (r.block_dims) {
    dec["block_dims"] = *r.block_dims;
    Json classes = Json::array();
    for (const auto& [d, k] : r.classes) classes.push_back({{"d", d}, {"multiplicity", k}});
    dec["classes"] = classes;
    dec["theorem_condition"] = *r.theorem_condition;
  } else {
    dec["block_dims"] = nullptr;
  }
  if (!r.decomposition_note.empty()) dec["note"] = r.decomposition_note;
  out["decomposition"] = dec;
  out["cyclic_vector"] = to_json(r.cyclic_vector);
  out["minimal"] = to_json(r.minimal);
  if (r.perturbation) {
    auto one = [](const mrb::Perturbation& p) {
      const auto& k = *p.coefficients;
      Json roots = Json::array();
      for (const auto& e : p.spectrum.values) roots.push_back(to_json(Float(e.value)));
      return Json{{"epsilon", real_json(p.epsilon)},
                  {"char_poly", to_json(Vector<Exact>(p.char_poly.coefficients()))},
                  {"eigenvalues", roots},
                  {"min_gap", p.min_gap},
                  {"p", {real_json(k.p0), real_json(k.p1), real_json(k.p2), real_json(k.p3), real_json(k.p4)}},
                  {"coeff5", real_json(k.coeff5)},
                  {"delta", real_json(k.delta())},
                  {"delta_float", k.delta().get_d()}};
    };
    out["perturbation"] = {{"first", one(r.perturbation->first)},
                           {"second", one(r.perturbation->second)},
                           {"max_relative_difference", r.perturbation->max_relative_difference},
                           {"structural_warning", r.perturbation->structural_warning},
                           {"non_generic_inertia", r.non_generic_inertia}};
  } else {
    out["perturbation"] = nullptr;
  }
  return out;
}

#define CYCLICA_INSTANTIATE_JSON(T)                        \
  template Json to_json(const Vector<T>&);                 \
  template Json to_json(const Matrix<T>&);                 \
  template Json to_json(const Subspace<T>&);               \
  template Json to_json(const Obstruction<T>&);            \
  template Json to_json(const Certificate<T>&);            \
  template Json to_json(const RankDropLocus<T>&);          \
  template Json to_json(const Decomposition<T>&);          \
  template Json to_json(const MinimalDimension<T>&);       \
  template Json to_json(const DesignResult<T>&);

CYCLICA_INSTANTIATE_JSON(Exact)
CYCLICA_INSTANTIATE_JSON(Float)

#undef CYCLICA_INSTANTIATE_JSON

}  // namespace cyclica::io
