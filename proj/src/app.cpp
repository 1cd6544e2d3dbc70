#include "cyclica/app.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cyclica::app {

namespace {

using io::Json;
using io::SchemaError;

template <class T>
Matrix<T> as_backend(const Matrix<Exact>& m) {
  if constexpr (is_exact_v<T>) {
    return m;
  } else {
    return to_float(m);
  }
}

template <class T>
Vector<T> as_backend(const Vector<Exact>& v) {
  if constexpr (is_exact_v<T>) {
    return v;
  } else {
    return to_float(v);
  }
}

template <class T>
GeneratorSet<T> as_backend(const GeneratorSet<Exact>& g) {
  std::vector<Matrix<T>> out;
  for (const auto& a : g.generators()) out.push_back(as_backend<T>(a));
  return {g.n(), std::move(out)};
}

template <class T>
SwitchedSystem<T> as_backend(const SwitchedSystem<Exact>& s) {
  std::vector<Mode<T>> modes;
  for (const auto& m : s.modes())
    modes.push_back({as_backend<T>(m.a), m.b ? std::optional<Matrix<T>>(as_backend<T>(*m.b)) : std::nullopt});
  std::optional<Matrix<T>> b;
  if (s.shared_b()) b = as_backend<T>(*s.shared_b());
  return SwitchedSystem<T>(s.n(), std::move(modes), std::move(b));
}

SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions o;
  o.trials = cfg.trials;
  o.seed = cfg.seed;
  o.tol = cfg.tol;
  return o;
}

struct Result {
  Json body;
  bool definite = true;
};

const Json* input_field(const Json& in, const char* key) {
  auto it = in.find(key);
  return it == in.end() || it->is_null() ? nullptr : &*it;
}

std::size_t target_dim(const RunConfig& cfg, const char* context) {
  if (cfg.r) return *cfg.r;
  if (const Json* r = input_field(cfg.input, "r")) {
    if (!r->is_number_unsigned()) throw SchemaError("$.r", "expected a positive integer");
    return r->get<std::size_t>();
  }
  throw SchemaError("$.r", std::string("required for ") + context + " (or pass --r)");
}

// "B" as a matrix of columns, or a flat vector for a single column.
Matrix<Exact> input_columns(const Json& j, const std::string& path, std::size_t n) {
  Matrix<Exact> m;
  if (j.is_array() && !j.empty() && (j[0].is_number() || j[0].is_string())) {
    m = Matrix<Exact>::column_vector(io::parse_vector(j, path));
  } else {
    m = io::parse_matrix(j, path);
  }
  if (m.rows() != n) throw SchemaError(path, "expected " + std::to_string(n) + " rows");
  return m;
}

Vector<Exact> input_vector(const Json& j, const std::string& path, std::size_t n) {
  auto v = io::parse_vector(j, path);
  if (v.size() != n) throw SchemaError(path, "expected " + std::to_string(n) + " entries");
  return v;
}

template <class T>
Result cmd_closure(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  const auto a = closure(g, cfg.tol);
  Json basis = Json::array();
  for (const auto& e : a.elements) basis.push_back(io::to_json(e));
  const std::size_t n = g.n();
  return {{{"dim", a.dim()}, {"n_squared", n * n}, {"transitive", a.dim() == n * n}, {"basis", basis}}};
}

template <class T>
Result cmd_orbit(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  Subspace<T> seed;
  if (const Json* b = input_field(cfg.input, "b")) {
    seed = Subspace<T>::span(g.n(), {as_backend<T>(input_vector(*b, "$.b", g.n()))}, cfg.tol);
  } else if (const Json* bb = input_field(cfg.input, "B")) {
    seed = Subspace<T>::span_columns(as_backend<T>(input_columns(*bb, "$.B", g.n())), cfg.tol);
  } else {
    throw SchemaError("$.b", "orbit needs a vector \"b\" or a matrix \"B\"");
  }
  const auto o = orbit(g, seed, cfg.tol);
  return {{{"orbit", io::to_json(o)}, {"full", o.is_full()}}};
}

template <class T>
Result certificate_result(const GeneratorSet<T>& g, const Certificate<T>& c, const Tolerance& tol) {
  return {{{"certificate", io::to_json(c)}, {"rechecked", recheck(g, c, tol)}}, c.verdict != Verdict::undetermined};
}

template <class T>
Result cmd_cyclic_vector(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  if (const Json* b = input_field(cfg.input, "b"))
    return certificate_result(g, is_cyclic_vector(g, as_backend<T>(input_vector(*b, "$.b", g.n())), cfg.tol), cfg.tol);
  return certificate_result(g, decide_cyclic_vector(g, search_options(cfg)), cfg.tol);
}

template <class T>
Result cmd_cyclic_subspace(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  if (const Json* b = input_field(cfg.input, "B")) {
    const auto s = Subspace<T>::span_columns(as_backend<T>(input_columns(*b, "$.B", g.n())), cfg.tol);
    return certificate_result(g, is_cyclic_subspace(g, s, cfg.tol), cfg.tol);
  }
  const std::size_t r = target_dim(cfg, "cyclic-subspace without \"B\"");
  if (r < 1 || r > g.n()) throw SchemaError("$.r", "must lie in 1.." + std::to_string(g.n()));
  return certificate_result(g, decide_cyclic_subspace(g, r, search_options(cfg)), cfg.tol);
}

template <class T>
Result cmd_decompose(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  SplitOptions split;
  split.seed = cfg.seed;
  split.tol = cfg.tol;
  return {io::to_json(decompose(g, split, search_options(cfg)))};
}

template <class T>
Result cmd_hautus(const RunConfig& cfg) {
  const auto g = as_backend<T>(io::parse_generators(cfg.input));
  std::size_t r = 1;
  if (cfg.r || input_field(cfg.input, "r")) r = target_dim(cfg, "hautus");
  if (g.empty()) throw SchemaError("$.generators", "the rank-drop locus needs at least one generator");
  const auto locus = rank_drop_locus(g, cfg.tol);
  if (r < 1 || r > g.n()) throw SchemaError("$.r", "must lie in 1.." + std::to_string(g.n()));
  const bool necessary = hautus_necessary(locus, r);
  const auto lie = lie_closure(g, cfg.tol);
  const bool solvable = is_solvable(lie);
  const HautusVerdict v = hautus_verdict(necessary, solvable);
  return {{{"r", r},
           {"verdict", to_string(v)},
           {"necessary", necessary},
           {"solvable", solvable},
           {"lie_dim", lie.dim()},
           {"derived_dims", lie.derived_dims},
           {"locus", io::to_json(locus)}},
          v != HautusVerdict::necessary_holds_only};
}

template <class T>
Result cmd_reach(const RunConfig& cfg) {
  const auto sys = as_backend<T>(io::parse_system(cfg.input));
  const auto r = reachable_subspace(sys, cfg.tol);
  return {{{"reachable", io::to_json(r)}, {"globally_reachable", r.is_full()}}};
}

template <class T>
Result cmd_design(const RunConfig& cfg) {
  GeneratorSet<Exact> g;
  if (input_field(cfg.input, "generators")) {
    g = io::parse_generators(cfg.input);
  } else {
    g = io::parse_system(cfg.input).generators();
  }
  const auto d = design_inputs(as_backend<T>(g), search_options(cfg));
  return {io::to_json(d), d.certified};
}

Result cmd_mrb(const RunConfig& cfg) {
  if (cfg.backend != Backend::exact) throw InputError("mrb analyze runs on the exact backend only");
  const auto r = mrb::analyze(io::parse_mrb(cfg.input), search_options(cfg));
  return {io::to_json(r), r.cyclic_vector.verdict != Verdict::undetermined};
}

template <class T>
Result dispatch(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "closure") return cmd_closure<T>(cfg);
  if (c == "orbit") return cmd_orbit<T>(cfg);
  if (c == "cyclic-vector") return cmd_cyclic_vector<T>(cfg);
  if (c == "cyclic-subspace") return cmd_cyclic_subspace<T>(cfg);
  if (c == "decompose") return cmd_decompose<T>(cfg);
  if (c == "hautus") return cmd_hautus<T>(cfg);
  if (c == "reach") return cmd_reach<T>(cfg);
  if (c == "design") return cmd_design<T>(cfg);
  if (c == "mrb analyze") return cmd_mrb(cfg);
  throw InputError("unknown command \"" + c + "\"");
}

std::string backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

void render_text(const Json& j, const std::string& indent, std::ostringstream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    const bool nested = (v.is_object() && !v.empty()) || (v.is_array() && v.dump().size() > 96);
    if (!nested) {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
      out << indent << key << ":\n";
      render_text(v, indent + "  ", out);
    }
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"closure", "orbit",  "cyclic-vector", "cyclic-subspace", "decompose",
                                                 "hautus",  "reach",  "design",        "mrb analyze"};
  return names;
}

Json config_json(const RunConfig& cfg) {
  Json c = {{"seed", cfg.seed},
            {"trials", cfg.trials},
            {"tol_rank", cfg.tol.rank},
            {"tol_gap", cfg.tol.gap},
            {"backend", backend_name(cfg.backend)}};
  c["r"] = cfg.r ? Json(*cfg.r) : Json(nullptr);
  return c;
}

RunConfig config_from_report(const Json& report) {
  RunConfig cfg;
  try {
    cfg.command = report.at("command").get<std::string>();
    const Json& c = report.at("config");
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.trials = c.at("trials").get<std::size_t>();
    cfg.tol.rank = c.at("tol_rank").get<double>();
    cfg.tol.gap = c.at("tol_gap").get<double>();
    const std::string b = c.at("backend").get<std::string>();
    if (b != "exact" && b != "float") throw SchemaError("$.config.backend", "expected \"exact\" or \"float\"");
    cfg.backend = b == "exact" ? Backend::exact : Backend::float_;
    if (c.contains("r") && !c.at("r").is_null()) cfg.r = c.at("r").get<std::size_t>();
    cfg.input = report.at("input");
  } catch (const Json::exception& e) {
    throw SchemaError("$", std::string("not a report: ") + e.what());
  }
  return cfg;
}

Outcome run(const RunConfig& cfg) {
  Outcome out;
  Json report = {{"schema", io::kSchema}, {"command", cfg.command}, {"config", config_json(cfg)}, {"input", cfg.input}};
  auto fail = [&](int code, const char* kind, const std::string& message) {
    out.exit_code = code;
    report["status"] = code == kInconclusive ? "inconclusive" : "error";
    report["error"] = {{"kind", kind}, {"message", message}};
  };
  try {
    cfg.tol.validate();
    if (cfg.trials == 0) throw InputError("trials must be positive");
    const Result r = cfg.backend == Backend::exact ? dispatch<Exact>(cfg) : dispatch<Float>(cfg);
    out.exit_code = r.definite ? kDefinite : kInconclusive;
    report["status"] = r.definite ? "definite" : "inconclusive";
    report["result"] = r.body;
  } catch (const SchemaError& e) {
    fail(kInputError, "schema", e.what());
  } catch (const PreconditionError& e) {
    fail(kInputError, "precondition", e.what());
  } catch (const InputError& e) {
    fail(kInputError, "input", e.what());
  } catch (const Inconclusive& e) {
    fail(kInconclusive, "inconclusive", e.what());
  } catch (const std::exception& e) {
    fail(kInputError, "internal", e.what());
  }
  out.report = std::move(report);
  return out;
}

std::string render(const Json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream out;
  render_text(report, "", out);
  return out.str();
}

std::vector<CorpusCase> run_corpus(const std::filesystem::path& dir, bool update) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("corpus directory not found: " + dir.string());
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 11 && name.ends_with(".input.json")) inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());

  std::vector<CorpusCase> cases;
  for (const auto& p : inputs) {
    std::string name = p.filename().string();
    name.resize(name.size() - 11);
    CorpusCase c{name, false, ""};
    try {
      const Json spec = io::parse(read_file(p), p.string());
      RunConfig cfg;
      cfg.command = spec.at("command").get<std::string>();
      cfg.input = spec.at("input");
      if (spec.contains("seed")) cfg.seed = spec.at("seed").get<std::uint64_t>();
      if (spec.contains("trials")) cfg.trials = spec.at("trials").get<std::size_t>();
      if (spec.contains("r")) cfg.r = spec.at("r").get<std::size_t>();
      if (spec.contains("backend")) cfg.backend = spec.at("backend") == "float" ? Backend::float_ : Backend::exact;
      const Outcome o = run(cfg);
      const std::string got = render(o.report, Format::json);
      const fs::path expected = dir / (name + ".expected.json");
      if (update) {
        std::ofstream(expected, std::ios::binary) << got;
        c.passed = true;
        c.message = "updated";
      } else if (!fs::exists(expected)) {
        c.message = "missing " + expected.filename().string();
      } else if (read_file(expected) != got) {
        c.message = "report differs from " + expected.filename().string();
      } else {
        c.passed = true;
      }
      if (spec.contains("exit") && spec.at("exit").get<int>() != o.exit_code) {
        c.passed = false;
        c.message = "exit code " + std::to_string(o.exit_code) + ", expected " + std::to_string(spec.at("exit").get<int>());
      }
    } catch (const std::exception& e) {
      c.message = e.what();
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace cyclica::app
