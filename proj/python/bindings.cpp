#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclica/app.hpp"

namespace py = pybind11;
using namespace cyclica;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

Matrix<Exact> to_matrix(const StrMatrix& rows) {
  std::vector<Vector<Exact>> out;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("ragged matrix");
    Vector<Exact> v;
    for (const auto& s : r) v.emplace_back(GaussianRational::parse_rational(s));
    out.push_back(std::move(v));
  }
  return Matrix<Exact>::from_rows(cols, out);
}

StrMatrix to_strings(const Matrix<Exact>& m) {
  StrMatrix out;
  for (const auto& r : m.row_list()) {
    std::vector<std::string> row;
    for (const auto& x : r) row.push_back(x.to_string());
    out.push_back(std::move(row));
  }
  return out;
}

GeneratorSet<Exact> to_generators(const std::vector<StrMatrix>& gens, std::size_t n) {
  std::vector<Matrix<Exact>> g;
  for (const auto& m : gens) g.push_back(to_matrix(m));
  return {n, std::move(g)};
}

mrb::InertiaSpec to_inertia(const std::vector<std::string>& c) {
  std::vector<Rational> v;
  for (const auto& s : c) v.push_back(GaussianRational::parse_rational(s));
  return mrb::InertiaSpec(std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cyclicity tests for finitely generated matrix algebras";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<Inconclusive>(m, "Inconclusive", PyExc_RuntimeError);

  m.def("commands", &app::commands);

  m.def(
      "run",
      [](const std::string& command, const std::string& input, std::uint64_t seed, std::size_t trials,
         double tol_rank, double tol_gap, const std::string& backend, std::optional<std::size_t> r) {
        app::RunConfig cfg;
        cfg.command = command;
        cfg.input = io::parse(input, "input");
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.tol.rank = tol_rank;
        cfg.tol.gap = tol_gap;
        if (backend != "exact" && backend != "float") throw InputError("backend must be \"exact\" or \"float\"");
        cfg.backend = backend == "float" ? app::Backend::float_ : app::Backend::exact;
        cfg.r = r;
        app::Outcome out;
        {
          py::gil_scoped_release release;
          out = app::run(cfg);
        }
        return py::make_tuple(out.exit_code, app::render(out.report, app::Format::json));
      },
      py::arg("command"), py::arg("input"), py::arg("seed") = 0, py::arg("trials") = 64, py::arg("tol_rank") = 1e-9,
      py::arg("tol_gap") = 1e-7, py::arg("backend") = "exact", py::arg("r") = py::none(),
      "Run one CLI command on a JSON input; returns (exit_code, report_json).");

  m.def(
      "closure_dim",
      [](const std::vector<StrMatrix>& gens, std::size_t n) { return closure(to_generators(gens, n)).dim(); },
      py::arg("generators"), py::arg("n"));

  m.def(
      "orbit_dim",
      [](const std::vector<StrMatrix>& gens, std::size_t n, const std::vector<std::string>& b) {
        Vector<Exact> v;
        for (const auto& s : b) v.emplace_back(GaussianRational::parse_rational(s));
        return orbit(to_generators(gens, n), v).dim();
      },
      py::arg("generators"), py::arg("n"), py::arg("b"));

  m.def(
      "coupling",
      [](const std::vector<std::string>& c, std::size_t j, std::size_t k) {
        return mrb::coupling(to_inertia(c), j, k).get_str();
      },
      py::arg("C"), py::arg("j"), py::arg("k"));

  m.def(
      "lambda_operator",
      [](const std::vector<std::string>& c, std::size_t i, std::size_t j, const std::string& convention) {
        if (convention != "displayed" && convention != "table")
          throw InputError("convention must be \"displayed\" or \"table\"");
        const auto conv = convention == "table" ? mrb::Convention::table : mrb::Convention::displayed;
        return to_strings(mrb::lambda_operator(to_inertia(c), {i, j}, conv));
      },
      py::arg("C"), py::arg("i"), py::arg("j"), py::arg("convention") = "displayed");

  m.def(
      "char_poly",
      [](const StrMatrix& a) {
        std::vector<std::string> out;
        const auto p = char_poly(to_matrix(a));
        for (const auto& x : p.coefficients()) out.push_back(x.to_string());
        return out;
      },
      py::arg("matrix"), "Coefficients of det(xI - A), ascending degree.");
}
