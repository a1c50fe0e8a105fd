#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rssinfo/closed_form.hpp"
#include "rssinfo/distributions.hpp"
#include "rssinfo/errors.hpp"
#include "rssinfo/mc_oracle.hpp"
#include "rssinfo/measures.hpp"
#include "rssinfo/reports.hpp"

namespace py = pybind11;
using namespace rssinfo;

namespace {

MeasureOptions make_options(bool force_numeric, const std::string& space, double abs_tol,
                            double rel_tol) {
  MeasureOptions o;
  o.force_numeric = force_numeric;
  if (space == "u") {
    o.space = Space::kU;
  } else if (space == "x") {
    o.space = Space::kX;
  } else if (space != "default") {
    throw std::invalid_argument("space must be 'default', 'u' or 'x': " + space);
  }
  o.quad.abs_tol = abs_tol;
  o.quad.rel_tol = rel_tol;
  return o;
}

py::dict to_dict(const MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["error"] = r.error_estimate;
  d["method"] = std::string(to_string(r.method));
  d["converged"] = r.diagnostics.converged;
  d["integrals"] = r.diagnostics.integrals;
  return d;
}

py::dict to_dict(const EstimateResult& r) {
  py::dict d;
  d["estimate"] = r.estimate;
  d["std_error"] = r.std_error;
  d["replications"] = r.replications;
  d["divergent"] = r.divergent;
  return d;
}

py::list table_rows(const Table& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::dict d;
    for (std::size_t c = 0; c < t.columns.size(); ++c) d[py::str(t.columns[c])] = row[c];
    rows.append(d);
  }
  return rows;
}

#define RSSINFO_OPTION_ARGS                                                        \
  py::arg("force_numeric") = false, py::arg("space") = "default",                  \
      py::arg("abs_tol") = QuadratureConfig{}.abs_tol,                             \
      py::arg("rel_tol") = QuadratureConfig{}.rel_tol

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shannon, Renyi and Kullback-Leibler measures of ranked set samples";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DivergentIntegral>(m, "DivergentIntegral", PyExc_ArithmeticError);
  py::register_exception<NonFiniteIntegrand>(m, "NonFiniteIntegrand", PyExc_ArithmeticError);

  m.def("k", &k_direct, py::arg("n"));
  m.def("k_recursive", &k_recursive, py::arg("n"));
  m.def("d_n", &d_n, py::arg("n"));
  m.def("psi_bound", &psi_bound, py::arg("alpha"), py::arg("n"));
  m.def("eta", &eta, py::arg("a"));

  m.def(
      "distribution_spec",
      [](const std::string& text) { return parse_distribution(text)->spec(); },
      py::arg("dist"));
  m.def(
      "pdf", [](const std::string& dist, double x) { return parse_distribution(dist)->pdf(x); },
      py::arg("dist"), py::arg("x"));
  m.def(
      "quantile",
      [](const std::string& dist, double u) { return parse_distribution(dist)->quantile(u); },
      py::arg("dist"), py::arg("u"));
  m.def(
      "design_spec", [](const std::string& text) { return parse_design(text).spec(); },
      py::arg("design"));

  m.def(
      "shannon",
      [](const std::string& design, const std::string& dist, bool force_numeric,
         const std::string& space, double abs_tol, double rel_tol) {
        return to_dict(shannon(parse_design(design), *parse_distribution(dist),
                               make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("design"), py::arg("dist"), RSSINFO_OPTION_ARGS);
  m.def(
      "renyi",
      [](const std::string& design, const std::string& dist, double alpha, bool force_numeric,
         const std::string& space, double abs_tol, double rel_tol) {
        return to_dict(renyi(parse_design(design), *parse_distribution(dist), alpha,
                             make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("design"), py::arg("dist"), py::arg("alpha"), RSSINFO_OPTION_ARGS);
  m.def(
      "kl",
      [](const std::string& design, const std::string& dist, bool force_numeric,
         const std::string& space, double abs_tol, double rel_tol) {
        return to_dict(kl_srs_vs_design(parse_design(design), *parse_distribution(dist),
                                        make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("design"), py::arg("dist"), RSSINFO_OPTION_ARGS);
  m.def(
      "kl_two_sample",
      [](const std::string& design_x, const std::string& f, const std::string& design_y,
         const std::string& g, bool force_numeric, const std::string& space, double abs_tol,
         double rel_tol) {
        return to_dict(kl_two_sample(parse_design(design_x), *parse_distribution(f),
                                     parse_design(design_y), *parse_distribution(g),
                                     make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("design_x"), py::arg("f"), py::arg("design_y"), py::arg("g"),
      RSSINFO_OPTION_ARGS);
  m.def(
      "kld",
      [](const std::string& design_x, const std::string& f, const std::string& design_y,
         const std::string& g, bool force_numeric, const std::string& space, double abs_tol,
         double rel_tol) {
        return to_dict(kld_symmetric(parse_design(design_x), *parse_distribution(f),
                                     parse_design(design_y), *parse_distribution(g),
                                     make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("design_x"), py::arg("f"), py::arg("design_y"), py::arg("g"),
      RSSINFO_OPTION_ARGS);
  m.def(
      "a_n",
      [](const std::string& f, const std::string& g, int n, bool force_numeric,
         const std::string& space, double abs_tol, double rel_tol) {
        return to_dict(a_n(*parse_distribution(f), *parse_distribution(g), n,
                           make_options(force_numeric, space, abs_tol, rel_tol)));
      },
      py::arg("f"), py::arg("g"), py::arg("n"), RSSINFO_OPTION_ARGS);

  m.def(
      "mc_entropy",
      [](const std::string& design, const std::string& dist, std::int64_t replications,
         std::uint64_t seed) {
        SimConfig sim;
        sim.replications = replications;
        sim.seed = seed;
        return to_dict(mc_entropy(parse_design(design), *parse_distribution(dist), sim));
      },
      py::arg("design"), py::arg("dist"), py::arg("replications") = SimConfig{}.replications,
      py::arg("seed") = SimConfig{}.seed);
  m.def(
      "mc_renyi",
      [](const std::string& design, const std::string& dist, double alpha,
         std::int64_t replications, std::uint64_t seed) {
        SimConfig sim;
        sim.replications = replications;
        sim.seed = seed;
        return to_dict(mc_renyi(parse_design(design), *parse_distribution(dist), alpha, sim));
      },
      py::arg("design"), py::arg("dist"), py::arg("alpha"),
      py::arg("replications") = SimConfig{}.replications, py::arg("seed") = SimConfig{}.seed);

  m.def(
      "table_k", [](int n_max) { return table_rows(table_k(n_max)); }, py::arg("n_max") = 20);
  m.def(
      "table_dn", [](int n_max) { return table_rows(table_dn(n_max)); }, py::arg("n_max") = 20);

  m.def("errata", []() {
    py::list out;
    for (const auto& c : errata_checks()) {
      py::dict d;
      d["id"] = c.id;
      d["description"] = c.description;
      d["printed"] = c.printed;
      d["corrected"] = c.corrected;
      d["oracle"] = c.oracle;
      d["core"] = c.core;
      d["printed_matches"] = c.printed_matches();
      d["corrected_matches"] = c.corrected_matches();
      out.append(d);
    }
    return out;
  });
}
