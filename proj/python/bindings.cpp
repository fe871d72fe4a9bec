#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chromalg/error.hpp"
#include "chromalg/suites.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace chromalg;

namespace {

RunConfig make_config(int p, int n, int xdeg, int uprec, const std::string& selection, std::uint64_t seed, int samples) {
  RunConfig c;
  c.p = p;
  c.n = n;
  c.xdeg = xdeg;
  c.uprec = uprec;
  c.selection = selection;
  c.seed = seed;
  c.samples = samples;
  c.format = Format::Json;
  return c;
}

FGL named_law(const std::string& law, int n, const TowerPtr& T, int N) {
  if (law == "honda") return honda_fgl(n, T, N);
  if (law == "e") return e_law(n, T, N);
  throw Error(ErrorCode::ConfigError, "law must be e or honda, got " + law);
}

std::string run(const std::string& suite, int p, int n, int xdeg, int uprec, std::string selection, std::uint64_t seed,
                int samples) {
  if (selection.empty()) selection = suite == "fgl" || suite == "iso" ? "check" : suite == "spaces" ? "chern" : "all";
  const RunConfig c = make_config(p, n, xdeg, uprec, selection, seed, samples);
  if (suite == "fgl") return render(run_fgl(c), Format::Json);
  if (suite == "iso") return render(run_iso(c), Format::Json);
  if (suite == "hopf") return render(run_hopf(c), Format::Json);
  if (suite == "comod") return render(run_comod(c), Format::Json);
  if (suite == "spaces") return render(run_spaces(c), Format::Json);
  if (suite == "all") return render(run_all(c), Format::Json);
  throw Error(ErrorCode::ConfigError, "unknown suite " + suite);
}

std::string law_json(const std::string& law, int p, int n, int N, int uprec, bool pseries) {
  RunConfig c = make_config(p, n, 0, uprec, "all", 1, 1);
  validate(c, {});
  if (N < 2) throw Error(ErrorCode::ConfigError, "N must be at least 2");
  const TowerPtr T = base_tower(c);
  const FGL F = named_law(law, n, T, N);
  nlohmann::json j;
  j["tower"] = T->descriptor();
  j["series"] = pseries ? p_series(F).to_json() : F.F.to_json();
  return j.dump();
}

std::string solve(int p, int n, int xdeg, int uprec) {
  RunConfig c = make_config(p, n, xdeg, uprec, "all", 1, 1);
  validate(c, {});
  const int N = (xdeg ? xdeg : default_xdeg(p, n)) + 1;
  c.uprec = uprec ? uprec : default_uprec(n);
  const TowerPtr T = base_tower(c);
  const FGLIso iso = solve_phi(e_law(n, T, N), honda_fgl(n, T, N), n, {N, c.uprec});
  const IsoReport r = verify_iso(iso);
  nlohmann::json j;
  j["base"] = T->descriptor();
  j["tower"] = iso.tower->descriptor();
  j["N"] = N;
  j["phi"] = iso.phi.to_json();
  j["steps"] = iso.steps;
  j["verified"] = r.ok && r.inverse_ok;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_chromalg, m) {
  m.doc() = "Bindings for the chromalg verification library; results cross as JSON strings.";
  py::register_exception<Error>(m, "ChromalgError", PyExc_ValueError);

  m.def("run", &run, py::arg("suite"), py::arg("p") = 3, py::arg("n") = 1, py::arg("xdeg") = 0, py::arg("uprec") = 0,
        py::arg("selection") = "", py::arg("seed") = 1, py::arg("samples") = 50);
  m.def("law", [](const std::string& law, int p, int n, int N, int uprec) { return law_json(law, p, n, N, uprec, false); },
        py::arg("law"), py::arg("p") = 3, py::arg("n") = 1, py::arg("N") = 10, py::arg("uprec") = 0);
  m.def("p_series", [](const std::string& law, int p, int n, int N, int uprec) { return law_json(law, p, n, N, uprec, true); },
        py::arg("law"), py::arg("p") = 3, py::arg("n") = 1, py::arg("N") = 10, py::arg("uprec") = 0);
  m.def("solve", &solve, py::arg("p") = 3, py::arg("n") = 1, py::arg("xdeg") = 0, py::arg("uprec") = 0);
  m.def("coaction_tables", [](int p, int n) {
    RunConfig c;
    c.p = p;
    c.n = n;
    return coaction_tables(c);
  }, py::arg("p") = 3, py::arg("n") = 1);
  m.attr("REPORT_SCHEMA") = kReportSchema;
}
