#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cellposet/certify.hpp"
#include "cellposet/io.hpp"
#include "cellposet/realize.hpp"

namespace py = pybind11;
using namespace cellposet;

namespace {

py::dict report_to_dict(const ConditionReport& rep) {
  py::dict out;
  out["admissible"] = rep.admissible;
  out["first_failing"] = rep.first_failing();
  py::list failures;
  for (const auto& f : rep.failures) {
    py::dict item;
    item["condition"] = f.condition;
    item["witness"] = f.witness;
    failures.append(item);
  }
  out["failures"] = failures;
  return out;
}

py::dict poset_summary(const SimplicialPoset& p) {
  py::dict out;
  out["d"] = p.d();
  out["f"] = f_vector(p);
  out["h"] = h_vector(p);
  out["elements"] = p.size();
  out["facets"] = f_vector(p).back();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "h-vectors of simplicial cell balls: checker, realizer, certifier";
  m.attr("__version__") = "0.1.0";

  m.def("check_ball", [](const HVector& h) { return report_to_dict(check_ball(h)); },
        py::arg("h"), "Evaluate the ball conditions (1)-(7) on an integer vector.");
  m.def("check_sphere", [](const HVector& h) { return report_to_dict(check_sphere(h)); },
        py::arg("h"), "Evaluate the sphere conditions (1)-(3) on an integer vector.");
  m.def("boundary_h", [](const HVector& h) { return boundary_h(h); }, py::arg("h"),
        "The boundary transform dh_i = (h_0+...+h_i) - (h_d+...+h_{d-i}).");
  m.def("width", [](const HVector& h) { return width(h); }, py::arg("h"));
  m.def("width_formula", [](const HVector& h) { return width_formula(h); }, py::arg("h"));
  m.def("init_number", [](const HVector& h) { return init_number(h); }, py::arg("h"));

  m.def(
      "realize",
      [](const HVector& h) {
        RealizeResult r = realize(h);
        py::dict out = poset_summary(r.poset);
        out["case"] = r.case_id;
        out["even_sum"] = r.even_sum;
        out["poset"] = write_poset(r.poset);
        out["trace"] = write_trace(r.trace);
        if (r.case3) {
          py::dict det;
          det["n"] = r.case3->n;
          det["m"] = r.case3->m;
          det["s"] = r.case3->s;
          det["gamma"] = r.case3->gamma;
          det["core"] = r.case3->delta_bar;
          det["h_prime"] = r.case3->h_prime;
          det["h_dprime"] = r.case3->h_dprime;
          out["case3"] = det;
        }
        return out;
      },
      py::arg("h"),
      "Construct a ball with the given admissible h-vector; returns the poset "
      "and trace as text plus build statistics.");

  m.def(
      "verify",
      [](const std::string& poset_text, const std::string& trace_text, const HVector& h) {
        Certificate cert{parse_poset(poset_text), parse_trace(trace_text), h};
        CertifyReport rep = certify_ball(cert);
        py::dict out;
        out["ok"] = rep.overall;
        py::list checks;
        for (const auto& c : rep.checks) {
          py::dict item;
          item["name"] = c.name;
          item["pass"] = c.pass;
          item["detail"] = c.detail;
          checks.append(item);
        }
        out["checks"] = checks;
        return out;
      },
      py::arg("poset"), py::arg("trace"), py::arg("h"),
      "Run the full certificate checks on a poset + trace + h-vector triple.");

  m.def(
      "info",
      [](const std::string& poset_text) {
        SimplicialPoset p = parse_poset(poset_text);
        ValidationReport v = validate(p);
        py::dict out;
        out["valid"] = v.ok;
        if (!v.ok) {
          out["reason"] = v.reason;
          return out;
        }
        out = poset_summary(p);
        out["valid"] = true;
        out["boundary_h"] = boundary_h(h_vector(p));
        BoundaryResult b = boundary(p);
        out["boundary_empty"] = b.ideal.members.empty();
        if (!b.ideal.members.empty()) out["boundary"] = poset_summary(b.view);
        return out;
      },
      py::arg("poset"), "Face counts and boundary data of a poset given as file text.");

  m.def(
      "sweep",
      [](int d_max, long long facet_max) {
        SweepReport rep = cross_check_small(d_max, facet_max);
        py::dict out;
        out["all_certified"] = rep.all_certified;
        out["admissible"] = rep.admissible_count;
        out["inadmissible"] = rep.inadmissible_count;
        out["table"] = rep.to_tsv();
        return out;
      },
      py::arg("d_max"), py::arg("facet_max"),
      "Enumerate small h-vectors; realize and certify every admissible one.");

  py::register_exception<ParseError>(m, "CellposetParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "CellposetPreconditionError", PyExc_ValueError);
}
