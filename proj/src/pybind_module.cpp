// Python bindings: the catalog maps, induced direction machinery, the
// classifier and the closed-curve construction, all keyed by map name.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "c1homeo/errors.hpp"
#include "c1homeo/interpolation.hpp"
#include "c1homeo/verifier.hpp"

namespace py = pybind11;
using namespace c1homeo;

namespace {

ResolutionParams res_from_dict(const py::dict& d) {
  ResolutionParams r;
  for (auto item : d) {
    auto key = item.first.cast<std::string>();
    if (key == "tail_length")
      r.tail_length = item.second.cast<int>();
    else if (key == "dir_tolerance")
      r.dir_tolerance = item.second.cast<double>();
    else if (key == "slope_tolerance")
      r.slope_tolerance = item.second.cast<double>();
    else if (key == "c1_span")
      r.c1_span = item.second.cast<double>();
    else if (key == "c1_ratio")
      r.c1_ratio = item.second.cast<double>();
    else if (key == "dir_tail_levels")
      r.dir_tail_levels = item.second.cast<int>();
    else if (key == "h_grid")
      r.h_grid = item.second.cast<std::vector<double>>();
    else
      throw GeomError("resolution: unknown key " + key);
  }
  r.validate();
  return r;
}

py::dict verdict_to_dict(const Verdict& v) {
  py::dict d;
  d["status"] = std::string(to_string(v.status));
  d["reason"] = v.reason;
  py::dict res;
  for (const auto& [k, val] : v.residuals) res[py::str(k)] = val;
  d["residuals"] = res;
  if (v.witness) d["witness"] = *v.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_c1homeo, m) {
  m.doc() = "plane homeomorphism verifier: maps, induced direction checks, "
            "closed C1 interpolation";

  py::register_exception<GeomError>(m, "GeomError");

  m.def(
      "apply_map",
      [](const std::string& name, double x, double y) {
        Point2 q = map_by_name(name).fwd({x, y});
        return py::make_tuple(q.x, q.y);
      },
      py::arg("name"), py::arg("x"), py::arg("y"),
      "Evaluate the named map at a point.");

  m.def(
      "apply_inverse",
      [](const std::string& name, double x, double y) {
        Point2 q = map_by_name(name).inv({x, y});
        return py::make_tuple(q.x, q.y);
      },
      py::arg("name"), py::arg("x"), py::arg("y"),
      "Evaluate the inverse of the named map at a point.");

  m.def(
      "induced_direction",
      [](const std::string& name, double x, double y, double theta,
         const py::dict& resolution) {
        ResolutionParams r = res_from_dict(resolution);
        SlopeEstimate e = induced_dir(map_by_name(name), {x, y},
                                      ProjDir{normalize_dir(theta)}, r);
        py::dict d;
        d["exists"] = e.exists;
        d["theta"] = e.dir.theta;
        d["residual"] = e.residual;
        return d;
      },
      py::arg("name"), py::arg("x"), py::arg("y"), py::arg("theta"),
      py::arg("resolution") = py::dict(),
      "Direction of the image of a line through (x, y), as a dict.");

  m.def(
      "induced_profile_csv",
      [](const std::string& name, double x, double y, int samples,
         const py::dict& resolution) {
        ResolutionParams r = res_from_dict(resolution);
        return profile_to_csv(
            induced_map_profile(map_by_name(name), {x, y}, samples, r));
      },
      py::arg("name"), py::arg("x"), py::arg("y"), py::arg("samples") = 36,
      py::arg("resolution") = py::dict(),
      "CSV table theta_in,theta_out,residual,exists of the induced map at a "
      "point.");

  m.def(
      "classify_json",
      [](const std::string& name, const py::dict& resolution) {
        ResolutionParams r = res_from_dict(resolution);
        return report_to_json(classify(map_by_name(name), default_battery(), r));
      },
      py::arg("name"), py::arg("resolution") = py::dict(),
      "Full classification report for the named map as a JSON string.");

  m.def(
      "construct_curve",
      [](const std::string& seq_csv, int want, int samples,
         const py::dict& resolution) {
        ResolutionParams r = res_from_dict(resolution);
        ClosedCurveResult c =
            construct_closed_c1(sequence_from_csv(seq_csv), want, r);
        Verdict v = validate_construction(c, r);
        py::dict d;
        d["curve_csv"] =
            curve_samples_to_csv(sample_curve(c.curve, samples, r));
        d["svg"] = construction_to_svg(c);
        d["validation"] = verdict_to_dict(v);
        return d;
      },
      py::arg("seq_csv"), py::arg("want") = 8, py::arg("samples") = 2048,
      py::arg("resolution") = py::dict(),
      "Interpolate a convergent tangency sequence by a closed C1 curve; "
      "returns sampled CSV, an SVG rendering and the validation verdict.");

  m.def(
      "is_transverse_csv",
      [](const std::string& seq_csv, const py::dict& resolution) {
        ResolutionParams r = res_from_dict(resolution);
        return verdict_to_dict(is_transverse(sequence_from_csv(seq_csv), r));
      },
      py::arg("seq_csv"), py::arg("resolution") = py::dict(),
      "Transversality verdict for a sequence given in CSV form.");

  m.def("default_battery_json", &default_battery_json,
        "The built-in curve/sequence/point battery as JSON.");
}
