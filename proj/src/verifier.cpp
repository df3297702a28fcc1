#include "c1homeo/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "c1homeo/errors.hpp"
#include "json.hpp"

namespace c1homeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double probe_scale(Point2 p) {
  double s = std::hypot(p.x, p.y);
  return s < 1e-9 ? 1.0 : s;
}

std::string point_str(Point2 p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.12g, %.12g)", p.x, p.y);
  return buf;
}

ParamCurve poly_graph(const std::vector<double>& coeffs, double a, double b,
                      const std::string& name) {
  auto f = [coeffs](double t) {
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
  };
  auto fp = [coeffs](double t) {
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 1;) acc = acc * t + coeffs[i] * static_cast<double>(i);
    return acc;
  };
  return graph_curve(f, fp, a, b, name);
}

ParamCurve osc_graph(int power, double half_width, double shift_y,
                     const std::string& name) {
  auto f = [power, shift_y](double t) {
    return t == 0.0 ? shift_y : shift_y + std::pow(t, power) * std::sin(1.0 / t);
  };
  auto fp = [power](double t) {
    if (t == 0.0) return 0.0;
    return power * std::pow(t, power - 1) * std::sin(1.0 / t) -
           std::pow(t, power - 2) * std::cos(1.0 / t);
  };
  return graph_curve(f, fp, -half_width, half_width, name);
}

DirectionSequence figure1_sequence(double base_deg, int count) {
  DirectionSequence s;
  double b = base_deg * kPi / 180.0;
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{normalize_dir(b)};
  for (int k = 1; k <= count; ++k) {
    double rk = 1.0 / ((2.0 * k + 1.0) * kPi);
    s.entries.push_back(
        {{rk * std::cos(b), rk * std::sin(b)}, ProjDir{normalize_dir(b + kPi / 4.0)}});
  }
  return s;
}

DirectionSequence harmonic_sequence(int count) {
  DirectionSequence s;
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{normalize_dir(0.0)};
  for (int k = 1; k <= count; ++k)
    s.entries.push_back({{1.0 / k, 0.0}, ProjDir{kPi / 2.0}});
  return s;
}

DirectionSequence parabola_approach_sequence(int count) {
  DirectionSequence s;
  s.limit_point = {0.0, 0.0};
  s.limit_dir = ProjDir{normalize_dir(0.0)};
  for (int n = 1; n <= count; ++n) {
    double x = 1.0 / n;
    s.entries.push_back({{x, x * x}, dir_from_slope(2.0 * x)});
  }
  return s;
}

// Worst-status aggregation: FAIL beats INCONCLUSIVE beats PASS; the first
// verdict at the worst level supplies reason and witness.
void aggregate(Verdict& acc, const Verdict& v, const std::string& where) {
  auto rank = [](Status s) {
    return s == Status::FAIL ? 2 : (s == Status::INCONCLUSIVE ? 1 : 0);
  };
  if (rank(v.status) > rank(acc.status)) {
    acc.status = v.status;
    acc.reason = v.reason;
    acc.witness = v.witness ? where + " " + *v.witness : where;
    for (const auto& kv : v.residuals) acc.residuals["worst_" + kv.first] = kv.second;
  }
}

double json_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  if (v.witness)
    j["witness"] = *v.witness;
  else
    j["witness"] = nullptr;
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  for (const auto& kv : v.residuals) res[kv.first] = json_num(kv.second);
  j["residuals"] = res;
  return j;
}

}  // namespace

Battery default_battery() {
  Battery b;
  std::vector<double> line_probes{-1.0, 0.0, 1.0};
  for (double deg : {0.0, 30.0, 60.0, 90.0, 120.0, 150.0}) {
    char nm[32];
    std::snprintf(nm, sizeof nm, "line:%g", deg);
    ParamCurve c = line_through({0.0, 0.0}, ProjDir{normalize_dir(deg * kPi / 180.0)});
    c.name = nm;
    b.curves.push_back({nm, c, line_probes});
  }
  {
    ParamCurve c = circle({0.0, 0.0}, 1.0);
    c.name = "circle:unit";
    b.curves.push_back({"circle:unit", c, {0.0, 1.7, 3.6}});
    ParamCurve c2 = circle({0.3, 0.2}, 0.8);
    c2.name = "circle:offset";
    b.curves.push_back({"circle:offset", c2, {0.0, 1.7, 3.6}});
  }
  b.curves.push_back(
      {"parabola", poly_graph({0.3, 0.0, 1.0}, -1.6, 1.6, "parabola"), {-0.45, 0.0, 0.45}});
  b.curves.push_back(
      {"cubic", poly_graph({0.35, 0.0, 0.0, 1.0}, -1.2, 1.2, "cubic"), {-0.45, 0.0, 0.45}});
  b.curves.push_back(
      {"oscillator", osc_graph(3, 0.6, 0.5, "oscillator"), {-0.3, 0.0, 0.3}});
  {
    ParamCurve c = line_through({0.0, 0.7}, ProjDir{normalize_dir(0.0)});
    c.name = "hline";
    b.curves.push_back({"hline", c, line_probes});
  }

  for (double deg : {0.0, 30.0, 45.0, 90.0, 120.0, 135.0}) {
    char nm[32];
    std::snprintf(nm, sizeof nm, "figure1:%g", deg);
    b.sequences.push_back({nm, figure1_sequence(deg, 40)});
  }
  b.sequences.push_back({"harmonic", harmonic_sequence(40)});
  b.sequences.push_back({"parabola_tangents", parabola_approach_sequence(1200)});

  b.points = {{0.0, 0.0}, {0.3, 0.2}, {0.125, 0.0},
              {0.0, 0.5}, {-0.7, 0.1}, {0.5, 0.0}};
  return b;
}

namespace {

using nlohmann::json;

double need_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw GeomError(std::string("battery: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<double> opt_probes(const json& j) {
  std::vector<double> out;
  if (j.contains("probes"))
    for (const auto& v : j["probes"]) out.push_back(v.get<double>());
  return out;
}

}  // namespace

namespace {

Battery battery_from_parsed(const json& j) {
  Battery b;
  for (const auto& cj : j.value("curves", json::array())) {
    std::string kind = cj.value("kind", "");
    std::string name = cj.value("name", kind);
    BatteryCurve bc;
    bc.name = name;
    bc.probes = opt_probes(cj);
    if (kind == "line") {
      bc.curve = line_through(
          {need_num(cj, "x"), need_num(cj, "y")},
          ProjDir{normalize_dir(need_num(cj, "theta_deg") * kPi / 180.0)},
          cj.value("half_length", 4.0));
    } else if (kind == "circle") {
      bc.curve = circle({need_num(cj, "cx"), need_num(cj, "cy")}, need_num(cj, "radius"));
    } else if (kind == "poly") {
      std::vector<double> coeffs;
      for (const auto& v : cj["coeffs"]) coeffs.push_back(v.get<double>());
      bc.curve = poly_graph(coeffs, need_num(cj, "a"), need_num(cj, "b"), name);
    } else if (kind == "osc") {
      bc.curve = osc_graph(cj.value("power", 3), cj.value("half_width", 0.5),
                           cj.value("shift_y", 0.0), name);
    } else {
      throw GeomError("battery: unknown curve kind '" + kind + "'");
    }
    bc.curve.name = name;
    if (bc.probes.empty()) bc.probes.push_back(0.5 * (bc.curve.t_min + bc.curve.t_max));
    b.curves.push_back(std::move(bc));
  }
  for (const auto& sj : j.value("sequences", json::array())) {
    std::string kind = sj.value("kind", "");
    std::string name = sj.value("name", kind);
    NamedSequence ns;
    ns.name = name;
    if (kind == "figure1") {
      ns.seq = figure1_sequence(sj.value("base_deg", 0.0), sj.value("count", 40));
    } else if (kind == "harmonic") {
      ns.seq = harmonic_sequence(sj.value("count", 40));
    } else if (kind == "parabola_approach") {
      ns.seq = parabola_approach_sequence(sj.value("count", 1200));
    } else if (kind == "explicit") {
      for (const auto& e : sj["entries"]) {
        if (!e.is_array() || e.size() != 3)
          throw GeomError("battery: explicit entry must be [x, y, theta]");
        ns.seq.entries.push_back({{e[0].get<double>(), e[1].get<double>()},
                                  ProjDir{normalize_dir(e[2].get<double>())}});
      }
      const auto& lim = sj["limit"];
      if (!lim.is_array() || lim.size() != 3)
        throw GeomError("battery: explicit limit must be [x, y, theta]");
      ns.seq.limit_point = {lim[0].get<double>(), lim[1].get<double>()};
      ns.seq.limit_dir = ProjDir{normalize_dir(lim[2].get<double>())};
    } else {
      throw GeomError("battery: unknown sequence kind '" + kind + "'");
    }
    b.sequences.push_back(std::move(ns));
  }
  for (const auto& pj : j.value("points", json::array())) {
    if (!pj.is_array() || pj.size() != 2)
      throw GeomError("battery: point must be [x, y]");
    b.points.push_back({pj[0].get<double>(), pj[1].get<double>()});
  }
  return b;
}

}  // namespace

Battery battery_from_json(const std::string& text) {
  try {
    return battery_from_parsed(json::parse(text));
  } catch (const json::exception& e) {
    throw GeomError(std::string("battery: invalid JSON: ") + e.what());
  }
}

std::string default_battery_json() {
  nlohmann::ordered_json j;
  j["curves"] = nlohmann::ordered_json::array();
  for (double deg : {0.0, 30.0, 60.0, 90.0, 120.0, 150.0}) {
    char nm[32];
    std::snprintf(nm, sizeof nm, "line:%g", deg);
    j["curves"].push_back({{"name", nm},
                           {"kind", "line"},
                           {"x", 0.0},
                           {"y", 0.0},
                           {"theta_deg", deg},
                           {"half_length", 4.0},
                           {"probes", {-1.0, 0.0, 1.0}}});
  }
  j["curves"].push_back({{"name", "circle:unit"},
                         {"kind", "circle"},
                         {"cx", 0.0},
                         {"cy", 0.0},
                         {"radius", 1.0},
                         {"probes", {0.0, 1.7, 3.6}}});
  j["curves"].push_back({{"name", "circle:offset"},
                         {"kind", "circle"},
                         {"cx", 0.3},
                         {"cy", 0.2},
                         {"radius", 0.8},
                         {"probes", {0.0, 1.7, 3.6}}});
  j["curves"].push_back({{"name", "parabola"},
                         {"kind", "poly"},
                         {"coeffs", {0.3, 0.0, 1.0}},
                         {"a", -1.6},
                         {"b", 1.6},
                         {"probes", {-0.45, 0.0, 0.45}}});
  j["curves"].push_back({{"name", "cubic"},
                         {"kind", "poly"},
                         {"coeffs", {0.35, 0.0, 0.0, 1.0}},
                         {"a", -1.2},
                         {"b", 1.2},
                         {"probes", {-0.45, 0.0, 0.45}}});
  j["curves"].push_back({{"name", "oscillator"},
                         {"kind", "osc"},
                         {"power", 3},
                         {"half_width", 0.6},
                         {"shift_y", 0.5},
                         {"probes", {-0.3, 0.0, 0.3}}});
  j["curves"].push_back({{"name", "hline"},
                         {"kind", "line"},
                         {"x", 0.0},
                         {"y", 0.7},
                         {"theta_deg", 0.0},
                         {"half_length", 4.0},
                         {"probes", {-1.0, 0.0, 1.0}}});
  j["sequences"] = nlohmann::ordered_json::array();
  for (double deg : {0.0, 30.0, 45.0, 90.0, 120.0, 135.0}) {
    char nm[32];
    std::snprintf(nm, sizeof nm, "figure1:%g", deg);
    j["sequences"].push_back(
        {{"name", nm}, {"kind", "figure1"}, {"base_deg", deg}, {"count", 40}});
  }
  j["sequences"].push_back({{"name", "harmonic"}, {"kind", "harmonic"}, {"count", 40}});
  j["sequences"].push_back(
      {{"name", "parabola_tangents"}, {"kind", "parabola_approach"}, {"count", 1200}});
  j["points"] = {{0.0, 0.0}, {0.3, 0.2}, {0.125, 0.0},
                 {0.0, 0.5}, {-0.7, 0.1}, {0.5, 0.0}};
  return j.dump(2) + "\n";
}

Verdict validate_battery(const Battery& battery, const ResolutionParams& r) {
  r.validate();
  Verdict acc = Verdict::pass(r);
  for (const auto& bc : battery.curves)
    for (double t : bc.probes) {
      char where[96];
      std::snprintf(where, sizeof where, "curve %s @ %g", bc.name.c_str(), t);
      aggregate(acc, c1_surrogate(bc.curve, t, r), where);
    }
  for (const auto& ns : battery.sequences)
    aggregate(acc, is_transverse(ns.seq, r), "sequence " + ns.name);
  acc.resolution = r;
  return acc;
}

PushforwardEstimate pushforward_vector(const PlaneMap& f, Point2 p, Vec2 v,
                                       const ResolutionParams& r) {
  r.validate();
  double s = probe_scale(p);
  Point2 fp = f.fwd(p);
  std::vector<Vec2> qs;
  std::vector<double> hs;
  for (double h0 : r.h_grid) {
    double h = s * h0;
    Vec2 q = (1.0 / h) * (f.fwd(p + h * v) - fp);
    qs.push_back(q);
    hs.push_back(h);
  }
  size_t n = qs.size();
  if (n >= 3) {
    double n0 = norm(qs[n - 3]), n1 = norm(qs[n - 2]), n2 = norm(qs[n - 1]);
    if (n2 > 100.0 && n0 <= n1 && n1 <= n2)
      throw InfiniteQuotientError("difference quotients grow without bound");
  }
  if (n < 2) return {qs[0], 0.0};
  std::vector<Vec2> R;
  for (size_t i = 0; i + 1 < n; ++i) {
    double rho = hs[i + 1] / hs[i];
    R.push_back((1.0 / (1.0 - rho)) * (qs[i + 1] - rho * qs[i]));
  }
  PushforwardEstimate est;
  est.value = R.back();
  est.residual = R.size() >= 2 ? norm(R.back() - R[R.size() - 2]) : 0.0;
  return est;
}

Verdict differentiability_probe(const PlaneMap& f, Point2 p,
                                const ResolutionParams& r) {
  r.validate();
  const int n = 16;
  std::vector<Vec2> est(n);
  std::vector<Vec2> dirs(n);
  double quot_resid = 0.0;
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * kPi * k / n;
    dirs[k] = {std::cos(th), std::sin(th)};
    try {
      PushforwardEstimate pe = pushforward_vector(f, p, dirs[k], r);
      est[k] = pe.value;
      quot_resid = std::max(quot_resid, pe.residual);
    } catch (const InfiniteQuotientError&) {
      Verdict v = Verdict::fail(r, "INFINITE_QUOTIENT");
      char buf[48];
      std::snprintf(buf, sizeof buf, "direction %.6g", th);
      v.witness = buf;
      return v;
    }
  }
  double max_norm = 0.0;
  for (const Vec2& e : est) max_norm = std::max(max_norm, norm(e));
  if (max_norm < 1e-9) {
    Verdict v = Verdict::fail(r, "ZERO_COLLAPSE");
    v.residuals["max_pushforward"] = max_norm;
    v.residuals["quotient_residual"] = quot_resid;
    return v;
  }
  // Least squares over 16 evenly spaced unit directions: sum d d^T = (n/2) I,
  // so the best linear map is (2/n) * sum est d^T.
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  for (int k = 0; k < n; ++k) {
    a11 += est[k].x * dirs[k].x;
    a12 += est[k].x * dirs[k].y;
    a21 += est[k].y * dirs[k].x;
    a22 += est[k].y * dirs[k].y;
  }
  a11 *= 2.0 / n;
  a12 *= 2.0 / n;
  a21 *= 2.0 / n;
  a22 *= 2.0 / n;
  double fit = 0.0;
  int worst = 0;
  for (int k = 0; k < n; ++k) {
    Vec2 pred{a11 * dirs[k].x + a12 * dirs[k].y, a21 * dirs[k].x + a22 * dirs[k].y};
    double err = norm(pred - est[k]);
    if (err > fit) {
      fit = err;
      worst = k;
    }
  }
  Verdict v = Verdict::pass(r);
  v.residuals["fit_error"] = fit;
  v.residuals["quotient_residual"] = quot_resid;
  if (fit > r.slope_tolerance || quot_resid > r.slope_tolerance) {
    v.status = Status::FAIL;
    v.reason = "NONLINEAR";
    char buf[48];
    std::snprintf(buf, sizeof buf, "direction %.6g", 2.0 * kPi * worst / n);
    v.witness = buf;
  }
  return v;
}

Verdict check_property_a(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r) {
  r.validate();
  Verdict acc = Verdict::pass(r);
  double max_osc = 0.0;
  for (const auto& bc : battery.curves) {
    ParamCurve img = image_curve(f.fwd, bc.curve);
    for (double t : bc.probes) {
      Verdict v = c1_surrogate(img, t, r);
      auto it = v.residuals.find("oscillation");
      if (it != v.residuals.end()) max_osc = std::max(max_osc, it->second);
      char where[96];
      std::snprintf(where, sizeof where, "%s @ %g", bc.name.c_str(), t);
      aggregate(acc, v, where);
    }
  }
  acc.residuals["max_oscillation"] = max_osc;
  acc.resolution = r;
  return acc;
}

Verdict check_property_b(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r) {
  r.validate();
  Verdict acc = Verdict::pass(r);
  double min_gap = std::numeric_limits<double>::infinity();
  for (Point2 p : battery.points) {
    Verdict v;
    try {
      auto prof = induced_map_profile(f, p, 36, r);
      v = homeo_surrogate(prof, r);
      auto it = v.residuals.find("min_gap");
      if (it != v.residuals.end()) min_gap = std::min(min_gap, it->second);
    } catch (const MissingTangentError& e) {
      v = Verdict::inconclusive(r, "MISSING_TANGENT");
      v.witness = e.what();
    }
    aggregate(acc, v, "point " + point_str(p));
  }
  if (std::isfinite(min_gap)) acc.residuals["min_gap"] = min_gap;
  acc.resolution = r;
  return acc;
}

Verdict check_property_c(const PlaneMap& f, const Battery& battery,
                         const ResolutionParams& r) {
  r.validate();
  Verdict acc = Verdict::pass(r);
  double min_dir_gap = std::numeric_limits<double>::infinity();
  for (const auto& ns : battery.sequences) {
    Verdict v = property_c_on_sequence(f, ns.seq, r);
    auto it = v.residuals.find("min_dir_gap");
    if (it != v.residuals.end()) min_dir_gap = std::min(min_dir_gap, it->second);
    aggregate(acc, v, "sequence " + ns.name);
  }
  if (std::isfinite(min_dir_gap)) acc.residuals["min_dir_gap"] = min_dir_gap;
  acc.resolution = r;
  return acc;
}

ClassificationReport classify(const PlaneMap& f, const Battery& battery,
                              const ResolutionParams& r) {
  r.validate();
  ClassificationReport rep;
  rep.map_name = f.name;
  rep.resolution = r;
  rep.prop_a = check_property_a(f, battery, r);
  rep.prop_b = check_property_b(f, battery, r);
  rep.prop_c = check_property_c(f, battery, r);
  for (Point2 p : battery.points)
    rep.probes.push_back(
        {"differentiability", point_str(p), differentiability_probe(f, p, r)});
  bool any_fail = rep.prop_a.failed() || rep.prop_b.failed() || rep.prop_c.failed();
  bool all_pass = rep.prop_a.passed() && rep.prop_b.passed() && rep.prop_c.passed();
  rep.overall = any_fail ? Status::FAIL
                         : (all_pass ? Status::PASS : Status::INCONCLUSIVE);
  return rep;
}

std::string report_to_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["map"] = report.map_name;
  const ResolutionParams& r = report.resolution;
  nlohmann::ordered_json res;
  res["tail_length"] = r.tail_length;
  res["dir_tolerance"] = json_num(r.dir_tolerance);
  res["slope_tolerance"] = json_num(r.slope_tolerance);
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (double h : r.h_grid) grid.push_back(json_num(h));
  res["h_grid"] = grid;
  res["c1_span"] = json_num(r.c1_span);
  res["c1_ratio"] = json_num(r.c1_ratio);
  res["dir_tail_levels"] = r.dir_tail_levels;
  j["resolution"] = res;
  nlohmann::ordered_json props;
  props["a"] = verdict_json(report.prop_a);
  props["b"] = verdict_json(report.prop_b);
  props["c"] = verdict_json(report.prop_c);
  j["properties"] = props;
  nlohmann::ordered_json probes = nlohmann::ordered_json::array();
  for (const auto& pr : report.probes) {
    nlohmann::ordered_json pj;
    pj["kind"] = pr.kind;
    pj["target"] = pr.target;
    nlohmann::ordered_json vj = verdict_json(pr.verdict);
    for (auto it = vj.begin(); it != vj.end(); ++it) pj[it.key()] = it.value();
    probes.push_back(pj);
  }
  j["probes"] = probes;
  j["overall"] = to_string(report.overall);
  return j.dump(2) + "\n";
}

}  // namespace c1homeo
