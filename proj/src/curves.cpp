#include "c1homeo/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

double ParamCurve::canon_param(double t) const {
  if (closed) {
    double L = length();
    double u = std::fmod(t - t_min, L);
    if (u < 0.0) u += L;
    return t_min + u;
  }
  return std::clamp(t, t_min, t_max);
}

ProjDir secant_dir(const ParamCurve& c, double t0, double h) {
  Point2 a = c.eval(c.canon_param(t0));
  Point2 b = c.eval(c.canon_param(t0 + h));
  Vec2 d = b - a;
  double scale = std::max({1.0, std::abs(a.x), std::abs(a.y)});
  if (norm(d) < 1e-14 * scale)
    throw CoincidentPointsError("secant chord degenerates at t=" + std::to_string(t0));
  return *dir_of_vec(d);
}

namespace {

// Secant-based tangent estimate; assumes no analytic derivative applies.
// Chord directions drift linearly in the offset on each side of t0 whenever
// the curve is C1 there (the drift rate is the one-sided curvature, which may
// jump across t0). Fit a shared intercept with one slope per side and judge
// existence by the fit residual: a corner leaves an offset-independent
// mismatch that no such fit can absorb.
SlopeEstimate secant_tangent(const ParamCurve& c, double t0, const ResolutionParams& r) {
  const int n_levels = static_cast<int>(r.h_grid.size());
  const int tail_from = std::max(0, n_levels - r.dir_tail_levels);
  struct Obs {
    double tau;
    ProjDir dir;
  };
  std::vector<Obs> obs;
  double h_top = 0.0;
  for (int i = tail_from; i < n_levels; ++i) {
    double h = r.h_grid[i];
    for (double sgn : {1.0, -1.0}) {
      double t1 = t0 + sgn * h;
      if (!c.closed && (t1 < c.t_min || t1 > c.t_max)) continue;
      try {
        obs.push_back({sgn * h, secant_dir(c, t0, sgn * h)});
        h_top = std::max(h_top, h);
      } catch (const CoincidentPointsError&) {
        // stationary stencil point: skip this sample
      }
    }
  }
  SlopeEstimate est;
  est.residual = kHalfPi;
  if (obs.size() < 2) return est;
  std::vector<ProjDir> dirs;
  dirs.reserve(obs.size());
  for (const Obs& o : obs) dirs.push_back(o.dir);
  auto mean = mean_dir(dirs);
  if (!mean) return est;

  const bool fit_pos = std::count_if(obs.begin(), obs.end(),
                                     [](const Obs& o) { return o.tau > 0; }) >= 2;
  const bool fit_neg = std::count_if(obs.begin(), obs.end(),
                                     [](const Obs& o) { return o.tau < 0; }) >= 2;
  const int n_params = 1 + (fit_pos ? 1 : 0) + (fit_neg ? 1 : 0);

  double alpha = 0.0, beta_pos = 0.0, beta_neg = 0.0;
  bool fitted = false;
  if (static_cast<int>(obs.size()) > n_params) {
    double A[3][3] = {{0.0}}, b[3] = {0.0};
    for (const Obs& o : obs) {
      double x = o.tau / h_top;
      double delta = std::remainder(o.dir.theta - mean->theta, kPi);
      double row[3] = {1.0, (fit_pos && o.tau > 0) ? x : 0.0,
                       (fit_neg && o.tau < 0) ? x : 0.0};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] += row[i] * row[j];
        b[i] += row[i] * delta;
      }
    }
    // Gaussian elimination on the used params only (unused columns are zero).
    int used[3], m = 0;
    used[m++] = 0;
    if (fit_pos) used[m++] = 1;
    if (fit_neg) used[m++] = 2;
    double M[3][4];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) M[i][j] = A[used[i]][used[j]];
      M[i][m] = b[used[i]];
    }
    double sol[3] = {0.0, 0.0, 0.0};
    bool singular = false;
    for (int col = 0; col < m && !singular; ++col) {
      int piv = col;
      for (int row = col + 1; row < m; ++row)
        if (std::abs(M[row][col]) > std::abs(M[piv][col])) piv = row;
      if (std::abs(M[piv][col]) < 1e-12) {
        singular = true;
        break;
      }
      for (int j = 0; j <= m; ++j) std::swap(M[col][j], M[piv][j]);
      for (int row = 0; row < m; ++row) {
        if (row == col) continue;
        double f = M[row][col] / M[col][col];
        for (int j = col; j <= m; ++j) M[row][j] -= f * M[col][j];
      }
    }
    if (!singular) {
      for (int i = 0; i < m; ++i) sol[used[i]] = M[i][m] / M[i][i];
      alpha = sol[0];
      beta_pos = sol[1];
      beta_neg = sol[2];
      fitted = true;
    }
  }

  double worst = 0.0;
  for (const Obs& o : obs) {
    double delta = std::remainder(o.dir.theta - mean->theta, kPi);
    double model = fitted ? alpha + (o.tau > 0 ? beta_pos : beta_neg) * (o.tau / h_top)
                          : 0.0;
    worst = std::max(worst, std::abs(delta - model));
  }
  est.dir = ProjDir{normalize_dir(mean->theta + (fitted ? alpha : 0.0))};
  est.residual = worst;
  est.exists = worst <= r.slope_tolerance;
  return est;
}

}  // namespace

SlopeEstimate tangent_at(const ParamCurve& c, double t0, const ResolutionParams& r) {
  double t = c.canon_param(t0);
  if (c.has_deriv()) {
    Vec2 v = c.deriv(t);
    if (norm(v) > 1e-14) {
      SlopeEstimate est;
      est.dir = *dir_of_vec(v);
      est.residual = 0.0;
      est.exists = true;
      return est;
    }
    // stationary parametrization: fall through to chords, which see the trace
  }
  return secant_tangent(c, t, r);
}

std::vector<SlopeEstimate> slope_function(const ParamCurve& c,
                                          const std::vector<double>& params,
                                          const ResolutionParams& r) {
  std::vector<SlopeEstimate> out;
  out.reserve(params.size());
  for (double t : params) out.push_back(tangent_at(c, t, r));
  return out;
}

Verdict c1_surrogate(const ParamCurve& c, double t0, const ResolutionParams& r) {
  r.validate();
  t0 = c.canon_param(t0);
  SlopeEstimate base = tangent_at(c, t0, r);

  struct Sample {
    double t;
    int i;
    SlopeEstimate est;
  };
  const int N = r.tail_length;
  const int quarter_from = N - std::max(1, N / 4);
  const int half_from = N - std::max(1, N / 2);

  std::vector<Sample> sides[2];
  int side_idx = 0;
  for (double sgn : {1.0, -1.0}) {
    double avail;
    if (c.closed)
      avail = 0.45 * c.length();
    else
      avail = sgn > 0 ? c.t_max - t0 : t0 - c.t_min;
    double span = std::min(r.c1_span, avail);
    if (span > 1e-13) {
      double s = span;
      for (int i = 0; i < N; ++i, s *= r.c1_ratio)
        sides[side_idx].push_back({t0 + sgn * s, i, tangent_at(c, t0 + sgn * s, r)});
    }
    ++side_idx;
  }
  if (sides[0].empty() && sides[1].empty())
    return Verdict::inconclusive(r, "domain too small to sample");

  Verdict v;
  v.resolution = r;
  v.residuals["base_residual"] = base.exists ? base.residual : kHalfPi;

  if (base.exists) {
    double osc_half = 0.0, worst_quarter = 0.0, worst_t = t0;
    int missing_quarter = 0;
    for (const auto& side : sides) {
      for (const Sample& s : side) {
        if (!s.est.exists) {
          if (s.i >= quarter_from) ++missing_quarter;
          continue;
        }
        double d = proj_distance(s.est.dir, base.dir);
        if (s.i >= half_from) osc_half = std::max(osc_half, d);
        if (s.i >= quarter_from && d > worst_quarter) {
          worst_quarter = d;
          worst_t = s.t;
        }
      }
    }
    v.residuals["oscillation"] = osc_half;
    if (worst_quarter > r.dir_tolerance) {
      v.status = Status::FAIL;
      v.witness = "t=" + std::to_string(worst_t);
      return v;
    }
    if (missing_quarter > 0) {
      v.status = Status::INCONCLUSIVE;
      v.reason = "estimation_failed";
      return v;
    }
    v.status = Status::PASS;
    return v;
  }

  // No direction at t0: look for a stable corner (distinct one-sided limits).
  // Two-sided secants straddle the corner at every scale, so estimate each
  // side from chords anchored at t0 instead of the interior tangents.
  std::optional<ProjDir> limit[2];
  bool stable[2] = {false, false};
  for (int k = 0; k < 2; ++k) {
    std::vector<ProjDir> tail;
    for (const Sample& s : sides[k]) {
      if (s.i < quarter_from) continue;
      try {
        tail.push_back(secant_dir(c, t0, s.t - t0));
      } catch (const CoincidentPointsError&) {
      }
    }
    if (tail.size() < 2) continue;
    auto m = mean_dir(tail);
    if (!m) continue;
    double spread = 0.0;
    for (const ProjDir& d : tail) spread = std::max(spread, proj_distance(d, *m));
    if (spread <= 10.0 * r.dir_tolerance) {
      limit[k] = *m;
      stable[k] = true;
    }
  }
  if (stable[0] && stable[1]) {
    double gap = proj_distance(*limit[0], *limit[1]);
    v.residuals["oscillation"] = gap;
    if (gap > r.dir_tolerance) {
      v.status = Status::FAIL;
      v.witness = "t=" + std::to_string(t0);
      return v;
    }
  }
  v.status = Status::INCONCLUSIVE;
  v.reason = "estimation_failed";
  return v;
}

ParamCurve image_curve(const std::function<Point2(Point2)>& f, const ParamCurve& c) {
  ParamCurve out;
  out.t_min = c.t_min;
  out.t_max = c.t_max;
  out.closed = c.closed;
  out.junction_params = c.junction_params;
  out.name = c.name.empty() ? "image" : "image(" + c.name + ")";
  auto base = c.eval;
  out.eval = [f, base](double t) { return f(base(t)); };
  return out;
}

double nearest_param(const ParamCurve& c, Point2 q, int scan) {
  double best_t = c.t_min, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    double t = c.t_min + c.length() * i / scan;
    double d = dist(c.eval(t), q);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  double step = c.length() / scan;
  double lo = best_t - step, hi = best_t + step;
  if (!c.closed) {
    lo = std::max(lo, c.t_min);
    hi = std::min(hi, c.t_max);
  }
  // golden-section refinement on the bracketing interval
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = dist(c.eval(c.canon_param(x1)), q), f2 = dist(c.eval(c.canon_param(x2)), q);
  for (int it = 0; it < 120 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = dist(c.eval(c.canon_param(x1)), q);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = dist(c.eval(c.canon_param(x2)), q);
    }
  }
  double mid = c.canon_param(0.5 * (a + b));
  return dist(c.eval(mid), q) <= best_d ? mid : best_t;
}

Verdict accumulation_tangent_check(const ParamCurve& c1, const ParamCurve& c2,
                                   Point2 p, const std::vector<Point2>& intersections,
                                   const ResolutionParams& r) {
  r.validate();
  if (intersections.size() < 3)
    throw BadWitnessError("accumulating family needs at least 3 intersection points");
  double prev = std::numeric_limits<double>::infinity();
  for (const Point2& q : intersections) {
    if (dist(c1.eval(nearest_param(c1, q)), q) > 1e-9 ||
        dist(c2.eval(nearest_param(c2, q)), q) > 1e-9)
      throw BadWitnessError("intersection point does not lie on both curves");
    double dq = dist(q, p);
    if (dq == 0.0) throw BadWitnessError("intersection coincides with the accumulation point");
    if (!(dq < prev)) throw BadWitnessError("intersection norms must decrease strictly");
    prev = dq;
  }
  if (dist(c1.eval(nearest_param(c1, p)), p) > 1e-9 ||
      dist(c2.eval(nearest_param(c2, p)), p) > 1e-9)
    throw BadWitnessError("accumulation point does not lie on both curves");

  SlopeEstimate e1 = tangent_at(c1, nearest_param(c1, p), r);
  SlopeEstimate e2 = tangent_at(c2, nearest_param(c2, p), r);
  Verdict v;
  v.resolution = r;
  if (!e1.exists || !e2.exists) {
    v.status = Status::INCONCLUSIVE;
    v.reason = "MISSING_TANGENT";
    return v;
  }
  double gap = proj_distance(e1.dir, e2.dir);
  v.residuals["tangent_gap"] = gap;
  v.status = gap <= r.dir_tolerance ? Status::PASS : Status::FAIL;
  return v;
}

// --- catalog --------------------------------------------------------------

ParamCurve graph_curve(std::function<double(double)> f,
                       std::function<double(double)> fp,
                       double a, double b, std::string name) {
  ParamCurve c;
  c.t_min = a;
  c.t_max = b;
  c.name = std::move(name);
  c.eval = [f](double t) { return Point2{t, f(t)}; };
  if (fp) c.deriv = [fp](double t) { return Vec2{1.0, fp(t)}; };
  return c;
}

ParamCurve line_through(Point2 p, ProjDir d, double half_length) {
  Vec2 u{std::cos(d.theta), std::sin(d.theta)};
  ParamCurve c;
  c.t_min = -half_length;
  c.t_max = half_length;
  c.name = "line";
  c.eval = [p, u](double t) { return p + t * u; };
  c.deriv = [u](double) { return u; };
  return c;
}

ParamCurve circle(Point2 center, double radius) {
  ParamCurve c;
  c.t_min = 0.0;
  c.t_max = 2.0 * kPi;
  c.closed = true;
  c.name = "circle";
  c.eval = [center, radius](double t) {
    return Point2{center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  };
  c.deriv = [radius](double t) { return Vec2{-radius * std::sin(t), radius * std::cos(t)}; };
  return c;
}

ParamCurve x2sin1x(double half_width) {
  auto f = [](double t) { return t == 0.0 ? 0.0 : t * t * std::sin(1.0 / t); };
  auto fp = [](double t) {
    return t == 0.0 ? 0.0 : 2.0 * t * std::sin(1.0 / t) - std::cos(1.0 / t);
  };
  return graph_curve(f, fp, -half_width, half_width, "x2sin1x");
}

ParamCurve x3sin1x(double half_width) {
  auto f = [](double t) { return t == 0.0 ? 0.0 : t * t * t * std::sin(1.0 / t); };
  auto fp = [](double t) {
    return t == 0.0 ? 0.0 : 3.0 * t * t * std::sin(1.0 / t) - t * std::cos(1.0 / t);
  };
  return graph_curve(f, fp, -half_width, half_width, "x3sin1x");
}

// --- CSV ------------------------------------------------------------------

std::vector<CurveSample> sample_curve(const ParamCurve& c, int n_samples,
                                      const ResolutionParams& r) {
  std::vector<CurveSample> rows;
  rows.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    double t = c.t_min + c.length() * i / (n_samples - 1);
    CurveSample s;
    s.t = t;
    s.p = c.eval(t);
    SlopeEstimate est = tangent_at(c, t, r);
    s.slope = est.exists ? slope_of_dir(est.dir) : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(s);
  }
  return rows;
}

namespace {
std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}
}  // namespace

std::string curve_samples_to_csv(const std::vector<CurveSample>& rows) {
  std::string out = "t,x,y,slope\n";
  for (const CurveSample& s : rows) {
    out += fmt_double(s.t) + "," + fmt_double(s.p.x) + "," + fmt_double(s.p.y) + "," +
           fmt_double(s.slope) + "\n";
  }
  return out;
}

std::vector<CurveSample> curve_samples_from_csv(const std::string& text) {
  std::vector<CurveSample> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("t,", 0) == 0) continue;  // header
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw GeomError("curve CSV row needs 4 cells: " + line);
    rows.push_back({parse_double(cells[0]),
                    {parse_double(cells[1]), parse_double(cells[2])},
                    parse_double(cells[3])});
  }
  return rows;
}

}  // namespace c1homeo
