#include "c1homeo/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double v) { return v * v; }

}  // namespace

Point2 AffineFrame::fwd(Point2 u) const {
  Vec2 v = u - p;
  double wx = cos_a * v.x + sin_a * v.y;
  double wy = -sin_a * v.x + cos_a * v.y;
  if (flip_x) wx = -wx;
  if (flip_y) wy = -wy;
  return {wx, wy};
}

Point2 AffineFrame::inv(Point2 u) const {
  double wx = flip_x ? -u.x : u.x;
  double wy = flip_y ? -u.y : u.y;
  return {p.x + cos_a * wx - sin_a * wy, p.y + sin_a * wx + cos_a * wy};
}

Vec2 AffineFrame::inv_vec(Vec2 v) const {
  double wx = flip_x ? -v.x : v.x;
  double wy = flip_y ? -v.y : v.y;
  return {cos_a * wx - sin_a * wy, sin_a * wx + cos_a * wy};
}

double AffineFrame::fwd_slope(double m) const {
  Vec2 v = std::isinf(m) ? Vec2{0.0, 1.0} : Vec2{1.0, m};
  double wx = cos_a * v.x + sin_a * v.y;
  double wy = -sin_a * v.x + cos_a * v.y;
  if (flip_x) wx = -wx;
  if (flip_y) wy = -wy;
  if (wx == 0.0) return std::numeric_limits<double>::infinity();
  return wy / wx;
}

NormalizedSequence normalize_and_extract(const DirectionSequence& seq, int want,
                                         const ResolutionParams& r) {
  r.validate();
  if (want < 1) throw ConstraintViolationError("normalize_and_extract: want >= 1");

  Verdict conv = converges_along_line(seq, r);
  if (!conv.passed())
    throw NotConvergentError("points do not settle on the marked line");

  // Entry directions must settle on the line too: the graph segments carry
  // the entry slopes, so a direction staying away from the line would leave
  // no convergent slope data to interpolate.
  double scale = std::max(1.0, std::hypot(seq.limit_point.x, seq.limit_point.y));
  std::vector<size_t> usable;
  for (size_t i = 0; i < seq.entries.size(); ++i)
    if (dist(seq.entries[i].p, seq.limit_point) > 1e-15 * scale) usable.push_back(i);
  size_t tail_n_sz = std::min(usable.size(), static_cast<size_t>(r.tail_length));
  {
    size_t tail_from = usable.size() - tail_n_sz;
    double worst = 0.0;
    for (size_t k = tail_from; k < usable.size(); ++k)
      worst = std::max(worst,
                       proj_distance(seq.entries[usable[k]].dir, seq.limit_dir));
    if (worst > r.dir_tolerance)
      throw NotConvergentError("entry directions do not settle on the marked line");
  }

  NormalizedSequence ns;
  ns.frame.p = seq.limit_point;
  ns.frame.cos_a = std::cos(seq.limit_dir.theta);
  ns.frame.sin_a = std::sin(seq.limit_dir.theta);

  // Reflections are fixed by the tail: approach from positive x, chords from
  // above (unless every chord is exactly on the axis).
  size_t tail_from = usable.size() - tail_n_sz;
  // Rotation arithmetic leaves ~1e-17 noise on points lying on the line
  // itself; snap those to the axis so the chord filter sees exact zeros.
  auto snap = [](Point2 u) {
    if (std::abs(u.y) <= 1e-12 * std::abs(u.x)) u.y = 0.0;
    return u;
  };
  int x_neg = 0, y_neg = 0, y_zero = 0;
  for (size_t k = tail_from; k < usable.size(); ++k) {
    Point2 u = snap(ns.frame.fwd(seq.entries[usable[k]].p));
    if (u.x < 0.0) ++x_neg;
    if (u.y == 0.0)
      ++y_zero;
    else if (u.y < 0.0)
      ++y_neg;
  }
  int tail_n = static_cast<int>(usable.size() - tail_from);
  ns.frame.flip_x = 2 * x_neg > tail_n;
  ns.on_axis = y_zero == tail_n;
  ns.frame.flip_y = !ns.on_axis && 2 * y_neg > tail_n - y_zero;

  // Greedy filter; every kept point must keep all five monotonicities alive.
  bool have_prev = false;
  double prev_norm = 0, prev_x = 0, prev_y = 0, prev_chord = 0, prev_m = 0;
  double prev_succ = std::numeric_limits<double>::infinity();
  bool have_succ = false;
  for (size_t i : usable) {
    if (static_cast<int>(ns.pts.size()) >= want) break;
    Point2 u = snap(ns.frame.fwd(seq.entries[i].p));
    if (u.x <= 0.0) continue;
    double nrm = std::hypot(u.x, u.y);
    double chord = u.y / u.x;
    double m = ns.frame.fwd_slope(slope_of_dir(seq.entries[i].dir));
    if (!std::isfinite(m)) continue;
    if (ns.on_axis) {
      if (u.y != 0.0) continue;
    } else {
      if (chord <= 0.0) continue;
    }
    if (have_prev) {
      if (nrm >= prev_norm || u.x >= prev_x) continue;
      if (std::abs(m) > std::abs(prev_m)) continue;
      if (!ns.on_axis) {
        if (chord >= prev_chord) continue;
        double succ = (prev_y - u.y) / (prev_x - u.x);
        if (have_succ && succ >= prev_succ) continue;
        prev_succ = succ;
        have_succ = true;
      }
    }
    have_prev = true;
    prev_norm = nrm;
    prev_x = u.x;
    prev_y = u.y;
    prev_chord = chord;
    prev_m = m;
    ns.pts.push_back(u);
    ns.slopes.push_back(m);
    ns.picked.push_back(i);
  }
  if (static_cast<int>(ns.pts.size()) < want) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "greedy filter kept %zu of %d points",
                  ns.pts.size(), want);
    throw InsufficientPointsError(buf);
  }
  return ns;
}

double GammaSegment::eval(double t) const {
  double d = xk - xk1;
  double mid = 0.5 * (xk + xk1);
  double M = (yk - yk1) / d;
  if (t >= mid) {
    double lam = (2.0 * t - xk - xk1) / d;
    double phase = 2.0 * kPi * (t - xk) / d;
    double A = d * mk / (2.0 * kPi);
    return lam * (A * std::sin(phase) + yk) + (1.0 - lam) * (M * (t - xk) + yk);
  }
  double mu = (2.0 * t - xk - xk1) / (xk1 - xk);
  double phase = 2.0 * kPi * (t - xk1) / d;
  double A = d * mk1 / (2.0 * kPi);
  return mu * (A * std::sin(phase) + yk1) + (1.0 - mu) * (M * (t - xk1) + yk1);
}

double GammaSegment::deriv(double t) const {
  double d = xk - xk1;
  double mid = 0.5 * (xk + xk1);
  double M = (yk - yk1) / d;
  if (t >= mid) {
    double lam = (2.0 * t - xk - xk1) / d;
    double phase = 2.0 * kPi * (t - xk) / d;
    return mk * (lam * std::cos(phase) + std::sin(phase) / kPi) + 2.0 * (1.0 - lam) * M;
  }
  double mu = (2.0 * t - xk - xk1) / (xk1 - xk);
  double phase = 2.0 * kPi * (t - xk1) / d;
  return mk1 * (mu * std::cos(phase) - std::sin(phase) / kPi) + 2.0 * (1.0 - mu) * M;
}

namespace {

// Locate the segment whose x-interval contains t; segments are stored left
// to right and partition [0, x0].
const GammaSegment& segment_at(const std::vector<GammaSegment>& segs, double t) {
  auto it = std::upper_bound(segs.begin(), segs.end(), t,
                             [](double v, const GammaSegment& s) { return v < s.xk; });
  if (it == segs.end()) return segs.back();
  return *it;
}

}  // namespace

Point2 ClosedCurveResult::xi(double t) const {
  const GammaSegment& s = segment_at(segments, t);
  return {t, s.eval(t)};
}

Vec2 ClosedCurveResult::xi_deriv(double t) const {
  const GammaSegment& s = segment_at(segments, t);
  return {1.0, s.deriv(t)};
}

Point2 ClosedCurveResult::alpha(double t) const {
  double R = y_max - 0.5 * y0;
  double a = kPi * (t + 0.5);
  return {R * std::cos(a), R * (1.0 + std::sin(a))};
}

Vec2 ClosedCurveResult::alpha_deriv(double t) const {
  double R = y_max - 0.5 * y0;
  double a = kPi * (t + 0.5);
  return {-R * kPi * std::sin(a), R * kPi * std::cos(a)};
}

Point2 ClosedCurveResult::beta(double t) const {
  return {x0 * (1.0 - t), 2.0 * y_max - y0};
}

Vec2 ClosedCurveResult::beta_deriv(double) const { return {-x0, 0.0}; }

Point2 ClosedCurveResult::delta(double t) const {
  double R = y_max - y0;
  double a = kPi * (t - 0.5);
  return {R * std::cos(a) + x0, R * std::sin(a) + y_max};
}

Vec2 ClosedCurveResult::delta_deriv(double t) const {
  double R = y_max - y0;
  double a = kPi * (t - 0.5);
  return {-R * kPi * std::sin(a), R * kPi * std::cos(a)};
}

ClosedCurveResult construct_closed_c1(const DirectionSequence& seq, int want,
                                      const ResolutionParams& r) {
  ClosedCurveResult res;
  res.normalized = normalize_and_extract(seq, want, r);
  res.frame = res.normalized.frame;

  const auto& pts = res.normalized.pts;
  const auto& ms = res.normalized.slopes;
  res.x0 = pts.front().x + 1.0;
  res.y0 = pts.front().y;

  // Right to left: anchor (x0, y0, slope 0), the picked points, then the
  // truncation endpoint (0, 0, slope 0).
  std::vector<double> xs{res.x0}, ys{res.y0}, mm{0.0};
  for (size_t k = 0; k < pts.size(); ++k) {
    xs.push_back(pts[k].x);
    ys.push_back(pts[k].y);
    mm.push_back(ms[k]);
  }
  xs.push_back(0.0);
  ys.push_back(0.0);
  mm.push_back(0.0);

  for (size_t j = xs.size() - 1; j >= 1; --j)
    res.segments.push_back({xs[j - 1], ys[j - 1], mm[j - 1], xs[j], ys[j], mm[j]});

  double top = -std::numeric_limits<double>::infinity();
  for (const GammaSegment& s : res.segments) {
    for (int i = 0; i < 4096; ++i) {
      double t = s.xk1 + (s.xk - s.xk1) * i / 4095.0;
      top = std::max(top, s.eval(t));
    }
  }
  res.y_max = 1.0 + top;

  double period = res.x0 + 3.0;
  AffineFrame frame = res.frame;
  // Dispatch into the four chart pieces; self-contained copy for the lambdas.
  auto chart = [res_copy = res, period](double t) {
    double tt = t - period * std::floor(t / period);
    if (tt <= res_copy.x0) return res_copy.xi(tt);
    if (tt <= res_copy.x0 + 1.0) return res_copy.delta(tt - res_copy.x0);
    if (tt <= res_copy.x0 + 2.0) return res_copy.beta(tt - res_copy.x0 - 1.0);
    return res_copy.alpha(tt - res_copy.x0 - 2.0);
  };
  auto chart_d = [res_copy = res, period](double t) {
    double tt = t - period * std::floor(t / period);
    if (tt <= res_copy.x0) return res_copy.xi_deriv(tt);
    if (tt <= res_copy.x0 + 1.0) return res_copy.delta_deriv(tt - res_copy.x0);
    if (tt <= res_copy.x0 + 2.0) return res_copy.beta_deriv(tt - res_copy.x0 - 1.0);
    return res_copy.alpha_deriv(tt - res_copy.x0 - 2.0);
  };

  res.curve.t_min = 0.0;
  res.curve.t_max = period;
  res.curve.closed = true;
  res.curve.eval = [chart, frame](double t) { return frame.inv(chart(t)); };
  res.curve.deriv = [chart_d, frame](double t) { return frame.inv_vec(chart_d(t)); };
  for (size_t k = 0; k < pts.size(); ++k) res.curve.junction_params.push_back(pts[k].x);
  res.curve.junction_params.push_back(res.x0);
  res.curve.junction_params.push_back(res.x0 + 1.0);
  res.curve.junction_params.push_back(res.x0 + 2.0);
  std::sort(res.curve.junction_params.begin(), res.curve.junction_params.end());
  char buf[48];
  std::snprintf(buf, sizeof buf, "closed_c1(%zu pts)", pts.size());
  res.curve.name = buf;
  return res;
}

namespace {

struct ArcSamples {
  std::vector<Point2> pts;
};

}  // namespace

Verdict validate_construction(const ClosedCurveResult& c, const ResolutionParams& r) {
  r.validate();
  Verdict v = Verdict::pass(r);
  auto fail = [&](const std::string& why, const std::string& where) {
    v.status = Status::FAIL;
    if (v.reason.empty()) {
      v.reason = why;
      v.witness = where;
    }
  };

  // Interpolation: points hit exactly, tangent slopes agree.
  double pt_err = 0.0, tan_err = 0.0;
  for (size_t k = 0; k < c.normalized.pts.size(); ++k) {
    double xk = c.normalized.pts[k].x;
    pt_err = std::max(pt_err, dist(c.xi(xk), c.normalized.pts[k]));
    SlopeEstimate est = tangent_at(c.curve, xk, r);
    ProjDir target = *dir_of_vec(c.frame.inv_vec({1.0, c.normalized.slopes[k]}));
    double gap = est.exists ? proj_distance(est.dir, target) : kPi / 2;
    tan_err = std::max(tan_err, gap);
  }
  v.residuals["point_error"] = pt_err;
  v.residuals["tangent_error"] = tan_err;
  if (pt_err > 1e-9) fail("INTERPOLATION_POSITION", "picked point");
  if (tan_err > 1e-6) fail("INTERPOLATION_TANGENT", "picked point");

  // Junction continuity and the eight flat closure slopes.
  double jgap = 0.0;
  jgap = std::max(jgap, dist(c.xi(c.x0), c.delta(0.0)));
  jgap = std::max(jgap, dist(c.delta(1.0), c.beta(0.0)));
  jgap = std::max(jgap, dist(c.beta(1.0), c.alpha(0.0)));
  jgap = std::max(jgap, dist(c.alpha(1.0), c.xi(0.0)));
  v.residuals["junction_gap"] = jgap;
  if (jgap > 1e-12) fail("JUNCTION_GAP", "arc junction");

  double jslope = 0.0;
  Vec2 ds[8] = {c.xi_deriv(0.0),    c.xi_deriv(c.x0),  c.delta_deriv(0.0),
                c.delta_deriv(1.0), c.beta_deriv(0.0), c.beta_deriv(1.0),
                c.alpha_deriv(0.0), c.alpha_deriv(1.0)};
  for (const Vec2& d : ds) jslope = std::max(jslope, std::abs(d.y / d.x));
  v.residuals["junction_slope"] = jslope;
  if (jslope > 1e-9) fail("JUNCTION_SLOPE", "arc junction");

  // Region containment with 1e-9 slack, sampled.
  const int N = 2048;
  const double sl = 1e-9;
  double worst_violation = 0.0;
  ArcSamples arcs[4];
  for (int i = 0; i < N; ++i) {
    double s = static_cast<double>(i) / (N - 1);
    arcs[0].pts.push_back(c.xi(s * c.x0));
    arcs[1].pts.push_back(c.delta(s));
    arcs[2].pts.push_back(c.beta(s));
    arcs[3].pts.push_back(c.alpha(s));
  }
  double top_line = 2.0 * c.y_max - c.y0;
  // y_max - 1 is a sampled maximum, so resampling the graph here may clear
  // it by grid slop; allow that separately, far below the unit margin.
  double top_violation = 0.0;
  for (int i = 0; i < N; ++i) {
    Point2 q = arcs[0].pts[i];
    worst_violation = std::max({worst_violation, -q.x, q.x - c.x0});
    top_violation = std::max(top_violation, q.y - (c.y_max - 1.0));
    q = arcs[1].pts[i];
    worst_violation = std::max(worst_violation, c.x0 - q.x);
    q = arcs[2].pts[i];
    worst_violation = std::max({worst_violation, -q.x, q.x - c.x0,
                                std::abs(q.y - top_line)});
    q = arcs[3].pts[i];
    worst_violation = std::max(worst_violation, q.x);
  }
  v.residuals["containment"] = std::max(worst_violation, top_violation);
  if (worst_violation > sl || top_violation > 1e-4) fail("CONTAINMENT", "arc sample");

  // Per-arc injectivity: the monotone coordinate must stay monotone.
  for (int i = 1; i < N; ++i) {
    if (arcs[0].pts[i].x <= arcs[0].pts[i - 1].x) fail("SELF_INTERSECTION", "xi");
    if (arcs[2].pts[i].x >= arcs[2].pts[i - 1].x) fail("SELF_INTERSECTION", "beta");
  }
  for (int i = 1; i < N; ++i) {
    double a0 = std::atan2(arcs[3].pts[i - 1].y - (c.y_max - 0.5 * c.y0),
                           arcs[3].pts[i - 1].x);
    double a1 = std::atan2(arcs[3].pts[i].y - (c.y_max - 0.5 * c.y0), arcs[3].pts[i].x);
    if (a1 <= a0 && !(a0 > kPi / 2 && a1 < -kPi / 2))
      fail("SELF_INTERSECTION", "alpha");
    double b0 = std::atan2(arcs[1].pts[i - 1].y - c.y_max, arcs[1].pts[i - 1].x - c.x0);
    double b1 = std::atan2(arcs[1].pts[i].y - c.y_max, arcs[1].pts[i].x - c.x0);
    if (b1 <= b0) fail("SELF_INTERSECTION", "delta");
  }

  // Pairwise separation, excluding windows around shared junctions.
  const int win = 8;
  auto adjacency = [](int a, int b) {
    // Arc order around the loop: xi(0) delta(1) beta(2) alpha(3); xi meets
    // delta at its end and alpha at its start.
    struct Pair {
      int ea, eb;
    };
    if (a == 0 && b == 1) return Pair{1, 0};   // xi end, delta start
    if (a == 1 && b == 2) return Pair{1, 0};   // delta end, beta start
    if (a == 2 && b == 3) return Pair{1, 0};   // beta end, alpha start
    if (a == 0 && b == 3) return Pair{0, 1};   // xi start, alpha end
    return Pair{-1, -1};
  };
  double min_sep = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      auto adj = adjacency(a, b);
      for (int i = 0; i < N; ++i) {
        if (adj.ea == 0 && i < win) continue;
        if (adj.ea == 1 && i >= N - win) continue;
        for (int j = 0; j < N; ++j) {
          if (adj.eb == 0 && j < win) continue;
          if (adj.eb == 1 && j >= N - win) continue;
          double d2 = sq(arcs[a].pts[i].x - arcs[b].pts[j].x) +
                      sq(arcs[a].pts[i].y - arcs[b].pts[j].y);
          if (d2 < min_sep) min_sep = d2;
        }
      }
    }
  min_sep = std::sqrt(min_sep);
  v.residuals["min_separation"] = min_sep;
  if (min_sep <= 1e-9) fail("ARC_COLLISION", "arc pair");

  v.resolution = r;
  return v;
}

std::string construction_to_svg(const ClosedCurveResult& c, int samples_per_arc) {
  int n = std::max(16, samples_per_arc);
  std::vector<Point2> path;
  double period = c.x0 + 3.0;
  for (int i = 0; i < 4 * n; ++i)
    path.push_back(c.curve.at(period * i / (4.0 * n)));

  double minx = path[0].x, maxx = path[0].x, miny = path[0].y, maxy = path[0].y;
  for (const Point2& q : path) {
    minx = std::min(minx, q.x);
    maxx = std::max(maxx, q.x);
    miny = std::min(miny, q.y);
    maxy = std::max(maxy, q.y);
  }
  double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
  double margin = 0.05 * std::max(w, h);
  minx -= margin;
  maxx += margin;
  miny -= margin;
  maxy += margin;
  w = maxx - minx;
  h = maxy - miny;
  const double W = 800.0, H = 600.0;
  auto X = [&](double x) { return (x - minx) / w * W; };
  auto Y = [&](double y) { return (maxy - y) / h * H; };

  std::string out;
  char buf[256];
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                W, H, W, H);
  out += buf;
  out += "<path fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" d=\"";
  for (size_t i = 0; i < path.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%c%.3f %.3f ", i == 0 ? 'M' : 'L', X(path[i].x),
                  Y(path[i].y));
    out += buf;
  }
  out += "Z\"/>\n";
  for (size_t k = 0; k < c.normalized.pts.size(); ++k) {
    Point2 q = c.frame.inv(c.normalized.pts[k]);
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"#d62728\"/>\n",
                  X(q.x), Y(q.y));
    out += buf;
  }
  Point2 lim = c.frame.p;
  std::snprintf(buf, sizeof buf,
                "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"#2ca02c\"/>\n",
                X(lim.x), Y(lim.y));
  out += buf;
  out += "</svg>\n";
  return out;
}

}  // namespace c1homeo
