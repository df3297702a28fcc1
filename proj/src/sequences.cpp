#include "c1homeo/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Entries distinguishable from the limit point; chords need them.
std::vector<size_t> usable_entries(const DirectionSequence& seq) {
  double scale = std::max(1.0, std::hypot(seq.limit_point.x, seq.limit_point.y));
  std::vector<size_t> u;
  for (size_t i = 0; i < seq.entries.size(); ++i)
    if (dist(seq.entries[i].p, seq.limit_point) > 1e-15 * scale) u.push_back(i);
  return u;
}

std::vector<size_t> tail_of(const DirectionSequence& seq, const ResolutionParams& r) {
  std::vector<size_t> u = usable_entries(seq);
  if (static_cast<int>(u.size()) < r.tail_length)
    throw DegenerateSequenceError("sequence: fewer usable entries than tail_length");
  return {u.end() - r.tail_length, u.end()};
}

// Signed angular offset of a from b, in (-pi/2, pi/2].
double signed_offset(ProjDir a, ProjDir b) {
  double d = std::fmod(a.theta - b.theta, kPi);
  if (d > kPi / 2) d -= kPi;
  if (d <= -kPi / 2) d += kPi;
  return d;
}

std::string entry_witness(size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "entry %zu", i);
  return buf;
}

}  // namespace

Verdict converges_along_line(const DirectionSequence& seq, const ResolutionParams& r) {
  r.validate();
  std::vector<size_t> tail = tail_of(seq, r);
  size_t m = tail.size() / 2;
  double head_gap = 0.0, tail_gap = 0.0;
  size_t worst = tail[m];
  for (size_t k = 0; k < tail.size(); ++k) {
    Vec2 v = seq.entries[tail[k]].p - seq.limit_point;
    double g = proj_distance(*dir_of_vec(v), seq.limit_dir);
    if (k < m) {
      head_gap = std::max(head_gap, g);
    } else if (g >= tail_gap) {
      tail_gap = g;
      worst = tail[k];
    }
  }
  // The 1e-12 margin absorbs chord-direction rounding (entries produced by a
  // rigid motion carry ~1e-15 rad noise even when the exact gaps vanish).
  bool ok = tail_gap <= r.dir_tolerance && tail_gap <= head_gap + 1e-12;
  Verdict v = ok ? Verdict::pass(r) : Verdict::fail(r);
  v.residuals["tail_gap"] = tail_gap;
  v.residuals["head_gap"] = head_gap;
  if (!ok) v.witness = entry_witness(worst);
  return v;
}

Verdict is_transverse(const DirectionSequence& seq, const ResolutionParams& r) {
  Verdict conv = converges_along_line(seq, r);
  if (!conv.passed()) {
    conv.status = Status::FAIL;
    conv.reason = "NOT_CONVERGENT_ALONG_LINE";
    return conv;
  }
  std::vector<size_t> tail = tail_of(seq, r);
  double min_gap = kPi, max_gap = 0.0;
  size_t worst = tail.front();
  for (size_t i : tail) {
    double g = proj_distance(seq.entries[i].dir, seq.limit_dir);
    max_gap = std::max(max_gap, g);
    if (g < min_gap) {
      min_gap = g;
      worst = i;
    }
  }
  bool ok = min_gap >= r.dir_tolerance;
  Verdict v = ok ? Verdict::pass(r) : Verdict::fail(r);
  v.residuals = conv.residuals;
  v.residuals["min_dir_gap"] = min_gap;
  v.residuals["max_dir_gap"] = max_gap;
  if (!ok) {
    v.witness = entry_witness(worst);
    if (max_gap >= r.dir_tolerance) v.reason = "MIXED";
  }
  return v;
}

namespace {

// Height of the witness curve over the marked line at abscissa xi, in the
// frame (e, n) centered at p. The curve is a local graph there: expand a
// bracket for <c(s)-p, e> = xi starting from s0, then bisect.
double curve_height(const ParamCurve& c, double s0, Point2 p, Vec2 e, Vec2 n,
                    double xi) {
  auto F = [&](double s) { return dot(c.at(c.canon_param(s)) - p, e) - xi; };
  double f0 = F(s0);
  double eps = std::max(1e-9, 1e-7 * c.length());
  double probe = s0 + eps <= c.t_max || c.closed ? eps : -eps;
  double orient = F(s0 + probe) - f0 > 0.0 ? 1.0 : -1.0;
  orient *= probe > 0 ? 1.0 : -1.0;

  double h = orient * xi;
  double s1 = s0;
  bool bracketed = false;
  for (int k = 0; k < 60; ++k) {
    s1 = s0 + h;
    if (!c.closed) s1 = std::min(std::max(s1, c.t_min), c.t_max);
    if ((F(s1) > 0) != (f0 > 0)) {
      bracketed = true;
      break;
    }
    h *= 2.0;
    if (!c.closed && (s0 + h < c.t_min || s0 + h > c.t_max) &&
        (s1 == c.t_min || s1 == c.t_max))
      break;
  }
  if (!bracketed)
    throw BadSandwichError("sandwich: witness curve has no point over the abscissa");
  double lo = s0, hi = s1;
  for (int i = 0; i < 120; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((F(mid) > 0) == (f0 > 0))
      lo = mid;
    else
      hi = mid;
  }
  return dot(c.at(c.canon_param(0.5 * (lo + hi))) - p, n);
}

}  // namespace

Verdict converges_along_line_sandwich(const DirectionSequence& seq,
                                      const ParamCurve& lower, double lower_param,
                                      const ParamCurve& upper, double upper_param,
                                      const ResolutionParams& r) {
  r.validate();
  Point2 p = seq.limit_point;
  if (dist(lower.at(lower_param), p) > 1e-9 || dist(upper.at(upper_param), p) > 1e-9)
    throw BadSandwichError("sandwich: witness curve does not pass through the limit point");
  SlopeEstimate tl = tangent_at(lower, lower_param, r);
  SlopeEstimate tu = tangent_at(upper, upper_param, r);
  if (!tl.exists || !tu.exists)
    throw BadSandwichError("sandwich: witness tangent direction missing");
  double off_lo = signed_offset(tl.dir, seq.limit_dir);
  double off_up = signed_offset(tu.dir, seq.limit_dir);
  if (!(off_lo < -1e-12 && off_up > 1e-12))
    throw BadSandwichError("sandwich: witness tangents must straddle the marked line");

  std::vector<size_t> tail = tail_of(seq, r);
  Vec2 e{std::cos(seq.limit_dir.theta), std::sin(seq.limit_dir.theta)};
  Vec2 nrm{-e.y, e.x};
  double min_clearance = std::numeric_limits<double>::infinity();
  for (size_t i : tail) {
    Vec2 d = seq.entries[i].p - p;
    double xi = dot(d, e), eta = dot(d, nrm);
    bool between = false;
    double clearance = 0.0;
    if (xi != 0.0) {
      double h_lo = curve_height(lower, lower_param, p, e, nrm, xi);
      double h_up = curve_height(upper, upper_param, p, e, nrm, xi);
      between = (eta - h_lo) * (eta - h_up) < 0.0;
      clearance = std::min(std::abs(eta - h_lo), std::abs(eta - h_up));
    }
    if (!between) {
      Verdict v = Verdict::fail(r);
      v.witness = entry_witness(i);
      v.residuals["clearance"] = clearance;
      return v;
    }
    min_clearance = std::min(min_clearance, clearance);
  }
  Verdict v = Verdict::pass(r);
  v.residuals["min_clearance"] = min_clearance;
  return v;
}

DirectionSequence pushforward_sequence(const PlaneMap& f, const DirectionSequence& seq,
                                       const ResolutionParams& r) {
  r.validate();
  SlopeEstimate lim = induced_dir(f, seq.limit_point, seq.limit_dir, r);
  if (!lim.exists)
    throw MissingTangentError("pushforward: no induced direction at the limit", -1);
  DirectionSequence out;
  out.limit_point = f.fwd(seq.limit_point);
  out.limit_dir = lim.dir;
  out.entries.reserve(seq.entries.size());
  for (size_t i = 0; i < seq.entries.size(); ++i) {
    SlopeEstimate e = induced_dir(f, seq.entries[i].p, seq.entries[i].dir, r);
    if (!e.exists)
      throw MissingTangentError("pushforward: missing induced direction",
                                static_cast<int>(i));
    out.entries.push_back({f.fwd(seq.entries[i].p), e.dir});
  }
  return out;
}

Verdict property_c_on_sequence(const PlaneMap& f, const DirectionSequence& seq,
                               const ResolutionParams& r) {
  Verdict in_v = is_transverse(seq, r);
  if (!in_v.passed()) {
    Verdict v = Verdict::inconclusive(r, "SEQUENCE_NOT_TRANSVERSE");
    v.residuals = in_v.residuals;
    return v;
  }
  DirectionSequence push;
  try {
    push = pushforward_sequence(f, seq, r);
  } catch (const MissingTangentError& e) {
    Verdict v = Verdict::inconclusive(r, "MISSING_TANGENT");
    v.witness = entry_witness(static_cast<size_t>(std::max(e.index, 0)));
    return v;
  }
  return is_transverse(push, r);
}

std::string sequence_to_csv(const DirectionSequence& seq) {
  std::string out = "x,y,theta\n";
  char buf[160];
  for (const auto& e : seq.entries) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", e.p.x, e.p.y, e.dir.theta);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "limit,%.17g,%.17g,%.17g\n", seq.limit_point.x,
                seq.limit_point.y, seq.limit_dir.theta);
  out += buf;
  return out;
}

DirectionSequence sequence_from_csv(const std::string& text) {
  DirectionSequence seq;
  bool have_limit = false;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> row;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    if (lineno == 1 && !row.empty() && row[0] == "x") continue;  // header
    try {
      if (!row.empty() && row[0] == "limit") {
        if (row.size() != 4) throw GeomError("sequence csv: bad limit row");
        seq.limit_point = {std::stod(row[1]), std::stod(row[2])};
        seq.limit_dir = ProjDir{normalize_dir(std::stod(row[3]))};
        have_limit = true;
        continue;
      }
      if (have_limit) throw GeomError("sequence csv: rows after the limit trailer");
      if (row.size() != 3) throw GeomError("sequence csv: expected x,y,theta");
      seq.entries.push_back(
          {{std::stod(row[0]), std::stod(row[1])}, ProjDir{normalize_dir(std::stod(row[2]))}});
    } catch (const std::logic_error&) {
      throw GeomError("sequence csv: malformed number at line " + std::to_string(lineno));
    }
  }
  if (!have_limit) throw GeomError("sequence csv: missing limit trailer");
  return seq;
}

}  // namespace c1homeo
