#include "c1homeo/induced.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "c1homeo/errors.hpp"

namespace c1homeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double probe_scale(Point2 p) {
  double s = std::hypot(p.x, p.y);
  return s < 1e-9 ? 1.0 : s;
}

ResolutionParams scaled_resolution(const ResolutionParams& r, double s) {
  ResolutionParams rs = r;
  for (double& h : rs.h_grid) h *= s;
  return rs;
}

}  // namespace

SlopeEstimate induced_dir(const PlaneMap& f, Point2 p, ProjDir d,
                          const ResolutionParams& r) {
  r.validate();
  double s = probe_scale(p);
  ResolutionParams rs = scaled_resolution(r, s);
  double half_length = s * std::max(1.0, 2.0 * r.h_grid.front());
  ParamCurve line = line_through(p, d, half_length);
  ParamCurve img = image_curve(f.fwd, line);
  return tangent_at(img, 0.0, rs);
}

std::vector<ProfileEntry> induced_map_profile(const PlaneMap& f, Point2 p, int n,
                                              const ResolutionParams& r) {
  if (n < 3)
    throw ConstraintViolationError("induced_map_profile: need at least 3 directions");
  std::vector<ProfileEntry> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    double theta = kPi * j / n;
    out.push_back({theta, induced_dir(f, p, ProjDir{theta}, r)});
  }
  return out;
}

Verdict homeo_surrogate(const std::vector<ProfileEntry>& profile,
                        const ResolutionParams& r) {
  r.validate();
  int n = static_cast<int>(profile.size());
  if (n < 3)
    throw ConstraintViolationError("homeo_surrogate: need at least 3 entries");
  for (int i = 0; i < n; ++i)
    if (!profile[i].out.exists)
      throw MissingTangentError("homeo_surrogate: missing induced direction", i);

  double min_gap = kPi;
  int wi = 0, wj = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double g = proj_distance(profile[i].out.dir, profile[j].out.dir);
      if (g < min_gap) {
        min_gap = g;
        wi = i;
        wj = j;
      }
    }
  if (min_gap <= r.dir_tolerance / 10.0) {
    Verdict v = Verdict::fail(r, "COLLAPSED_DIRECTIONS");
    v.residuals["min_gap"] = min_gap;
    char buf[64];
    std::snprintf(buf, sizeof buf, "outputs %d and %d", wi, wj);
    v.witness = buf;
    return v;
  }

  CyclicOrder expected = CyclicOrder::DEGENERATE;
  for (int i = 0; i < n; ++i) {
    CyclicOrder o = cyclic_order(profile[i].out.dir, profile[(i + 1) % n].out.dir,
                                 profile[(i + 2) % n].out.dir);
    if (o == CyclicOrder::DEGENERATE) continue;
    if (expected == CyclicOrder::DEGENERATE) expected = o;
    if (o != expected) {
      Verdict v = Verdict::fail(r, "ORIENTATION_FLIP");
      v.residuals["min_gap"] = min_gap;
      char buf[64];
      std::snprintf(buf, sizeof buf, "triple at %d", i);
      v.witness = buf;
      return v;
    }
  }
  Verdict v = Verdict::pass(r);
  v.residuals["min_gap"] = min_gap;
  return v;
}

Verdict bundle_continuity_probe(const PlaneMap& f, const std::vector<PTPoint>& seq,
                                const PTPoint& limit, const ResolutionParams& r) {
  r.validate();
  if (seq.empty()) throw DegenerateSequenceError("bundle probe: empty sequence");
  for (size_t i = 1; i < seq.size(); ++i)
    if (dist(seq[i].p, limit.p) > dist(seq[i - 1].p, limit.p) + 1e-15)
      throw DegenerateSequenceError("bundle probe: norms must shrink monotonically");

  SlopeEstimate at_limit = induced_dir(f, limit.p, limit.dir, r);
  if (!at_limit.exists)
    throw MissingTangentError("bundle probe: no induced direction at the limit", -1);

  std::vector<double> gaps(seq.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    SlopeEstimate e = induced_dir(f, seq[i].p, seq[i].dir, r);
    if (!e.exists)
      throw MissingTangentError("bundle probe: missing induced direction",
                                static_cast<int>(i));
    gaps[i] = proj_distance(e.dir, at_limit.dir);
  }

  size_t tail = std::min<size_t>(r.tail_length, gaps.size());
  size_t begin = gaps.size() - tail;
  size_t mid = begin + tail / 2;
  double head_gap = 0.0, tail_gap = 0.0;
  size_t worst = mid;
  for (size_t i = begin; i < mid; ++i) head_gap = std::max(head_gap, gaps[i]);
  for (size_t i = mid; i < gaps.size(); ++i)
    if (gaps[i] >= tail_gap) {
      tail_gap = gaps[i];
      worst = i;
    }

  bool ok = tail_gap <= r.dir_tolerance && (mid == begin || tail_gap <= head_gap + 1e-12);
  Verdict v = ok ? Verdict::pass(r) : Verdict::fail(r);
  v.residuals["tail_gap"] = tail_gap;
  v.residuals["head_gap"] = head_gap;
  v.residuals["last_gap"] = gaps.back();
  if (!ok) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "entry %zu", worst);
    v.witness = buf;
  }
  return v;
}

std::string profile_to_csv(const std::vector<ProfileEntry>& profile) {
  std::string out = "theta_in,theta_out,residual,exists\n";
  char buf[160];
  for (const auto& e : profile) {
    double theta_out = e.out.exists ? e.out.dir.theta
                                    : std::numeric_limits<double>::quiet_NaN();
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", e.theta_in, theta_out,
                  e.out.residual, e.out.exists ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace c1homeo
