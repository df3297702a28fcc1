// induced.hpp - the action of a map on the projective tangent space at a
// point: directions in, directions of image curves out. All estimates step
// along the probe line at h_grid scaled by |p|, so a germ near the origin is
// probed at its own scale (floating-point error is relative, nothing is
// lost; at p = 0 the scale is 1).
#pragma once

#include <string>
#include <vector>

#include "c1homeo/curves.hpp"
#include "c1homeo/maps.hpp"
#include "c1homeo/verdict.hpp"

namespace c1homeo {

/// A point of the projectivized tangent bundle.
struct PTPoint {
  Point2 p;
  ProjDir dir;
};

/// Direction at f(p) of the image of the line through p with direction d.
SlopeEstimate induced_dir(const PlaneMap& f, Point2 p, ProjDir d,
                          const ResolutionParams& r = {});

struct ProfileEntry {
  double theta_in = 0.0;
  SlopeEstimate out;
};

/// Samples the induced direction map at n equally spaced directions in [0, pi).
std::vector<ProfileEntry> induced_map_profile(const PlaneMap& f, Point2 p, int n,
                                              const ResolutionParams& r = {});

/// Does a sampled direction profile look like a circle homeomorphism?
/// PASS iff outputs are pairwise distinct beyond dir_tolerance/10 and every
/// consecutive input triple (with wraparound) keeps one cyclic orientation.
/// Throws MissingTangentError (index = profile entry) if any output is
/// missing. Requires at least 3 entries.
Verdict homeo_surrogate(const std::vector<ProfileEntry>& profile,
                        const ResolutionParams& r = {});

/// Continuity of the induced bundle map along a convergent marked sequence:
/// induced directions at the sequence points must converge to the induced
/// direction at the limit within dir_tolerance over the tail. Sequence
/// points must approach limit.p monotonically in norm. Missing induced
/// directions throw MissingTangentError (index -1 marks the limit).
Verdict bundle_continuity_probe(const PlaneMap& f, const std::vector<PTPoint>& seq,
                                const PTPoint& limit, const ResolutionParams& r = {});

/// CSV rows "theta_in,theta_out,residual,exists"; theta_out is nan when the
/// estimate does not exist.
std::string profile_to_csv(const std::vector<ProfileEntry>& profile);

}  // namespace c1homeo
