// sequences.hpp - marked sequences (points with entry directions converging
// to a marked limit on a marked line) and the finitary transversality tests
// built on them. Everything is decided on the tail: the last tail_length
// usable entries.
#pragma once

#include <string>
#include <vector>

#include "c1homeo/induced.hpp"

namespace c1homeo {

struct DirectionSequence {
  std::vector<PTPoint> entries;
  Point2 limit_point;
  ProjDir limit_dir;  // the line the points are tested against
};

/// Chord directions from the limit point settle on the marked line: the
/// worst gap over the newer half of the tail must be within dir_tolerance
/// and no larger than over the older half. Entries coinciding with the
/// limit point are unusable; fewer than tail_length usable entries raise
/// DegenerateSequenceError.
Verdict converges_along_line(const DirectionSequence& seq,
                             const ResolutionParams& r = {});

/// Same decision made geometrically: tail points must lie strictly between
/// two witness curves through the limit point whose tangents straddle the
/// marked line (checked; violations raise BadSandwichError). lower_param /
/// upper_param locate the limit point on the witness curves.
Verdict converges_along_line_sandwich(const DirectionSequence& seq,
                                      const ParamCurve& lower, double lower_param,
                                      const ParamCurve& upper, double upper_param,
                                      const ResolutionParams& r = {});

/// Transversality: convergence along the line plus entry directions keeping
/// a dir_tolerance gap from it on the tail. A tail that mixes gaps on both
/// sides of the tolerance FAILs with reason "MIXED".
Verdict is_transverse(const DirectionSequence& seq, const ResolutionParams& r = {});

/// Image sequence: points mapped by f, entry directions replaced by induced
/// directions, the marked line by the induced direction at the limit.
/// A missing induced direction raises MissingTangentError with the entry
/// index (-1 for the limit).
DirectionSequence pushforward_sequence(const PlaneMap& f, const DirectionSequence& seq,
                                       const ResolutionParams& r = {});

/// Transversality is preserved through f on this sequence. INCONCLUSIVE when
/// the input sequence is not itself transverse or a pushforward direction is
/// missing.
Verdict property_c_on_sequence(const PlaneMap& f, const DirectionSequence& seq,
                               const ResolutionParams& r = {});

/// CSV rows "x,y,theta" with a final "limit,x,y,theta" trailer.
std::string sequence_to_csv(const DirectionSequence& seq);
DirectionSequence sequence_from_csv(const std::string& text);

}  // namespace c1homeo
