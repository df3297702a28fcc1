// verdict.hpp - resolution-stamped outcome of a finitary check. A verdict is
// a statement at the given resolution, never a proof; INCONCLUSIVE marks
// numerical breakdown (estimates missing), not a property failure.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "c1homeo/projgeom.hpp"

namespace c1homeo {

enum class Status { PASS, FAIL, INCONCLUSIVE };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::PASS:
      return "PASS";
    case Status::FAIL:
      return "FAIL";
    default:
      return "INCONCLUSIVE";
  }
}

struct Verdict {
  Status status = Status::INCONCLUSIVE;
  std::map<std::string, double> residuals;  // named scalar diagnostics
  ResolutionParams resolution;
  std::optional<std::string> witness;  // offending curve/param/sequence, if any
  std::string reason;                  // e.g. "MIXED", "MISSING_TANGENT"

  bool passed() const { return status == Status::PASS; }
  bool failed() const { return status == Status::FAIL; }

  static Verdict pass(const ResolutionParams& r) {
    Verdict v;
    v.status = Status::PASS;
    v.resolution = r;
    return v;
  }
  static Verdict fail(const ResolutionParams& r, std::string why = "") {
    Verdict v;
    v.status = Status::FAIL;
    v.resolution = r;
    v.reason = std::move(why);
    return v;
  }
  static Verdict inconclusive(const ResolutionParams& r, std::string why) {
    Verdict v;
    v.status = Status::INCONCLUSIVE;
    v.resolution = r;
    v.reason = std::move(why);
    return v;
  }
};

}  // namespace c1homeo
