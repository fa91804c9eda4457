#pragma once

#include <cstdlib>

#include "ttpos/verify.hpp"

namespace ttpos::testing {

// A trigon push can drag a neighbouring annulus snippet that already makes a full lap past its
// start, so it stops being embedded and its corner length jumps to the 2s fallback. Such events
// break reduced-length monotonicity; every other violation is a real failure.
inline bool lap_overrun(const Neighbourhood& N, const RewriteEvent& e) {
  if (!e.after) return false;
  for (int t = 0; t < e.window_len; ++t) {
    const Snippet& s = e.after->at(e.window_start + t);
    const Region& R = N[s.region];
    if (R.annulus() && s.start.is_seg() && s.end.is_seg() && std::abs(displacement(R, s)) > R.size()) return true;
  }
  return false;
}

// violations left after setting aside monotonicity breaches explained by lap_overrun
inline std::vector<Violation> unexplained(const Neighbourhood& N, const Trace& tr, const AuditReport& rep) {
  std::vector<Violation> out;
  for (const Violation& v : rep.violations)
    if (!(v.clause == "monotonicity" && lap_overrun(N, tr.events[v.event]))) out.push_back(v);
  return out;
}

}  // namespace ttpos::testing
