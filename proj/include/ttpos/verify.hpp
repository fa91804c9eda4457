#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/homotopy.hpp"
#include "ttpos/quarter.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

// ---- efficiency checker

struct SnippetVerdict {
  bool efficient = true;
  Quarter cut_index{0};  // largest index of a disc cut off by the snippet (or 1/2 for closed and boundary bigons)
};

struct EfficiencyReport {
  bool pass = true;
  int first_failure = -1;
  std::vector<SnippetVerdict> verdicts;
};

namespace detail {

// corners met walking `steps` vertices counter-clockwise past the start segment
inline int walk_corners(const Region& R, int a, int steps) {
  int L = static_cast<int>(R.segs.size()), c = 0;
  for (int i = 1; i <= steps; ++i) c += R.angle[((a + i) % L + L) % L] == 1;
  return c;
}

// a disc bounded by the snippet and a boundary arc with c region corners
inline Quarter cut_disc_index(int c) { return index(1, 2 + c, 0); }

}  // namespace detail

inline SnippetVerdict check_snippet(const Neighbourhood& N, const Snippet& s) {
  const Region& R = N[s.region];
  int L = static_cast<int>(R.segs.size());
  SnippetVerdict v;
  bool ann = R.kind == RegionKind::CompAnnulus;
  if (s.start.is_closed()) {
    v.efficient = false;
    v.cut_index = Quarter{2};
    return v;
  }
  if (s.start.is_ds() || s.end.is_ds()) {
    v.efficient = !(s.start.is_ds() && s.end.is_ds());
    v.cut_index = v.efficient ? Quarter{0} : Quarter{2};
    return v;
  }
  int a = s.start.seg, b = s.end.seg;
  Quarter best{-1000};
  if (ann) {
    // recover the lift from the stored winding by trying nearby laps
    int D0 = ((b - a) % L + L) % L, D = 0;
    bool found = false;
    for (int t = -std::abs(s.wind) - 2; t <= std::abs(s.wind) + 2 && !found; ++t) {
      int d = D0 + t * L;
      int w = d >= 0 ? detail::walk_corners(R, a, d) : -detail::walk_corners(R, a + d, -d);
      if (w == s.wind) {
        D = d;
        found = true;
      }
    }
    if (!found) throw Error(Errc::InconsistentSnippet, "winding does not match the endpoints");
    int c = D >= 0 ? detail::walk_corners(R, a, D) : detail::walk_corners(R, b, -D);
    best = detail::cut_disc_index(c);
  } else if (a == b) {
    best = detail::cut_disc_index(0);
  } else {
    int right = 0, left = 0;
    for (int i = a + 1; ((i - b) % L + L) % L != 1; ++i) right += R.angle[i % L] == 1;
    for (int i = b + 1; ((i - a) % L + L) % L != 1; ++i) left += R.angle[i % L] == 1;
    best = std::max(detail::cut_disc_index(right), detail::cut_disc_index(left));
  }
  v.cut_index = best;
  v.efficient = best <= Quarter{0};
  return v;
}

inline EfficiencyReport check_efficient(const Neighbourhood& N, const Curve& c) {
  EfficiencyReport r;
  for (int i = 0; i < c.len(); ++i) {
    r.verdicts.push_back(check_snippet(N, c.s[i]));
    if (!r.verdicts.back().efficient && r.pass) {
      r.pass = false;
      r.first_failure = i;
    }
  }
  return r;
}

// ---- trace audit

struct Violation {
  int event = -1;
  std::string clause;
  std::string detail;
};

struct AuditReport {
  bool pass = true;
  long events = 0;
  long trigon_events = 0;
  std::vector<Violation> violations;
  void fail(int e, std::string clause, std::string detail = {}) {
    pass = false;
    violations.push_back({e, std::move(clause), std::move(detail)});
  }
};

struct AuditOptions {
  bool graph_everywhere = false;  // check the trigon graph outside TrigArc and TrigCurve as well
};

namespace detail {

inline bool trig_context(const std::string& c) { return c == "TrigArc" || c == "TrigCurve"; }

// snippet count pushed for each fixed-shape bad type, -1 when it depends on the region
inline int expected_pushed(BadType t) {
  switch (t) {
    case BadType::B_ht:
    case BadType::S_ht1:
    case BadType::S_tv1: return 1;
    case BadType::S_hv2:
    case BadType::S_tt2: return 2;
    case BadType::S_ht3: return 3;
    case BadType::B_tt:
    case BadType::B_hh:
    case BadType::S_hh0:
    case BadType::S_tt0:
    case BadType::S_vv0:
    case BadType::R_vv: return 0;
    default: return -1;
  }
}

inline int side_of(const Region& R, Locus l) {
  if (!l.is_seg()) return -1;
  auto sides = R.sides();
  for (int i = 0; i < (int)sides.size(); ++i)
    for (int s : sides[i].segs)
      if (s == l.seg) return i;
  return -1;
}

}  // namespace detail

// Replays every recorded rewrite and checks the per-rule contracts.
inline AuditReport audit_trace(const Neighbourhood& N, const Trace& tr, const AuditOptions& o = {}) {
  AuditReport rep;
  const int s = N.s_N;
  for (int i = 0; i < (int)tr.events.size(); ++i) {
    const RewriteEvent& e = tr.events[i];
    ++rep.events;
    bool trig = is_trigon(e.type);
    rep.trigon_events += trig;
    int m = e.pushed;
    int exp_m = detail::expected_pushed(e.type);
    if (exp_m >= 0 && m != exp_m) rep.fail(i, "length-delta", std::string(bad_name(e.type)) + " pushed " + std::to_string(m));
    if ((e.type == BadType::R_hv || e.type == BadType::R_hh) && m > s)
      rep.fail(i, "length-delta", "pushed " + std::to_string(m) + " > s_N");
    bool closed_pair = e.closed && e.before_len == 2;
    int want = closed_pair ? (m == 0 ? 1 : m) : e.before_len - 2 + m;
    if (e.after_len != want)
      rep.fail(i, "length-delta", std::to_string(e.before_len) + " -> " + std::to_string(e.after_len));
    if (trig && e.new_bad && e.new_bad->second.turn != Turn::NA && e.new_bad->second.turn != e.turn)
      rep.fail(i, "turn", "turn flipped to " + std::string(turn_name(e.new_bad->second.turn)));
    if (trig && (o.graph_everywhere || detail::trig_context(e.context)) && !trigon_transition_check(e, s))
      rep.fail(i, "trigon-graph",
               std::string(bad_name(e.type)) + " -> " + (e.new_bad ? bad_name(e.new_bad->second.type) : "efficient"));
    if (trig && e.measured && detail::trig_context(e.context)) {
      if (e.after_m.bad_count > 0 && e.after_red > e.before_red)
        rep.fail(i, "monotonicity", std::to_string(e.before_red) + " -> " + std::to_string(e.after_red));
      if (e.after_m.bad_count == 0 && e.after_red > e.before_red + 2 * s)
        rep.fail(i, "monotonicity", "terminal increase beyond 2s");
    }
    if (!e.before || !e.after) continue;
    const Curve& b = *e.before;
    const Curve& a = *e.after;
    // replay
    Curve again = hom(N, b, e.k);
    if (!(again == a)) {
      // closed curves place the replacement relative to the caller's index; accept any rotation
      bool rot = false;
      if (a.closed() && again.len() == a.len())
        for (int r = 0; r < a.len() && !rot; ++r) {
          bool eq = true;
          for (int t = 0; t < a.len() && eq; ++t) eq = again.at(t + r) == a.at(t);
          rot = eq;
        }
      if (!rot) rep.fail(i, "replay", "recomputed rewrite differs");
    }
    int n = b.len(), L = a.len(), w = e.window_len, st = e.window_start;
    // locality
    if (b.arc()) {
      bool ok = L == n - 3 + w;
      for (int t = 0; ok && t < e.k - 1; ++t) ok = a.s[t] == b.s[t];
      for (int t = 0; ok && e.k + 2 + t < n; ++t) ok = a.s[st + w + t] == b.s[e.k + 2 + t];
      if (ok && w > 0) ok = a.s[st].start == b.s[e.k - 1].start && a.s[st + w - 1].end == b.s[e.k + 1].end;
      if (!ok) rep.fail(i, "locality", "arc changed outside the window");
    } else if (!closed_pair) {
      bool ok = true;
      for (int t = 0; ok && t < n - 3; ++t) ok = a.at(st + w + t) == b.at(e.k + 2 + t);
      if (!ok) rep.fail(i, "locality", "closed curve changed outside the window");
    }
    // winding of the outer snippets moves by at most one
    if (!closed_pair && w >= 2) {
      const Snippet& p0 = b.at(e.k - 1);
      const Snippet& p1 = b.at(e.k + 1);
      const Snippet& q0 = a.at(st);
      const Snippet& q1 = a.at(st + w - 1);
      if (N[p0.region].annulus() && q0.region == p0.region && std::abs(q0.wind - p0.wind) > 1)
        rep.fail(i, "winding", "first outer snippet");
      if (N[p1.region].annulus() && q1.region == p1.region && std::abs(q1.wind - p1.wind) > 1)
        rep.fail(i, "winding", "last outer snippet");
      // weak class: same region and same sides at both ends
      if (trig) {
        auto weak = [&](const Snippet& x, const Snippet& y) {
          const Region& R = N[x.region];
          return x.region == y.region && detail::side_of(R, x.start) == detail::side_of(R, y.start) &&
                 detail::side_of(R, x.end) == detail::side_of(R, y.end);
        };
        if (!weak(p0, q0) && !weak(p1, q1)) rep.fail(i, "weak-boundary", "both outer snippets changed weak class");
      }
    }
  }
  return rep;
}

inline void audit_or_throw(const Neighbourhood& N, const Trace& tr, const AuditOptions& o = {}) {
  AuditReport r = audit_trace(N, tr, o);
  if (!r.pass) {
    const Violation& v = r.violations.front();
    throw Error(Errc::AuditFailure, "event " + std::to_string(v.event) + ": " + v.clause + " " + v.detail, v.event);
  }
}

// ---- exhaustive oracle

enum class OracleVerdict { Efficient, SingleSnippet, Conflict, Inconclusive };

inline const char* oracle_name(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Efficient: return "efficient";
    case OracleVerdict::SingleSnippet: return "single-snippet";
    case OracleVerdict::Conflict: return "conflict";
    case OracleVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct OracleOptions {
  long cap = 50000;
  int max_len = -1;  // default: input length + 3 s_N
};

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Inconclusive;
  bool found_efficient = false, found_single = false;
  bool complete = false;  // whole move graph explored within the caps
  long states = 0;
};

namespace detail {

inline std::vector<int> snippet_key(const Snippet& s) {
  auto loc = [](Locus l) { return l.is_seg() ? l.seg : l.is_ds() ? -1 : -2; };
  return {s.region, loc(s.start), loc(s.end), s.wind};
}

inline std::vector<int> curve_key(const Curve& c) {
  int n = c.len();
  std::vector<std::vector<int>> parts;
  for (const Snippet& s : c.s) parts.push_back(snippet_key(s));
  int best = 0;
  if (c.closed())
    for (int r = 1; r < n; ++r)
      for (int t = 0; t < n; ++t) {
        const auto& x = parts[(r + t) % n];
        const auto& y = parts[(best + t) % n];
        if (x != y) {
          if (x < y) best = r;
          break;
        }
      }
  std::vector<int> key{c.closed() ? 1 : 0};
  for (int t = 0; t < n; ++t) {
    const auto& p = parts[(best + t) % n];
    key.insert(key.end(), p.begin(), p.end());
  }
  return key;
}

struct KeyHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<size_t>(x + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

// Breadth-first closure under every applicable local homotopy.
inline OracleResult exhaustive_oracle(const Neighbourhood& N, const Curve& in, const OracleOptions& o = {}) {
  validate_curve(N, in);
  OracleResult r;
  int max_len = o.max_len >= 0 ? o.max_len : in.len() + 3 * N.s_N;
  std::unordered_set<std::vector<int>, detail::KeyHash> seen;
  std::deque<Curve> q;
  seen.insert(detail::curve_key(in));
  q.push_back(in);
  bool capped = false;
  while (!q.empty()) {
    Curve c = std::move(q.front());
    q.pop_front();
    ++r.states;
    if (c.len() == 1) {
      bool terminal = c.closed() || classify(N, c.s[0]).bad();
      if (terminal) {
        r.found_single = true;
        continue;
      }
    }
    std::vector<int> bad;
    for (int k = 0; k < c.len(); ++k)
      if (classify(N, c.s[k]).bad()) bad.push_back(k);
    if (bad.empty()) {
      r.found_efficient = true;
      continue;
    }
    for (int k : bad) {
      if (c.arc() && (k == 0 || k == c.len() - 1)) continue;
      SnippetClass cl = classify(N, c.s[k]);
      if (!is_bigon(cl.type) && !is_trigon(cl.type)) continue;
      Curve d = hom(N, c, k);
      if (d.len() > max_len) {
        capped = true;
        continue;
      }
      auto key = detail::curve_key(d);
      if (seen.count(key)) continue;
      if ((long)seen.size() >= o.cap) {
        capped = true;
        continue;
      }
      seen.insert(std::move(key));
      q.push_back(std::move(d));
    }
  }
  r.complete = !capped;
  if (r.found_efficient && r.found_single) r.verdict = OracleVerdict::Conflict;
  else if (r.found_efficient) r.verdict = OracleVerdict::Efficient;
  else if (r.found_single) r.verdict = OracleVerdict::SingleSnippet;
  return r;
}

}  // namespace ttpos
