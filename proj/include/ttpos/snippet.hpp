#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "ttpos/errors.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

struct Locus {
  enum class Kind : std::uint8_t { Seg, DS, Closed };
  Kind kind = Kind::Seg;
  int seg = -1;

  static Locus at(int s) { return Locus{Kind::Seg, s}; }
  static Locus ds() { return Locus{Kind::DS, -1}; }
  static Locus closed() { return Locus{Kind::Closed, -1}; }
  bool is_seg() const { return kind == Kind::Seg; }
  bool is_ds() const { return kind == Kind::DS; }
  bool is_closed() const { return kind == Kind::Closed; }
  bool operator==(const Locus&) const = default;
  auto operator<=>(const Locus&) const = default;
};

// One strong snippet class: region, endpoint loci, and the winding number for annuli (0 elsewhere).
struct Snippet {
  int region = -1;
  Locus start, end;
  int wind = 0;

  bool closed() const { return start.is_closed(); }
  bool operator==(const Snippet&) const = default;
  auto operator<=>(const Snippet&) const = default;
};

enum class Verdict { Carried, DualTie, DualComp, Bad };
enum class Turn { NA, Left, Right };

enum class BadType {
  None,
  Trivial,
  InessentialBigon,
  PeripheralCurve,
  B_hh,
  B_tt,
  B_ht,
  S_hh0,
  S_tt0,
  S_vv0,
  S_tv1,
  S_tt2,
  S_ht1,
  S_hv2,
  S_ht3,
  R_hh,
  R_vv,
  R_hv,
};

inline const char* bad_name(BadType t) {
  switch (t) {
    case BadType::None: return "none";
    case BadType::Trivial: return "Trivial";
    case BadType::InessentialBigon: return "R(dS,dS)";
    case BadType::PeripheralCurve: return "Peripheral";
    case BadType::B_hh: return "B(h,h)";
    case BadType::B_tt: return "B(t,t)";
    case BadType::B_ht: return "B(h,t)";
    case BadType::S_hh0: return "S(h,h,0)";
    case BadType::S_tt0: return "S(t,t,0)";
    case BadType::S_vv0: return "S(v,v,0)";
    case BadType::S_tv1: return "S(t,v,1)";
    case BadType::S_tt2: return "S(t,t,2)";
    case BadType::S_ht1: return "S(h,t,1)";
    case BadType::S_hv2: return "S(h,v,2)";
    case BadType::S_ht3: return "S(h,t,3)";
    case BadType::R_hh: return "R(h,h)";
    case BadType::R_vv: return "R(v,v)";
    case BadType::R_hv: return "R(h,v)";
  }
  return "?";
}

inline const char* turn_name(Turn t) { return t == Turn::Left ? "L" : t == Turn::Right ? "R" : "-"; }
inline Turn opposite(Turn t) { return t == Turn::Left ? Turn::Right : t == Turn::Right ? Turn::Left : Turn::NA; }

inline bool is_trigon(BadType t) {
  return t == BadType::B_ht || t == BadType::S_ht1 || t == BadType::S_hv2 || t == BadType::S_ht3 || t == BadType::R_hv;
}
inline bool is_bigon(BadType t) {
  switch (t) {
    case BadType::B_hh:
    case BadType::B_tt:
    case BadType::S_hh0:
    case BadType::S_tt0:
    case BadType::S_vv0:
    case BadType::S_tv1:
    case BadType::S_tt2:
    case BadType::R_hh:
    case BadType::R_vv: return true;
    default: return false;
  }
}

struct SnippetClass {
  Verdict verdict = Verdict::Carried;
  BadType type = BadType::None;
  Turn turn = Turn::NA;
  int cut_vertices = 0;  // marks and corners on the cut-off side (bad snippets)

  bool bad() const { return verdict == Verdict::Bad; }
  bool efficient() const { return verdict != Verdict::Bad; }
  bool trigon() const { return bad() && is_trigon(type); }
  bool bigon() const { return bad() && is_bigon(type); }
  bool operator==(const SnippetClass&) const = default;

  std::string str() const {
    switch (verdict) {
      case Verdict::Carried: return "carried";
      case Verdict::DualTie: return "dual-tie";
      case Verdict::DualComp: return std::string("dual-comp/") + turn_name(turn);
      case Verdict::Bad: return std::string(bad_name(type)) + "/" + turn_name(turn);
    }
    return "?";
  }
};

inline Label locus_label(const Region& R, Locus l) { return R.segs[R.mod(l.seg)].label; }

// Annuli: lift the outer boundary to a line; D is the signed number of segment steps from the
// start segment to the end segment. D > 0 runs counter-clockwise, cutting off the strip on the right.
inline int wind_of_displacement(const Region& R, int a, int D) {
  if (D >= 0) return R.corners_ccw(a, D);
  return -R.corners_ccw(a + D, -D);
}

inline int displacement(const Region& R, const Snippet& s) {
  if (!R.annulus()) throw Error(Errc::NotApplicable, "displacement outside an annulus");
  int L = R.size(), n = R.corners();
  if (s.closed()) {
    if (s.wind % n != 0) throw Error(Errc::InconsistentSnippet, "closed winding not a multiple of the corner count");
    return s.wind / n * L;
  }
  if (!s.start.is_seg() || !s.end.is_seg()) throw Error(Errc::NotApplicable, "displacement of a snippet touching the boundary");
  int D0 = R.mod(s.end.seg - s.start.seg);
  int c0 = wind_of_displacement(R, s.start.seg, D0);
  int diff = s.wind - c0;
  // C(D0 + tL) = C(D0) + t n
  if (((diff % n) + n) % n != 0)
    throw Error(Errc::InconsistentSnippet, R.name + ": winding " + std::to_string(s.wind) + " impossible between segments " +
                                               std::to_string(s.start.seg) + " and " + std::to_string(s.end.seg));
  int t = diff / n;
  return D0 + t * L;
}

inline Snippet annulus_snippet(const Region& R, int region, int a, int b, int D) {
  Snippet s{region, Locus::at(a), Locus::at(b), wind_of_displacement(R, a, D)};
  return s;
}

inline void validate_snippet(const Neighbourhood& N, const Snippet& s) {
  if (s.region < 0 || s.region >= N.size()) throw Error(Errc::InconsistentSnippet, "unknown region");
  const Region& R = N[s.region];
  if (s.start.is_closed() != s.end.is_closed()) throw Error(Errc::InconsistentSnippet, "closed at one end only");
  for (Locus l : {s.start, s.end}) {
    if (l.is_seg() && (l.seg < 0 || l.seg >= R.size()))
      throw Error(Errc::InconsistentSnippet, R.name + ": segment " + std::to_string(l.seg) + " out of range");
    if (l.is_ds() && !R.annulus()) throw Error(Errc::InconsistentSnippet, R.name + " has no boundary of the surface");
  }
  if (!R.annulus()) {
    if (s.wind != 0) throw Error(Errc::InconsistentSnippet, R.name + ": winding outside an annulus");
    return;
  }
  if (s.start.is_ds() || s.end.is_ds()) {
    if (s.wind != 0) throw Error(Errc::InconsistentSnippet, R.name + ": snippet touching the boundary has winding 0");
    return;
  }
  (void)displacement(R, s);
}

namespace detail {

// vertices and corners on each side of a non-closed snippet with both ends on segments
struct Sides {
  bool same = false;  // same segment in a disc or rectangle: a side of zero vertices, side unknown
  bool right_cut = false, left_cut = false;  // side bounds a disc in the region
  int right_steps = 0, right_corners = 0, left_steps = 0, left_corners = 0;
};

inline Sides sides_of(const Region& R, const Snippet& s) {
  Sides o;
  int a = s.start.seg, b = s.end.seg;
  if (R.annulus()) {
    int D = displacement(R, s);
    if (D == 0) {
      o.same = true;
    } else if (D > 0) {
      o.right_cut = true;
      o.right_steps = D;
      o.right_corners = R.corners_ccw(a, D);
    } else {
      o.left_cut = true;
      o.left_steps = -D;
      o.left_corners = R.corners_ccw(b, -D);
    }
    return o;
  }
  if (a == b) {
    o.same = true;
    return o;
  }
  o.right_cut = o.left_cut = true;
  o.right_steps = R.mod(b - a);
  o.right_corners = R.corners_ccw(a, o.right_steps);
  o.left_steps = R.mod(a - b);
  o.left_corners = R.corners_ccw(b, o.left_steps);
  return o;
}

inline int label_rank(Label l) { return l == Label::h ? 0 : l == Label::t ? 1 : 2; }

inline BadType switch_type(Label x, Label y, int w) {
  if (label_rank(x) > label_rank(y)) std::swap(x, y);
  using L = Label;
  if (x == L::h && y == L::h && w == 0) return BadType::S_hh0;
  if (x == L::t && y == L::t && w == 0) return BadType::S_tt0;
  if (x == L::v && y == L::v && w == 0) return BadType::S_vv0;
  if (x == L::t && y == L::v && w == 1) return BadType::S_tv1;
  if (x == L::t && y == L::t && w == 2) return BadType::S_tt2;
  if (x == L::h && y == L::t && w == 1) return BadType::S_ht1;
  if (x == L::h && y == L::v && w == 2) return BadType::S_hv2;
  if (x == L::h && y == L::t && w == 3) return BadType::S_ht3;
  throw Error(Errc::InconsistentSnippet, "no switch snippet type for this cut");
}

}  // namespace detail

inline SnippetClass classify(const Neighbourhood& N, const Snippet& s) {
  validate_snippet(N, s);
  const Region& R = N[s.region];
  SnippetClass c;
  if (s.closed()) {
    c.verdict = Verdict::Bad;
    c.type = (R.annulus() && s.wind != 0) ? BadType::PeripheralCurve : BadType::Trivial;
    return c;
  }
  if (s.start.is_ds() && s.end.is_ds()) {
    c.verdict = Verdict::Bad;
    c.type = BadType::InessentialBigon;
    return c;
  }
  if (s.start.is_ds() || s.end.is_ds()) {
    c.verdict = Verdict::DualComp;
    return c;
  }
  Label la = locus_label(R, s.start), lb = locus_label(R, s.end);
  if (R.annulus()) {
    int w = s.wind, aw = std::abs(w);
    if (aw >= 2) {
      c.verdict = Verdict::DualComp;
      if (aw == 2) c.turn = w > 0 ? Turn::Right : Turn::Left;
      return c;
    }
    auto sd = detail::sides_of(R, s);
    c.verdict = Verdict::Bad;
    c.turn = sd.right_cut ? Turn::Right : sd.left_cut ? Turn::Left : Turn::NA;
    c.cut_vertices = sd.right_cut ? sd.right_steps : sd.left_steps;
    if (aw == 1) {
      c.type = BadType::R_hv;
    } else {
      c.type = la == Label::v ? BadType::R_vv : BadType::R_hh;
      if (la != lb) throw Error(Errc::InconsistentSnippet, "cornerless cut between different sides");
    }
    return c;
  }
  auto sd = detail::sides_of(R, s);
  int cmin;
  if (sd.same) {
    cmin = 0;
  } else if (sd.right_corners <= 1) {
    cmin = sd.right_corners;
    c.turn = Turn::Right;
    c.cut_vertices = sd.right_steps;
  } else if (sd.left_corners <= 1) {
    cmin = sd.left_corners;
    c.turn = Turn::Left;
    c.cut_vertices = sd.left_steps;
  } else {
    cmin = 2;
  }
  if (cmin <= 1) {
    c.verdict = Verdict::Bad;
    if (R.kind == RegionKind::BranchRect) {
      if (cmin == 1) c.type = BadType::B_ht;
      else c.type = la == Label::h ? BadType::B_hh : BadType::B_tt;
    } else if (R.kind == RegionKind::SwitchRect) {
      c.type = detail::switch_type(la, lb, c.cut_vertices);
    } else {
      if (cmin == 1) c.type = BadType::R_hv;
      else c.type = la == Label::v ? BadType::R_vv : BadType::R_hh;
      if (cmin == 0 && la != lb) throw Error(Errc::InconsistentSnippet, "cornerless cut between different sides");
    }
    return c;
  }
  if (R.rect()) {
    c.verdict = la == Label::h ? Verdict::DualTie : Verdict::Carried;
    return c;
  }
  c.verdict = Verdict::DualComp;
  if (sd.right_corners == 2) c.turn = Turn::Right;
  else if (sd.left_corners == 2) c.turn = Turn::Left;
  return c;
}

inline int winding_number(const Neighbourhood& N, const Snippet& s) {
  if (!N[s.region].annulus()) throw Error(Errc::NotApplicable, "winding number outside an annulus");
  validate_snippet(N, s);
  return s.wind;
}

// marks and corners of the cut-off region for bad switch-rectangle snippets
inline int weight(const Neighbourhood& N, const Snippet& s) {
  if (N[s.region].kind != RegionKind::SwitchRect) throw Error(Errc::NotApplicable, "weight outside a switch rectangle");
  SnippetClass c = classify(N, s);
  if (!c.bad()) throw Error(Errc::NotApplicable, "weight of an efficient snippet");
  return c.cut_vertices;
}

// Rectangles: 1 (branch) or 3 (switch). Complementary regions: weighted count of the full segments
// strictly between the endpoints on the side cutting off a region of non-negative index; 2 s_N otherwise.
inline int corner_length(const Neighbourhood& N, const Snippet& s) {
  const Region& R = N[s.region];
  if (R.kind == RegionKind::BranchRect) return 1;
  if (R.kind == RegionKind::SwitchRect) return 3;
  const int fallback = 2 * N.s_N;
  if (s.closed()) return (R.annulus() && s.wind != 0) ? fallback : 0;
  if (!s.start.is_seg() || !s.end.is_seg()) return fallback;
  auto weigh = [&](int from, int dir, int steps) {
    int sum = 0;
    for (int i = 1; i < steps; ++i) sum += R.seg_weight(from + dir * i);
    return sum;
  };
  if (R.annulus()) {
    int D = displacement(R, s);
    if (std::abs(s.wind) > 2 || std::abs(D) > R.size()) return fallback;
    if (D == 0) return 0;
    return D > 0 ? weigh(s.start.seg, 1, D) : weigh(s.start.seg, -1, -D);
  }
  auto sd = detail::sides_of(R, s);
  if (sd.same) return 0;
  if (sd.right_corners <= 2 && sd.right_corners <= sd.left_corners) return weigh(s.start.seg, 1, sd.right_steps);
  if (sd.left_corners <= 2) return weigh(s.start.seg, -1, sd.left_steps);
  return fallback;
}

}  // namespace ttpos
