#pragma once

#include <string>
#include <vector>

#include "ttpos/errors.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

enum class CurveKind { Arc, Closed };

// A cutting sequence. Arcs keep their outer endpoints in the first start and last end loci.
struct Curve {
  CurveKind kind = CurveKind::Closed;
  std::vector<Snippet> s;

  int len() const { return static_cast<int>(s.size()); }
  bool closed() const { return kind == CurveKind::Closed; }
  bool arc() const { return kind == CurveKind::Arc; }
  bool empty() const { return s.empty(); }
  // cyclic access for closed curves, python-style negatives for arcs
  const Snippet& at(int i) const { return s[norm(i)]; }
  Snippet& at(int i) { return s[norm(i)]; }
  int norm(int i) const {
    int n = len();
    return ((i % n) + n) % n;
  }
  bool operator==(const Curve&) const = default;
};

inline bool adjacent(const Neighbourhood& N, const Snippet& a, const Snippet& b) {
  if (!a.end.is_seg() || !b.start.is_seg()) return false;
  return N.partner(SegRef{a.region, a.end.seg}) == SegRef{b.region, b.start.seg};
}

// index of the first broken junction, -1 if consecutive snippets are glued
inline int first_break(const Neighbourhood& N, const Curve& c) {
  int n = c.len();
  for (int i = 0; i + 1 < n; ++i)
    if (!adjacent(N, c.s[i], c.s[i + 1])) return i + 1;
  if (c.closed() && n > 1 && !adjacent(N, c.s[n - 1], c.s[0])) return 0;
  return -1;
}

inline void validate_curve(const Neighbourhood& N, const Curve& c) {
  for (int i = 0; i < c.len(); ++i) {
    try {
      validate_snippet(N, c.s[i]);
    } catch (const Error& e) {
      throw Error(Errc::InconsistentSnippet, "snippet " + std::to_string(i) + ": " + e.what(), i);
    }
    if (c.s[i].closed() && c.len() > 1)
      throw Error(Errc::InconsistentSnippet, "closed snippet inside a curve of length > 1", i);
    bool inner_start = c.closed() || i > 0, inner_end = c.closed() || i + 1 < c.len();
    if ((inner_start && c.s[i].start.is_ds()) || (inner_end && c.s[i].end.is_ds()))
      throw Error(Errc::InconsistentSnippet, "boundary of the surface met in the interior", i);
  }
  if (c.closed() && c.len() == 1 && !c.s[0].closed())
    throw Error(Errc::AdjacencyError, "single snippet cannot close up", 0);
  int b = first_break(N, c);
  if (b >= 0) throw Error(Errc::AdjacencyError, "snippet " + std::to_string(b) + " is not glued to its predecessor", b);
}

// python slicing; closed curves read circularly, so slice(a, i, len + j) = a[i:] . a[:j]
inline Curve slice(const Curve& c, int i, int j) {
  int n = c.len();
  Curve out{CurveKind::Arc, {}};
  if (c.arc()) {
    if (i < 0) i += n;
    if (j < 0) j += n;
    if (i < 0 || j > n || i > j) throw Error(Errc::OutOfRange, "slice [" + std::to_string(i) + ":" + std::to_string(j) + "]");
    out.s.assign(c.s.begin() + i, c.s.begin() + j);
    return out;
  }
  if (n == 0) return out;
  if (i < 0) i += n;
  if (j < 0) j += n;
  if (j < i) j += n;
  for (int k = i; k < j; ++k) out.s.push_back(c.at(k));
  return out;
}

// the count snippets starting at position i of a closed curve, as an arc
inline Curve window(const Curve& c, int i, int count) {
  Curve out{CurveKind::Arc, {}};
  for (int k = 0; k < count; ++k) out.s.push_back(c.at(i + k));
  return out;
}

inline Curve concat(const Neighbourhood& N, const Curve& a, const Curve& b) {
  if (!a.empty() && !b.empty() && !adjacent(N, a.s.back(), b.s.front()))
    throw Error(Errc::NotAdjacent, "concatenation at a non-glued junction");
  Curve out{CurveKind::Arc, a.s};
  out.s.insert(out.s.end(), b.s.begin(), b.s.end());
  return out;
}

inline Snippet reversed(const Snippet& s) { return Snippet{s.region, s.end, s.start, -s.wind}; }

inline Curve reverse(const Curve& c) {
  Curve out{c.kind, {}};
  for (int i = c.len() - 1; i >= 0; --i) out.s.push_back(reversed(c.s[i]));
  return out;
}

inline Curve close(const Neighbourhood& N, const Curve& a) {
  Curve out{CurveKind::Closed, a.s};
  if (a.len() == 1 && a.s[0].closed()) return out;
  if (a.empty() || !adjacent(N, a.s.back(), a.s.front())) throw Error(Errc::NotAdjacent, "arc does not close up");
  return out;
}

// Identify the two copies of `orig` at the ends of an arc produced from a . a[0].
inline Curve glue(const Neighbourhood& N, const Curve& a, const Snippet& orig) {
  if (a.empty()) throw Error(Errc::NotGluable, "empty arc");
  const Snippet& f = a.s.front();
  const Snippet& l = a.s.back();
  if (f.region != orig.region || l.region != orig.region || !(f.start == orig.start) || !(l.end == orig.end))
    throw Error(Errc::NotGluable, "end snippets are not copies of the same snippet");
  const Region& R = N[orig.region];
  Snippet g{orig.region, l.start, f.end, 0};
  if (a.len() == 1) {
    g.start = g.end = Locus::closed();
    if (R.annulus()) g.wind = wind_of_displacement(R, 0, displacement(R, f) - displacement(R, orig));
    return Curve{CurveKind::Closed, {g}};
  }
  if (R.annulus()) {
    int D = displacement(R, f) + displacement(R, l) - displacement(R, orig);
    g.wind = wind_of_displacement(R, g.start.seg, D);
  }
  Curve out{CurveKind::Closed, {g}};
  out.s.insert(out.s.end(), a.s.begin() + 1, a.s.end() - 1);
  if (out.len() > 1 && !adjacent(N, out.s.back(), out.s.front())) throw Error(Errc::NotGluable, "glued curve does not close");
  return out;
}

struct LengthReport {
  int len = 0;
  int len_corn = 0;
  int len_block = 0;
  int len_red = 0;
  int carr = 0;
  int dual_R = 0;
  int dual_L = 0;
  int bad_count = 0;
  bool operator==(const LengthReport&) const = default;
};

inline bool vertical_dual(const Neighbourhood& N, const Snippet& s, const SnippetClass& c) {
  if (c.verdict != Verdict::DualComp || c.turn == Turn::NA) return false;
  const Region& R = N[s.region];
  return locus_label(R, s.start) == Label::h && locus_label(R, s.end) == Label::h;
}

inline bool horizontal_dual(const Neighbourhood& N, const Snippet& s, const SnippetClass& c) {
  if (c.verdict != Verdict::DualComp || c.turn == Turn::NA) return false;
  const Region& R = N[s.region];
  return locus_label(R, s.start) == Label::v && locus_label(R, s.end) == Label::v;
}

// [vertical dual, tie of a branch rectangle, vertical dual], both duals turning the same way
inline bool is_blocker(const Neighbourhood& N, const Snippet& a, const Snippet& b, const Snippet& c) {
  SnippetClass ca = classify(N, a), cb = classify(N, b), cc = classify(N, c);
  if (!vertical_dual(N, a, ca) || !vertical_dual(N, c, cc)) return false;
  if (cb.verdict != Verdict::DualTie || N[b.region].kind != RegionKind::BranchRect) return false;
  return ca.turn == cc.turn;
}

inline bool is_blocker(const Neighbourhood& N, const Curve& w) {
  return w.len() == 3 && is_blocker(N, w.s[0], w.s[1], w.s[2]);
}

// start positions of blocker windows; cyclic for closed curves
inline std::vector<int> blockers(const Neighbourhood& N, const Curve& c) {
  std::vector<int> out;
  int n = c.len();
  if (n < 3) return out;
  int last = c.closed() ? n : n - 2;
  for (int i = 0; i < last; ++i)
    if (is_blocker(N, c.at(i), c.at(i + 1), c.at(i + 2))) out.push_back(i);
  return out;
}

inline LengthReport measure(const Neighbourhood& N, const Curve& c) {
  LengthReport r;
  r.len = c.len();
  for (const Snippet& s : c.s) {
    SnippetClass k = classify(N, s);
    r.len_corn += corner_length(N, s);
    if (k.bad()) ++r.bad_count;
    if (k.verdict == Verdict::Carried) ++r.carr;
    if (k.verdict == Verdict::DualComp && k.turn == Turn::Right) ++r.dual_R;
    if (k.verdict == Verdict::DualComp && k.turn == Turn::Left) ++r.dual_L;
  }
  r.len_block = static_cast<int>(blockers(N, c).size());
  r.len_red = r.len_corn - 2 * r.len_block;
  return r;
}

inline Curve trim(const Curve& c) {
  if (c.closed()) return c;
  if (c.len() <= 2) return Curve{CurveKind::Arc, {}};
  return slice(c, 1, c.len() - 1);
}

inline std::vector<int> bad_positions(const Neighbourhood& N, const Curve& c, int from = 0, int to = -1) {
  std::vector<int> out;
  if (to < 0) to = c.len();
  for (int i = from; i < to; ++i)
    if (classify(N, c.s[i]).bad()) out.push_back(i);
  return out;
}

inline bool efficient(const Neighbourhood& N, const Curve& c) {
  for (const Snippet& s : c.s)
    if (classify(N, s).bad()) return false;
  return true;
}

inline bool inside_efficient(const Neighbourhood& N, const Curve& c) {
  for (int i = 1; i + 1 < c.len(); ++i)
    if (classify(N, c.s[i]).bad()) return false;
  return true;
}

}  // namespace ttpos
