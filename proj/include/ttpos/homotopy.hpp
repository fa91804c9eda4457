#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

struct RewriteEvent {
  BadType type = BadType::None;
  Turn turn = Turn::NA;
  int k = 0;
  int pushed = 0;  // vertices of the cut-off region crossed by the homotopy
  int before_len = 0, after_len = 0;
  bool closed = false;
  int before_red = 0, after_red = 0;
  LengthReport before_m, after_m;  // over the inside for arcs, the whole curve otherwise
  bool measured = false;
  std::optional<std::pair<int, SnippetClass>> new_bad;
  int window_start = 0, window_len = 0;  // replaced snippets in the output, cyclic for closed curves
  std::string context;                   // calling algorithm
  std::optional<Curve> before, after;    // snapshots, kept only when requested
};

struct Trace {
  bool snapshots = false;
  bool measure = false;
  std::vector<RewriteEvent> events;
  std::vector<std::string> stack;  // nesting of algorithms
  std::map<std::string, long> calls;
  long steps = 0;
  long max_steps = -1;  // hard cap on rewrites, -1 for none

  std::string context() const { return stack.empty() ? std::string("hom") : stack.back(); }
};

struct TraceScope {
  Trace* t;
  TraceScope(Trace* tr, const char* name) : t(tr) {
    if (!t) return;
    t->stack.push_back(name);
    ++t->calls[name];
  }
  ~TraceScope() {
    if (t) t->stack.pop_back();
  }
};

namespace detail {

inline Snippet with_displacement(const Neighbourhood& N, int region, Locus a, Locus b, int D) {
  const Region& R = N[region];
  Snippet s{region, a, b, 0};
  if (R.annulus() && a.is_seg() && b.is_seg()) s.wind = wind_of_displacement(R, a.seg, D);
  return s;
}

inline int disp_or_zero(const Neighbourhood& N, const Snippet& s) {
  const Region& R = N[s.region];
  if (!R.annulus() || !s.start.is_seg() || !s.end.is_seg()) return 0;
  return displacement(R, s);
}

// replacement snippets for pushing the window across the cut-off region of its middle snippet;
// prev and next are the neighbours (the same snippet for closed curves of length two)
inline std::vector<Snippet> push_across(const Neighbourhood& N, const Snippet& prev, const Snippet& a,
                                        const SnippetClass& cls, const Snippet& next, bool same_neighbour) {
  const Region& R = N[a.region];
  int m = cls.cut_vertices;
  int dir = cls.turn == Turn::Left ? -1 : 1;
  std::vector<Snippet> out;
  if (m == 0) {
    if (same_neighbour) {
      Snippet c{prev.region, Locus::closed(), Locus::closed(), 0};
      const Region& P = N[prev.region];
      if (P.annulus()) c.wind = wind_of_displacement(P, 0, displacement(P, prev));
      out.push_back(c);
      return out;
    }
    const Region& P = N[prev.region];
    int D = 0;
    bool touch = prev.start.is_ds() || next.end.is_ds();
    if (P.annulus() && !touch) D = displacement(P, prev) + displacement(P, next);
    out.push_back(with_displacement(N, prev.region, prev.start, next.end, D));
    return out;
  }
  std::vector<SegRef> exits, entries;
  for (int i = 0; i < m; ++i) {
    int e = a.start.seg + dir * i;
    SegRef A = R.segs[R.mod(e)].partner;
    SegRef B = R.segs[R.mod(e + dir)].partner;
    SegRef ex{A.region, N[A.region].mod(A.seg - dir)};
    SegRef en{B.region, N[B.region].mod(B.seg + dir)};
    if (!(N.partner(ex) == en)) throw Error(Errc::InconsistentSnippet, "tiling is not trivalent at a pushed vertex");
    exits.push_back(ex);
    entries.push_back(en);
  }
  const int delta = -dir;
  if (same_neighbour) {
    out.push_back(with_displacement(N, prev.region, Locus::at(entries.back().seg), Locus::at(exits.front().seg),
                                    disp_or_zero(N, prev) + 2 * delta));
  } else {
    int D = prev.start.is_ds() ? 0 : disp_or_zero(N, prev) + delta;
    out.push_back(with_displacement(N, prev.region, prev.start, Locus::at(exits.front().seg), D));
  }
  for (int i = 1; i < m; ++i) {
    if (entries[i - 1].region != exits[i].region)
      throw Error(Errc::InconsistentSnippet, "pushed path leaves the expected region");
    out.push_back(with_displacement(N, entries[i - 1].region, Locus::at(entries[i - 1].seg), Locus::at(exits[i].seg),
                                    2 * delta));
  }
  if (!same_neighbour) {
    int D = next.end.is_ds() ? 0 : disp_or_zero(N, next) + delta;
    out.push_back(with_displacement(N, next.region, Locus::at(entries.back().seg), next.end, D));
  }
  return out;
}

}  // namespace detail

// Hom(c, k): homotope the bad snippet c[k] across the region it cuts off. Only c[k-1], c[k], c[k+1]
// change; in the output the replacement starts at position k-1 (taken mod the new length for closed curves).
inline Curve hom(const Neighbourhood& N, const Curve& c, int k, Trace* tr = nullptr) {
  int n = c.len();
  if (n < 2) throw Error(Errc::ClosedSnippet, "curves of length one are terminal");
  int kk = k;
  if (c.closed()) {
    kk = c.norm(k);
  } else {
    if (kk < 0) kk += n;
    if (kk <= 0 || kk >= n - 1) throw Error(Errc::OutOfRange, "hom at an arc endpoint snippet " + std::to_string(k));
  }
  const Snippet& a = c.s[kk];
  if (a.closed()) throw Error(Errc::ClosedSnippet, "closed snippet");
  SnippetClass cls = classify(N, a);
  if (!cls.bad()) throw Error(Errc::NotBad, "snippet " + std::to_string(kk) + " is " + cls.str());
  if (!is_bigon(cls.type) && !is_trigon(cls.type))
    throw Error(Errc::ClosedSnippet, std::string("no local homotopy for ") + bad_name(cls.type));
  if (tr && tr->max_steps >= 0 && tr->steps >= tr->max_steps)
    throw Error(Errc::BudgetExceeded, "rewrite cap of " + std::to_string(tr->max_steps) + " reached");

  bool pair = c.closed() && n == 2;
  const Snippet& prev = c.at(kk - 1);
  const Snippet& next = c.at(kk + 1);
  std::vector<Snippet> beta = detail::push_across(N, prev, a, cls, next, pair);

  Curve out{c.kind, {}};
  int start = 0;
  if (c.arc()) {
    out.s.reserve(n - 3 + beta.size());
    out.s.insert(out.s.end(), c.s.begin(), c.s.begin() + (kk - 1));
    out.s.insert(out.s.end(), beta.begin(), beta.end());
    out.s.insert(out.s.end(), c.s.begin() + (kk + 2), c.s.end());
    start = kk - 1;
  } else {
    std::vector<Snippet> seq = beta;
    if (!pair)
      for (int i = 2; i < n - 1; ++i) seq.push_back(c.at(kk + i));
    int L = static_cast<int>(seq.size());
    out.s.resize(L);
    start = ((k - 1) % L + L) % L;  // relative to the index as passed, so k-1, k-2 chains stay meaningful
    for (int t = 0; t < L; ++t) out.s[(start + t) % L] = seq[t];
  }

  if (tr) {
    RewriteEvent ev;
    ev.type = cls.type;
    ev.turn = cls.turn;
    ev.k = kk;
    ev.pushed = cls.cut_vertices;
    ev.before_len = n;
    ev.closed = c.closed();
    ev.after_len = out.len();
    ev.window_start = start;
    ev.window_len = static_cast<int>(beta.size());
    ev.context = tr->context();
    for (int t = 0; t < ev.window_len; ++t) {
      int p = c.arc() ? start + t : (start + t) % out.len();
      if (c.arc() && (p == 0 || p == out.len() - 1)) continue;  // arc ends are outside the contracts
      SnippetClass nc = classify(N, out.s[p]);
      if (nc.bad()) {
        ev.new_bad = std::make_pair(p, nc);
        break;
      }
    }
    if (tr->measure) {
      ev.before_m = measure(N, trim(c));
      ev.after_m = measure(N, trim(out));
      ev.before_red = ev.before_m.len_red;
      ev.after_red = ev.after_m.len_red;
      ev.measured = true;
    }
    if (tr->snapshots) {
      ev.before = c;
      ev.after = out;
    }
    tr->events.push_back(std::move(ev));
    ++tr->steps;
  }
  return out;
}

// Edges of the trigon homotopy graph (one turning direction; the other is its mirror image).
inline bool trigon_edge(BadType from, std::optional<BadType> to) {
  if (!to) return true;
  using B = BadType;
  switch (from) {
    case B::R_hv: return *to == B::S_ht1 || *to == B::S_ht3 || *to == B::B_ht;
    case B::S_ht1: return *to == B::B_ht;
    case B::S_ht3: return *to == B::B_ht;
    case B::S_hv2: return *to == B::R_hv;
    case B::B_ht: return *to == B::S_ht1 || *to == B::S_ht3 || *to == B::S_hv2 || *to == B::R_hv;
    default: return false;
  }
}

// Transition plus counter annotation: c = carried count, D = duals turning the trigon's way.
inline bool trigon_transition_check(const RewriteEvent& e, int s_N) {
  if (!is_trigon(e.type)) return false;
  std::optional<BadType> to;
  if (e.new_bad) {
    if (e.new_bad->second.turn != e.turn) return false;
    to = e.new_bad->second.type;
  }
  if (!trigon_edge(e.type, to)) return false;
  if (!to || !e.measured) return true;
  auto duals = [&](const LengthReport& r) { return e.turn == Turn::Left ? r.dual_L : r.dual_R; };
  int c0 = e.before_m.carr, c1 = e.after_m.carr, d0 = duals(e.before_m), d1 = duals(e.after_m);
  if (e.type == BadType::R_hv) return d1 == d0 && c1 <= c0 + s_N - 1;
  if (*to == BadType::R_hv) return d1 < d0;
  return (d1 == d0 && c1 < c0) || (d1 < d0 && c1 <= c0);
}

}  // namespace ttpos
