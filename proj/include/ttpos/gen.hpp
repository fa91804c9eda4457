#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/homotopy.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

struct GenOptions {
  int wind_laps = 1;  // annulus snippets take D0 + tL with |t| <= wind_laps
};

namespace detail {

inline Snippet random_snippet(const Neighbourhood& N, std::mt19937_64& rng, int region, Locus a, Locus b,
                              const GenOptions& o) {
  const Region& R = N[region];
  if (!R.annulus() || !a.is_seg() || !b.is_seg()) return Snippet{region, a, b, 0};
  int D0 = R.mod(b.seg - a.seg);
  std::uniform_int_distribution<int> lap(-o.wind_laps, o.wind_laps);
  return annulus_snippet(R, region, a.seg, b.seg, D0 + lap(rng) * R.size());
}

// reach[t][r]: t more snippets starting in region r can end as required
inline std::vector<std::vector<char>> reach_table(const Neighbourhood& N, int steps, const std::vector<char>& last) {
  std::vector<std::vector<char>> g(steps + 1, std::vector<char>(N.size(), 0));
  if (steps >= 1) g[1] = last;
  for (int t = 2; t <= steps; ++t)
    for (int r = 0; r < N.size(); ++r)
      for (int x = 0; x < N[r].size() && !g[t][r]; ++x)
        if (g[t - 1][N[r].segs[x].partner.region]) g[t][r] = 1;
  return g;
}

}  // namespace detail

// Random closed curve of exactly len snippets (len 1 gives a single closed snippet).
inline Curve gen_random_curve(const Neighbourhood& N, int len, std::uint64_t seed, const GenOptions& o = {}) {
  if (len < 1) throw Error(Errc::GenerationFailed, "target length must be at least 1");
  std::mt19937_64 rng(seed);
  if (len == 1) {
    int r = std::uniform_int_distribution<int>(0, N.size() - 1)(rng);
    Snippet s{r, Locus::closed(), Locus::closed(), 0};
    if (N[r].annulus()) s.wind = std::uniform_int_distribution<int>(-o.wind_laps, o.wind_laps)(rng) * N[r].corners();
    return Curve{CurveKind::Closed, {s}};
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    int r0 = std::uniform_int_distribution<int>(0, N.size() - 1)(rng);
    int e0 = std::uniform_int_distribution<int>(0, N[r0].size() - 1)(rng);
    SegRef target{r0, e0};
    SegRef back = N.partner(target);  // the last snippet exits here
    std::vector<char> last(N.size(), 0);
    last[back.region] = 1;
    auto g = detail::reach_table(N, len, last);
    if (!g[len][r0]) continue;
    Curve c{CurveKind::Closed, {}};
    int r = r0, e = e0;
    for (int rem = len; rem >= 1; --rem) {
      std::vector<int> ok;
      for (int x = 0; x < N[r].size(); ++x) {
        SegRef p = N[r].segs[x].partner;
        if (rem == 1 ? (SegRef{r, x} == back) : static_cast<bool>(g[rem - 1][p.region])) ok.push_back(x);
      }
      if (ok.empty()) throw Error(Errc::GenerationFailed, "reachability table inconsistent");
      int x = ok[std::uniform_int_distribution<int>(0, (int)ok.size() - 1)(rng)];
      c.s.push_back(detail::random_snippet(N, rng, r, Locus::at(e), Locus::at(x), o));
      SegRef p = N[r].segs[x].partner;
      r = p.region;
      e = p.seg;
    }
    return c;
  }
  throw Error(Errc::GenerationFailed, "no closed walk of length " + std::to_string(len));
}

// Random proper arc: starts and ends on the boundary of the surface inside annular regions.
inline Curve gen_random_arc(const Neighbourhood& N, int len, std::uint64_t seed, const GenOptions& o = {}) {
  if (len < 1) throw Error(Errc::GenerationFailed, "target length must be at least 1");
  if (N.boundary_components.empty()) throw Error(Errc::GenerationFailed, "closed surface has no proper arcs");
  std::mt19937_64 rng(seed);
  std::vector<char> last(N.size(), 0);
  for (int r : N.boundary_components) last[r] = 1;
  auto g = detail::reach_table(N, len, last);
  std::vector<int> starts;
  for (int r : N.boundary_components)
    if (g[len][r]) starts.push_back(r);
  if (starts.empty()) throw Error(Errc::GenerationFailed, "no arc of length " + std::to_string(len));
  int r = starts[std::uniform_int_distribution<int>(0, (int)starts.size() - 1)(rng)];
  Curve c{CurveKind::Arc, {}};
  Locus in = Locus::ds();
  for (int rem = len; rem >= 1; --rem) {
    if (rem == 1) {
      c.s.push_back(Snippet{r, in, Locus::ds(), 0});
      break;
    }
    std::vector<int> ok;
    for (int x = 0; x < N[r].size(); ++x)
      if (g[rem - 1][N[r].segs[x].partner.region]) ok.push_back(x);
    int x = ok[std::uniform_int_distribution<int>(0, (int)ok.size() - 1)(rng)];
    c.s.push_back(detail::random_snippet(N, rng, r, in, Locus::at(x), o));
    SegRef p = N[r].segs[x].partner;
    r = p.region;
    in = Locus::at(p.seg);
  }
  return c;
}

// A closed train path: alternating branch and switch rectangle snippets, all carried.
inline Curve gen_carried_cycle(const Neighbourhood& N, std::uint64_t seed, int min_len = 2) {
  std::mt19937_64 rng(seed);
  const TrackDesc& d = N.desc;
  int nb = static_cast<int>(d.branches.size());
  // state: branch b traversed towards end e (1 = along the orientation)
  auto step = [&](int b, int e) -> std::pair<int, int> {
    // arrive at switch holding end e of branch b
    for (int u = 0; u < (int)d.switches.size(); ++u) {
      const SwitchDesc& sw = d.switches[u];
      const BranchEnd* ends[3] = {&sw.large, &sw.small_a, &sw.small_b};
      for (int k = 0; k < 3; ++k)
        if (ends[k]->branch == d.branches[b].name && ends[k]->end == e) {
          const BranchEnd* out = k == 0 ? ends[1 + std::uniform_int_distribution<int>(0, 1)(rng)] : ends[0];
          int ob = 0;
          while (d.branches[ob].name != out->branch) ++ob;
          return {ob, 1 - out->end};
        }
    }
    throw Error(Errc::GenerationFailed, "dangling branch end");
  };
  for (int attempt = 0; attempt < 256; ++attempt) {
    int b = std::uniform_int_distribution<int>(0, nb - 1)(rng), e = std::uniform_int_distribution<int>(0, 1)(rng);
    std::map<std::pair<int, int>, int> seen;
    std::vector<std::pair<int, int>> path;
    while (!seen.count({b, e})) {
      seen[{b, e}] = static_cast<int>(path.size());
      path.push_back({b, e});
      std::tie(b, e) = step(b, e);
    }
    std::vector<std::pair<int, int>> cyc(path.begin() + seen[{b, e}], path.end());
    Curve c{CurveKind::Closed, {}};
    for (auto [br, to] : cyc) {
      int R = N.branch_region[br];
      int from_seg = to == 1 ? 0 : 2, to_seg = to == 1 ? 2 : 0;
      c.s.push_back(Snippet{R, Locus::at(from_seg), Locus::at(to_seg), 0});
      SegRef p = N.partner(SegRef{R, to_seg});
      c.s.push_back(Snippet{p.region, Locus::at(p.seg), Locus::at(-1), 0});
    }
    // fill switch exits from the following branch snippet
    for (int i = 1; i < c.len(); i += 2) {
      const Snippet& nx = c.at(i + 1);
      SegRef q = N.partner(SegRef{nx.region, nx.start.seg});
      c.s[i].end = Locus::at(q.seg);
      if (q.region != c.s[i].region) throw Error(Errc::GenerationFailed, "train path left its switch");
    }
    if (c.len() >= min_len && first_break(N, c) < 0) return c;
  }
  throw Error(Errc::GenerationFailed, "no carried cycle found");
}

// Move the crossing between c[i] and c[i+1] across an endpoint of the shared segment
// (dir = +1: the head in the first region's orientation, -1: the tail).
inline Curve finger_move(const Neighbourhood& N, const Curve& c, int i, int dir) {
  int n = c.len();
  if (n < 2 && c.closed()) throw Error(Errc::BadInput, "finger move needs two snippets");
  if (c.arc() && (i < 0 || i + 1 >= n)) throw Error(Errc::OutOfRange, "finger move junction");
  int i1 = c.closed() ? c.norm(i + 1) : i + 1;
  int i0 = c.closed() ? c.norm(i) : i;
  Snippet a = c.s[i0], b = c.s[i1];
  const Region& R = N[a.region];
  int e = a.end.seg;
  SegRef Z{b.region, b.start.seg};
  SegRef W = R.segs[R.mod(e + dir)].partner;
  SegRef zx{Z.region, N[Z.region].mod(Z.seg - dir)};
  SegRef wx{W.region, N[W.region].mod(W.seg + dir)};
  if (!(N.partner(zx) == wx)) throw Error(Errc::InconsistentSnippet, "finger move at a non-trivalent vertex");
  auto shift = [&](const Snippet& s, Locus st, Locus en, int dd) {
    int D = detail::disp_or_zero(N, s) + dd;
    return detail::with_displacement(N, s.region, st, en, D);
  };
  Snippet a2 = a.start.is_ds() ? Snippet{a.region, a.start, Locus::at(R.mod(e + dir)), 0}
                               : shift(a, a.start, Locus::at(R.mod(e + dir)), dir);
  Snippet w = detail::with_displacement(N, W.region, Locus::at(W.seg), Locus::at(wx.seg), dir);
  Snippet b2 = b.end.is_ds() ? Snippet{b.region, Locus::at(zx.seg), b.end, 0} : shift(b, Locus::at(zx.seg), b.end, dir);
  Curve out{c.kind, {}};
  if (c.closed() && n == 2) {
    // a and b close up through each other: rebuild both
    out.s = {a2, w, b2};
    return out;
  }
  for (int k = 0; k < n; ++k) {
    if (k == i0) {
      out.s.push_back(a2);
      out.s.push_back(w);
    } else if (k == i1) {
      out.s.push_back(b2);
    } else {
      out.s.push_back(c.s[k]);
    }
  }
  return out;
}

// Insert a double back through the segment between c[i] and c[i+1].
inline Curve finger_back(const Neighbourhood& N, const Curve& c, int i) {
  int n = c.len();
  int i0 = c.closed() ? c.norm(i) : i;
  const Snippet& a = c.s[i0];
  SegRef Z = N.partner(SegRef{a.region, a.end.seg});
  Snippet z{Z.region, Locus::at(Z.seg), Locus::at(Z.seg), 0};
  Snippet r{a.region, a.end, a.end, 0};
  Curve out{c.kind, {}};
  for (int k = 0; k < n; ++k) {
    out.s.push_back(c.s[k]);
    if (k == i0) {
      out.s.push_back(z);
      out.s.push_back(r);
    }
  }
  return out;
}

// The loop just outside region F running once around it, repeated k times.
inline Curve boundary_loop(const Neighbourhood& N, int F, int k = 1) {
  const Region& R = N[F];
  Curve c{CurveKind::Closed, {}};
  for (int rep = 0; rep < k; ++rep)
    for (int a = 0; a < R.size(); ++a) {
      SegRef A = R.segs[a].partner;
      int L = N[A.region].size();
      c.s.push_back(detail::with_displacement(N, A.region, Locus::at((A.seg + 1) % L), Locus::at((A.seg - 1 + L) % L), -2));
    }
  return c;
}

// Small loop around the vertex at the head of segment a of region r.
inline Curve vertex_loop(const Neighbourhood& N, int r, int a) {
  const Region& R = N[r];
  SegRef W = R.segs[R.mod(a + 1)].partner;
  SegRef Z = R.segs[R.mod(a)].partner;
  Curve c{CurveKind::Closed, {}};
  c.s.push_back(detail::with_displacement(N, r, Locus::at(R.mod(a)), Locus::at(R.mod(a + 1)), 1));
  c.s.push_back(detail::with_displacement(N, W.region, Locus::at(W.seg), Locus::at(N[W.region].mod(W.seg + 1)), 1));
  c.s.push_back(detail::with_displacement(N, Z.region, Locus::at(N[Z.region].mod(Z.seg - 1)), Locus::at(Z.seg), 1));
  return c;
}

}  // namespace ttpos
