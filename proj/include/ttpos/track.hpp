#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ttpos/errors.hpp"
#include "ttpos/quarter.hpp"

namespace ttpos {

struct BranchEnd {
  std::string branch;
  int end = 0;  // 0 = tail of the branch orientation, 1 = head
  bool operator==(const BranchEnd&) const = default;
};

// Small ends are listed in counter-clockwise order; the cusp lies between them.
struct SwitchDesc {
  std::string name;
  BranchEnd large, small_a, small_b;
};

struct BranchDesc {
  std::string name, from, to;
};

// Cyclic boundary word of a complementary face, read with the face on the left.
// Tokens: "x+" / "x-" for branch x along / against its orientation, "^u" for the cusp at switch u.
struct FaceDesc {
  bool annulus = false;
  std::vector<std::string> word;
};

struct TrackDesc {
  int genus = 0;
  int boundary = 0;
  std::vector<SwitchDesc> switches;
  std::vector<BranchDesc> branches;
  std::vector<FaceDesc> faces;
};

enum class RegionKind { BranchRect, SwitchRect, CompDisc, CompAnnulus };
enum class Label { h, v, t };

inline const char* label_name(Label l) {
  switch (l) {
    case Label::h: return "h";
    case Label::v: return "v";
    case Label::t: return "t";
  }
  return "?";
}

struct SegRef {
  int region = -1;
  int seg = -1;
  bool operator==(const SegRef&) const = default;
  auto operator<=>(const SegRef&) const = default;
};

struct Segment {
  Label label = Label::h;
  SegRef partner;
  int weight = 1;  // 3 for a horizontal segment of a complementary region facing a switch rectangle
};

// A side is a component of the region boundary minus the region's own corners.
struct Side {
  Label label = Label::h;
  std::vector<int> segs;  // consecutive segment indices; interior vertices are marks
};

// Counter-clockwise cyclic list of segments. Local vertex i is the tail of segment i,
// i.e. the point between segments i-1 and i.
struct Region {
  RegionKind kind = RegionKind::BranchRect;
  std::string name;
  int source = -1;  // branch / switch / face index in the description
  std::vector<Segment> segs;
  std::vector<int> angle;  // 1 = corner, 2 = mark (units of a right angle)
  std::vector<int> vert;   // global vertex id of each local vertex
  std::vector<int> corner_prefix;  // corners among local vertices [0, i)

  int size() const { return static_cast<int>(segs.size()); }
  int mod(int i) const { return ((i % size()) + size()) % size(); }
  bool is_comp() const { return kind == RegionKind::CompDisc || kind == RegionKind::CompAnnulus; }
  bool annulus() const { return kind == RegionKind::CompAnnulus; }
  bool rect() const { return !is_comp(); }
  bool is_corner(int v) const { return angle[mod(v)] == 1; }
  int corners() const { return corner_prefix.back(); }

  // corners among the vertices crossed walking counter-clockwise from segment a to b
  // (the vertices a+1, ..., a+steps); steps may exceed size() for annulus lifts
  int corners_ccw(int a, int steps) const {
    if (steps <= 0) return 0;
    int L = size(), full = steps / L, rest = steps % L;
    int start = mod(a + 1);
    int cnt = full * corners();
    int end = start + rest;
    if (end <= L) {
      cnt += corner_prefix[end] - corner_prefix[start];
    } else {
      cnt += corner_prefix[L] - corner_prefix[start] + corner_prefix[end - L];
    }
    return cnt;
  }

  Quarter index() const {
    if (annulus()) return ttpos::index(0, corners(), 0);
    return ttpos::index(1, corners(), 0);
  }

  int seg_weight(int i) const { return segs[mod(i)].weight; }

  std::vector<Side> sides() const {
    std::vector<Side> out;
    int L = size(), first = -1;
    for (int i = 0; i < L; ++i)
      if (is_corner(i)) {
        first = i;
        break;
      }
    if (first < 0) {
      Side s{segs[0].label, {}};
      for (int i = 0; i < L; ++i) s.segs.push_back(i);
      out.push_back(s);
      return out;
    }
    for (int k = 0; k < L; ++k) {
      int i = mod(first + k);
      if (is_corner(i)) out.push_back(Side{segs[i].label, {}});
      out.back().segs.push_back(i);
    }
    return out;
  }
};

// |C cap corners-and-marks| = n  ->  (n-2)*2+1
inline int side_length(int points) { return (points - 2) * 2 + 1; }

class Neighbourhood {
 public:
  int genus = 0;
  int boundary = 0;
  int euler_char = 0;
  int s_N = 0;
  std::vector<Region> regions;
  std::vector<int> branch_region, switch_region, comp_regions;
  std::vector<int> boundary_components;  // annular complementary regions
  TrackDesc desc;
  int vertex_count = 0;

  const Region& operator[](int r) const { return regions[r]; }
  int size() const { return static_cast<int>(regions.size()); }
  SegRef partner(SegRef s) const { return regions[s.region].segs[regions[s.region].mod(s.seg)].partner; }

  int find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (regions[i].name == name) return i;
    return -1;
  }

  int region_weight(int r) const {
    if (regions[r].kind == RegionKind::BranchRect) return 1;
    if (regions[r].kind == RegionKind::SwitchRect) return 3;
    return 0;
  }

  // weighted lengths of every horizontal side of every complementary region
  std::vector<int> h_side_lengths() const {
    std::vector<int> out;
    for (int r : comp_regions)
      for (const Side& s : regions[r].sides())
        if (s.label == Label::h) {
          int w = 0;
          for (int i : s.segs) w += regions[r].seg_weight(i);
          out.push_back(w);
        }
    return out;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline void finish_region(Region& R) {
  R.corner_prefix.assign(R.size() + 1, 0);
  for (int i = 0; i < R.size(); ++i) R.corner_prefix[i + 1] = R.corner_prefix[i] + (R.angle[i] == 1);
}

inline bool rotation_match(const std::vector<std::string>& a, const std::vector<std::string>& b, int& shift) {
  if (a.size() != b.size()) return false;
  int n = static_cast<int>(a.size());
  for (int s = 0; s < n; ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = a[(i + s) % n] == b[i];
    if (ok) {
      shift = s;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Switch rectangle, counter-clockwise: 0 large end, 1 bottom, 2 small end a, 3 cusp, 4 small end b, 5 top.
// Branch rectangle: 0 tail end, 1 right rail, 2 head end, 3 left rail.
inline Neighbourhood build_tie_neighbourhood(const TrackDesc& desc) {
  Neighbourhood N;
  N.desc = desc;
  N.genus = desc.genus;
  N.boundary = desc.boundary;
  if (desc.genus < 0 || desc.boundary < 0) throw Error(Errc::LowComplexity, "negative genus or boundary count");
  if (3 * desc.genus - 3 + desc.boundary < 1)
    throw Error(Errc::LowComplexity, "complexity 3g-3+b must be at least 1");
  N.euler_char = 2 - 2 * desc.genus - desc.boundary;

  std::map<std::string, int> bidx, sidx;
  for (int i = 0; i < (int)desc.branches.size(); ++i) {
    if (!bidx.emplace(desc.branches[i].name, i).second)
      throw Error(Errc::InvalidValence, "duplicate branch " + desc.branches[i].name);
  }
  for (int i = 0; i < (int)desc.switches.size(); ++i) {
    if (!sidx.emplace(desc.switches[i].name, i).second)
      throw Error(Errc::InvalidValence, "duplicate switch " + desc.switches[i].name);
  }
  if (desc.switches.empty()) throw Error(Errc::InvalidValence, "no switches");

  // each branch end must sit in exactly one switch slot, consistent with the branch record
  std::vector<std::array<int, 2>> end_switch(desc.branches.size(), {-1, -1});
  std::vector<std::array<int, 2>> end_slot(desc.branches.size(), {-1, -1});
  for (int u = 0; u < (int)desc.switches.size(); ++u) {
    const SwitchDesc& sw = desc.switches[u];
    const BranchEnd* ends[3] = {&sw.large, &sw.small_a, &sw.small_b};
    for (int k = 0; k < 3; ++k) {
      auto it = bidx.find(ends[k]->branch);
      if (it == bidx.end() || ends[k]->end < 0 || ends[k]->end > 1)
        throw Error(Errc::InvalidValence, "switch " + sw.name + " references unknown branch end " + ends[k]->branch);
      int& slot = end_switch[it->second][ends[k]->end];
      if (slot != -1)
        throw Error(Errc::InvalidValence, "branch end " + ends[k]->branch + "." + std::to_string(ends[k]->end) +
                                              " used by two switch slots");
      slot = u;
      end_slot[it->second][ends[k]->end] = k;
    }
  }
  for (int b = 0; b < (int)desc.branches.size(); ++b) {
    const BranchDesc& br = desc.branches[b];
    for (int e = 0; e < 2; ++e) {
      if (end_switch[b][e] < 0)
        throw Error(Errc::InvalidValence, "branch end " + br.name + "." + std::to_string(e) + " is not attached");
      const std::string& want = e == 0 ? br.from : br.to;
      if (desc.switches[end_switch[b][e]].name != want)
        throw Error(Errc::InvalidValence, "branch " + br.name + " end " + std::to_string(e) + " attached to " +
                                              desc.switches[end_switch[b][e]].name + ", expected " + want);
    }
  }

  // rectangles
  for (int b = 0; b < (int)desc.branches.size(); ++b) {
    Region R;
    R.kind = RegionKind::BranchRect;
    R.name = "B:" + desc.branches[b].name;
    R.source = b;
    R.segs = {{Label::t, {}}, {Label::h, {}}, {Label::t, {}}, {Label::h, {}}};
    R.angle = {1, 1, 1, 1};
    N.branch_region.push_back(N.size());
    N.regions.push_back(R);
  }
  for (int u = 0; u < (int)desc.switches.size(); ++u) {
    Region R;
    R.kind = RegionKind::SwitchRect;
    R.name = "S:" + desc.switches[u].name;
    R.source = u;
    R.segs = {{Label::t, {}}, {Label::h, {}}, {Label::t, {}}, {Label::v, {}}, {Label::t, {}}, {Label::h, {}}};
    R.angle = {1, 1, 1, 2, 2, 1};
    N.switch_region.push_back(N.size());
    N.regions.push_back(R);
  }

  auto glue = [&](SegRef a, SegRef b) {
    N.regions[a.region].segs[a.seg].partner = b;
    N.regions[b.region].segs[b.seg].partner = a;
  };
  const int slot_seg[3] = {0, 2, 4};
  for (int b = 0; b < (int)desc.branches.size(); ++b)
    for (int e = 0; e < 2; ++e)
      glue(SegRef{N.branch_region[b], e == 0 ? 0 : 2},
           SegRef{N.switch_region[end_switch[b][e]], slot_seg[end_slot[b][e]]});

  // global vertices over the rectangles
  std::vector<int> base(N.size());
  int nv = 0;
  for (int r = 0; r < N.size(); ++r) {
    base[r] = nv;
    nv += N.regions[r].size();
  }
  detail::UnionFind uf(nv);
  for (int r = 0; r < N.size(); ++r) {
    const Region& R = N.regions[r];
    for (int i = 0; i < R.size(); ++i) {
      SegRef p = R.segs[i].partner;
      if (p.region < 0) continue;
      const Region& P = N.regions[p.region];
      uf.unite(base[r] + i, base[p.region] + P.mod(p.seg + 1));
      uf.unite(base[r] + R.mod(i + 1), base[p.region] + p.seg);
    }
  }
  std::map<int, int> vid;
  for (int r = 0; r < N.size(); ++r) {
    Region& R = N.regions[r];
    R.vert.resize(R.size());
    for (int i = 0; i < R.size(); ++i) {
      int root = uf.find(base[r] + i);
      auto it = vid.emplace(root, (int)vid.size()).first;
      R.vert[i] = it->second;
    }
  }
  N.vertex_count = static_cast<int>(vid.size());
  std::vector<int> nsum(N.vertex_count, 0);
  for (const Region& R : N.regions)
    for (int i = 0; i < R.size(); ++i) nsum[R.vert[i]] += R.angle[i];

  // complementary boundaries: unglued rectangle segments, chained head-to-tail
  std::map<int, SegRef> by_head;
  std::vector<SegRef> loose;
  for (int r = 0; r < N.size(); ++r) {
    const Region& R = N.regions[r];
    for (int i = 0; i < R.size(); ++i)
      if (R.segs[i].partner.region < 0) {
        loose.push_back({r, i});
        int h = R.vert[R.mod(i + 1)];
        if (!by_head.emplace(h, SegRef{r, i}).second)
          throw Error(Errc::NotLarge, "boundary of the neighbourhood is not a union of circles");
      }
  }
  std::map<SegRef, bool> used;
  std::vector<std::vector<SegRef>> cycles;
  for (SegRef s : loose) {
    if (used[s]) continue;
    std::vector<SegRef> cyc;
    SegRef cur = s;
    while (!used[cur]) {
      used[cur] = true;
      cyc.push_back(cur);
      auto it = by_head.find(N.regions[cur.region].vert[cur.seg]);
      if (it == by_head.end()) throw Error(Errc::NotLarge, "open boundary chain in the neighbourhood");
      cur = it->second;
    }
    if (!(cur == s)) throw Error(Errc::NotLarge, "boundary chain does not close up");
    cycles.push_back(cyc);
  }

  auto token = [&](SegRef s) -> std::string {
    const Region& R = N.regions[s.region];
    if (R.kind == RegionKind::BranchRect) return desc.branches[R.source].name + (s.seg == 3 ? "+" : "-");
    if (s.seg == 3) return "^" + desc.switches[R.source].name;
    return "";
  };

  if (cycles.size() != desc.faces.size())
    throw Error(Errc::NotLarge, "track has " + std::to_string(cycles.size()) + " complementary faces, description lists " +
                                    std::to_string(desc.faces.size()));
  std::vector<bool> face_used(desc.faces.size(), false);
  std::vector<int> face_of_cycle(cycles.size(), -1);
  std::vector<int> cycle_start(cycles.size(), 0);
  for (int c = 0; c < (int)cycles.size(); ++c) {
    std::vector<std::string> w;
    std::vector<int> tok_pos;
    for (int k = 0; k < (int)cycles[c].size(); ++k) {
      std::string t = token(cycles[c][k]);
      if (!t.empty()) {
        w.push_back(t);
        tok_pos.push_back(k);
      }
    }
    for (int f = 0; f < (int)desc.faces.size(); ++f) {
      int shift = 0;
      if (face_used[f] || !detail::rotation_match(w, desc.faces[f].word, shift)) continue;
      face_used[f] = true;
      face_of_cycle[c] = f;
      cycle_start[c] = tok_pos[shift];
      break;
    }
    if (face_of_cycle[c] < 0) {
      std::string s;
      for (auto& t : w) s += (s.empty() ? "" : " ") + t;
      throw Error(Errc::NotLarge, "traced face [" + s + "] matches no listed face");
    }
  }

  std::vector<int> order(cycles.size());
  for (int c = 0; c < (int)cycles.size(); ++c) order[face_of_cycle[c]] = c;
  int discs = 0, annuli = 0;
  for (int f = 0; f < (int)desc.faces.size(); ++f) {
    const std::vector<SegRef>& cyc = cycles[order[f]];
    int n = static_cast<int>(cyc.size()), st = cycle_start[order[f]];
    Region F;
    F.kind = desc.faces[f].annulus ? RegionKind::CompAnnulus : RegionKind::CompDisc;
    F.name = "F" + std::to_string(f);
    F.source = f;
    int fr = N.size();
    for (int k = 0; k < n; ++k) {
      SegRef sg = cyc[(st + k) % n];
      const Region& R = N.regions[sg.region];
      Label l = (R.kind == RegionKind::SwitchRect && sg.seg == 3) ? Label::v : Label::h;
      F.segs.push_back({l, sg, (R.kind == RegionKind::SwitchRect && l == Label::h) ? 3 : 1});
      int a = 4 - nsum[R.vert[R.mod(sg.seg + 1)]];
      if (a != 1 && a != 2) throw Error(Errc::NotLarge, "vertex of the tiling is not trivalent");
      F.angle.push_back(a);
      F.vert.push_back(R.vert[R.mod(sg.seg + 1)]);
    }
    for (int k = 0; k < n; ++k) N.regions[F.segs[k].partner.region].segs[F.segs[k].partner.seg].partner = {fr, k};
    (desc.faces[f].annulus ? annuli : discs)++;
    N.comp_regions.push_back(fr);
    if (F.annulus()) N.boundary_components.push_back(fr);
    N.regions.push_back(F);
  }
  for (Region& R : N.regions) detail::finish_region(R);

  for (int r : N.comp_regions) {
    const Region& F = N.regions[r];
    if (F.index() > Quarter{-1})
      throw Error(Errc::NonNegativeIndexRegion, F.name + " has index " + F.index().str());
  }
  int V = static_cast<int>(desc.switches.size()), E = static_cast<int>(desc.branches.size());
  if (V - E + discs != N.euler_char)
    throw Error(Errc::NotLarge, "V - E + discs = " + std::to_string(V - E + discs) + " but surface has euler characteristic " +
                                    std::to_string(N.euler_char));
  if (annuli != desc.boundary)
    throw Error(Errc::NotLarge, std::to_string(annuli) + " annular faces for " + std::to_string(desc.boundary) +
                                    " boundary components");

  auto hl = N.h_side_lengths();
  N.s_N = hl.empty() ? 0 : *std::max_element(hl.begin(), hl.end());
  if (N.s_N < 5) throw Error(Errc::NotLarge, "maximal side length " + std::to_string(N.s_N) + " is below 5");
  return N;
}

}  // namespace ttpos
