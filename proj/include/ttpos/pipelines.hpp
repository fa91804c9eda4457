#pragma once

#include <string>
#include <vector>

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/homotopy.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"

namespace ttpos {

enum class Status { Efficient, SingleSnippet, InsideEfficient };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Efficient: return "efficient";
    case Status::SingleSnippet: return "single-snippet";
    case Status::InsideEfficient: return "inside-efficient";
  }
  return "?";
}

// Per-run measurements of the proven step bounds (actual, bound) for auditing.
struct BudgetLog {
  struct Entry {
    std::string algo;
    long used = 0;
    long bound = 0;
  };
  std::vector<Entry> entries;
};

struct PipelineResult {
  Curve curve;
  Status status = Status::Efficient;
  long steps = 0;
  Trace trace;
  BudgetLog budgets;
  int boundary_region = -1;  // for single closed snippets in an annulus
  int power = 0;
};

struct Pipelines {
  const Neighbourhood& N;
  Trace* tr = nullptr;
  BudgetLog* budgets = nullptr;

  int s() const { return N.s_N; }

  SnippetClass cls(const Curve& c, int i) const { return classify(N, c.at(i)); }
  bool is(const Curve& c, int i, BadType t) const {
    SnippetClass k = cls(c, i);
    return k.bad() && k.type == t;
  }
  Curve H(const Curve& c, int k) const { return hom(N, c, k, tr); }
  long steps() const { return tr ? tr->steps : 0; }

  void note(const char* algo, long used, long bound) const {
    if (budgets) budgets->entries.push_back({algo, used, bound});
    if (used > 2 * bound)
      throw Error(Errc::BudgetExceeded, std::string(algo) + " used " + std::to_string(used) + " steps, proven bound " +
                                            std::to_string(bound));
  }

  int first_bad(const Curve& c) const {
    for (int i = 0; i < c.len(); ++i)
      if (cls(c, i).bad()) return i;
    return -1;
  }

  // ---- inside of arcs

  Curve trig_arc(Curve a) const {
    TraceScope sc(tr, "TrigArc");
    int n = a.len();
    if (n <= 2) return a;
    long bound = static_cast<long>(n - 2 + 1) * (s() + 2), used = 0;
    int k = -1;
    for (int i = 1; i + 1 < n; ++i)
      if (cls(a, i).bad()) {
        if (k >= 0) throw Error(Errc::BadInput, "TrigArc: more than one bad snippet inside");
        k = i;
      }
    while (k >= 0) {
      SnippetClass c = cls(a, k);
      if (!c.trigon()) throw Error(Errc::BadInput, std::string("TrigArc: inside snippet of type ") + bad_name(c.type));
      Curve b = H(a, k);
      ++used;
      if (used > 2 * bound) note("TrigArc", used, bound);
      int lo = std::max(1, k - 1), hi = std::min(b.len() - 2, k - 1 + (b.len() - a.len() + 2));
      a = std::move(b);
      k = -1;
      for (int i = lo; i <= hi; ++i)
        if (cls(a, i).bad()) {
          k = i;
          break;
        }
    }
    note("TrigArc", used, bound);
    return a;
  }

  Curve trig_curve(Curve a) const {
    TraceScope sc(tr, "TrigCurve");
    long bound = static_cast<long>(a.len() + 1) * (s() + 2), used = 0;
    int k = a.len() > 1 ? first_bad(a) : -1;
    while (a.len() > 1 && k >= 0) {
      SnippetClass c = cls(a, k);
      if (!c.trigon()) throw Error(Errc::BadInput, std::string("TrigCurve: snippet of type ") + bad_name(c.type));
      Curve b = H(a, k);
      ++used;
      if (used > 2 * bound) note("TrigCurve", used, bound);
      int width = b.len() - a.len() + 3, start = k - 1;
      a = std::move(b);
      k = -1;
      if (a.len() <= 1) break;
      for (int t = 0; t < width && t < a.len(); ++t)
        if (cls(a, start + t).bad()) {
          k = a.norm(start + t);
          break;
        }
    }
    note("TrigCurve", used, bound);
    return a;
  }

  Curve big_arc(Curve a) const {
    TraceScope sc(tr, "BigArc");
    int n = a.len();
    for (int i = 1; i + 2 < n; ++i)
      if (cls(a, i).bad()) throw Error(Errc::BadInput, "BigArc: bad inside snippet away from position -2");
    if (n > 2 && cls(a, n - 2).bigon()) a = H(a, n - 2);
    return trig_arc(a);
  }

  // ---- many bad snippets

  Curve reduce_to_two(const Curve& in) const {
    TraceScope sc(tr, "ReduceToTwo");
    int n = in.len();
    if (n <= 2) return in;
    Curve a{CurveKind::Arc, in.s};
    for (int k = 3; k <= n - 1; ++k) {
      int keep = a.len() - (n - k);
      Curve prefix{CurveKind::Arc, std::vector<Snippet>(a.s.begin(), a.s.begin() + keep)};
      Curve rest{CurveKind::Arc, std::vector<Snippet>(in.s.begin() + k, in.s.end())};
      a = concat(N, big_arc(prefix), rest);
    }
    a = big_arc(a);
    if (in.closed()) return close(N, a);
    return a;
  }

  Curve reduce_to_one(const Curve& in) const {
    TraceScope sc(tr, "ReduceToOne");
    if (in.len() < 2) return in;
    Curve a{CurveKind::Arc, in.s};
    a.s.push_back(in.s[0]);
    return glue(N, big_arc(a), in.s[0]);
  }

  // ---- single bad snippet

  Curve weight_one_bigon(const Curve& a, int k) const {
    TraceScope sc(tr, "WeightOneBigon");
    Curve b = H(a, k);
    if (b.len() > 1 && is(b, k - 1, BadType::R_hv)) return H(b, k - 1);
    if (b.len() > 1 && is(b, k, BadType::R_hv)) return H(b, k);
    return b;
  }

  Curve weight_two_bigon(const Curve& a, int k) const {
    TraceScope sc(tr, "WeightTwoBigon");
    if (a.len() == 2) return H(H(a, k), k - 1);
    Curve b = H(a, k);
    int kk = b.norm(k);
    Curve c = trig_arc(window(b, kk, b.len()));
    Curve d = close(N, c);
    if (d.len() > 1 && cls(d, -1).bigon()) return H(d, -1);
    return d;
  }

  Curve all_but_hor(const Curve& a) const {
    TraceScope sc(tr, "AllButHor");
    if (a.len() <= 1) return a;
    int k = first_bad(a);
    if (k < 0) return a;
    SnippetClass c = cls(a, k);
    if (c.type == BadType::S_tv1) return weight_one_bigon(a, k);
    if (c.type == BadType::S_tt2) return weight_two_bigon(a, k);
    if (c.type == BadType::R_hh || c.type == BadType::B_hh)
      throw Error(Errc::BadInput, std::string("AllButHor: ") + bad_name(c.type));
    return H(a, k);
  }

  // a[0] is S(h,t,3) or S(h,t,1), a[1] is B(h,t), turning the same way
  Curve two_trigons(const Curve& a) const {
    TraceScope sc(tr, "TwoTrigons");
    Curve b = a;
    if (is(a, 0, BadType::S_ht3)) {
      b = H(a, 1);
      if (cls(b, 1).efficient()) return b;
      b = H(b, 1);
      if (is(b, 0, BadType::S_tt0)) return H(b, 0);
      Curve head{CurveKind::Arc, {b.s[0]}};
      b = close(N, concat(N, head, trig_arc(slice(b, 1, b.len()))));
      if (is(b, -1, BadType::R_hv)) return H(H(b, -1), 0);
      if (cls(b, 1).efficient()) return b;
    }
    return H(H(b, 1), 0);
  }

  Curve hor_bigon_in_comp_wide(const Curve& a, int k) const {
    TraceScope sc(tr, "HorBigonInCompWide");
    Curve b = H(a, k);
    int L = b.len();
    int kk = b.norm(k);
    Curve rest = trig_arc(window(b, kk, L - 1));
    Snippet last = b.at(kk - 1);
    Curve lastc{CurveKind::Arc, {last}};
    if (efficient(N, rest)) return close(N, concat(N, rest, lastc));
    if (is(rest, -1, BadType::R_hv)) return all_but_hor(H(close(N, concat(N, rest, lastc)), -2));
    SnippetClass lc = classify(N, last);
    if (lc.bad() && (lc.type == BadType::S_ht1 || lc.type == BadType::S_ht3))
      return two_trigons(close(N, concat(N, lastc, rest)));
    Curve r{CurveKind::Arc, {reversed(rest.s[0]), reversed(last)}};
    Curve tail = reverse(slice(rest, 1, rest.len()));
    r = close(N, concat(N, r, tail));
    return reverse(two_trigons(r));
  }

  Curve hor_bigon_in_comp(const Curve& a) const {
    TraceScope sc(tr, "HorBigonInComp");
    int k = first_bad(a);
    if (k < 0 || !is(a, k, BadType::R_hh)) throw Error(Errc::BadInput, "HorBigonInComp: no R(h,h) snippet");
    if (a.len() == 2) return all_but_hor(H(a, k));
    Curve b = H(a, k);
    if (b.len() > 1 && (is(b, k - 1, BadType::B_hh) || is(b, k - 1, BadType::S_hh0))) return b;
    return hor_bigon_in_comp_wide(a, k);
  }

  Curve hor_bigon_in_branch(const Curve& a) const {
    TraceScope sc(tr, "HorBigonInBranch");
    int k = first_bad(a);
    if (k < 0 || !is(a, k, BadType::B_hh)) throw Error(Errc::BadInput, "HorBigonInBranch: no B(h,h) snippet");
    int n = a.len();
    if (n == 2) return H(a, k);
    int cp = corner_length(N, a.at(k - 1)), cn = corner_length(N, a.at(k + 1));
    if (cp == 2 * s() || cn == 2 * s()) return H(a, k);
    SnippetClass p = cls(a, k - 1), q = cls(a, k + 1);
    if (vertical_dual(N, a.at(k - 1), p) && vertical_dual(N, a.at(k + 1), q) && p.turn == q.turn) return H(a, k);
    if (cp > 1 && cn > 1) return H(a, k);
    if (cp == 1 && cn == 1) {
      if (!is_blocker(N, window(a, k - 3, 3)) || !is_blocker(N, window(a, k + 1, 3))) return H(a, k);
      return H(H(H(a, k), k - 1), k - 2);
    }
    return hor_bigon_in_comp(H(a, k));
  }

  int single_iterations = 0;

  Curve single_bad_snippet(Curve a) {
    TraceScope sc(tr, "SingleBadSnippet");
    long bound = measure(N, a).len_red + 1;
    long iters = 0;
    while (a.len() > 1) {
      ++iters;
      if (iters > 2 * bound) note("SingleBadSnippet", iters, bound);
      int k = first_bad(a);
      if (k >= 0) {
        BadType t = cls(a, k).type;
        switch (t) {
          case BadType::B_tt:
          case BadType::S_hh0:
          case BadType::S_tt0:
          case BadType::S_vv0:
          case BadType::R_vv:
          case BadType::S_tv1:
          case BadType::S_tt2: a = all_but_hor(a); break;
          case BadType::R_hh: a = hor_bigon_in_comp(a); break;
          case BadType::B_hh: a = hor_bigon_in_branch(a); break;
          default: break;
        }
      }
      if (a.len() > 1) {
        int j = first_bad(a);
        if (j >= 0 && cls(a, j).trigon()) {
          single_iterations = static_cast<int>(iters);
          note("SingleBadSnippet", iters, bound);
          return trig_curve(a);
        }
      }
      if (efficient(N, a)) break;
    }
    single_iterations = static_cast<int>(iters);
    note("SingleBadSnippet", iters, bound);
    return a;
  }

  Curve efficient_position(const Curve& in) {
    TraceScope sc(tr, "EfficientPosition");
    if (in.arc()) return reduce_to_two(in);
    Curve a = in;
    if (a.len() > 2) a = reduce_to_two(a);
    if (a.len() > 1) {
      a = reduce_to_one(a);
      a = single_bad_snippet(a);
    }
    return a;
  }
};

struct RunOptions {
  bool snapshots = false;
  bool measure = false;
  long max_steps = -1;
};

// Efficient position of a curve, with status, trace and budget log.
inline PipelineResult efficient_position(const Neighbourhood& N, const Curve& in, const RunOptions& o = {}) {
  validate_curve(N, in);
  PipelineResult r;
  r.trace.snapshots = o.snapshots;
  r.trace.measure = o.measure;
  r.trace.max_steps = o.max_steps;
  Pipelines p{N, &r.trace, &r.budgets};
  r.curve = p.efficient_position(in);
  r.steps = r.trace.steps;
  if (r.curve.closed() && r.curve.len() == 1) {
    r.status = Status::SingleSnippet;
    const Snippet& s = r.curve.s[0];
    const Region& R = N[s.region];
    if (R.annulus() && s.closed() && s.wind != 0) {
      r.boundary_region = s.region;
      r.power = s.wind / R.corners();
    }
  } else if (r.curve.arc()) {
    r.status = efficient(N, r.curve) ? Status::Efficient : Status::InsideEfficient;
  } else {
    r.status = Status::Efficient;
  }
  return r;
}

}  // namespace ttpos
