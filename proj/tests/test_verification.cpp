#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/lap_gap.hpp"
#include "ttpos/gen.hpp"
#include "ttpos/pipelines.hpp"
#include "ttpos/verify.hpp"

using namespace ttpos;
using ttpos::testing::fixture;
using ttpos::testing::fixture_names;

namespace {

bool has_clause(const AuditReport& r, const std::string& clause) {
  for (const auto& v : r.violations)
    if (v.clause == clause) return true;
  return false;
}

PipelineResult traced(const Neighbourhood& N, const Curve& c) { return efficient_position(N, c, {true, true, -1}); }

}  // namespace

TEST(Checker, CarriedCyclesPass) {
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Curve c = gen_carried_cycle(N, seed);
      EfficiencyReport r = check_efficient(N, c);
      EXPECT_TRUE(r.pass);
      EXPECT_EQ(r.first_failure, -1);
      EXPECT_EQ(static_cast<int>(r.verdicts.size()), c.len());
    }
  }
}

TEST(Checker, BranchTrigonFailsWithItsIndex) {
  Neighbourhood N = fixture("torus_one_hole");
  int b = N.branch_region[0];
  SnippetVerdict v = check_snippet(N, Snippet{b, Locus::at(0), Locus::at(1), 0});
  EXPECT_FALSE(v.efficient);
  EXPECT_EQ(v.cut_index, Quarter{1});
  // a bigon cuts off a disc of index 1/2
  SnippetVerdict w = check_snippet(N, Snippet{b, Locus::at(1), Locus::at(1), 0});
  EXPECT_FALSE(w.efficient);
  EXPECT_EQ(w.cut_index, Quarter{2});
  EXPECT_TRUE(check_snippet(N, Snippet{b, Locus::at(0), Locus::at(2), 0}).efficient);
}

TEST(Checker, FirstFailureMatchesClassifier) {
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int seed = 0; seed < 200; ++seed) {
      Curve c = gen_random_curve(N, 2 + seed % 20, seed);
      EfficiencyReport r = check_efficient(N, c);
      auto bad = bad_positions(N, c);
      EXPECT_EQ(r.pass, bad.empty());
      EXPECT_EQ(r.first_failure, bad.empty() ? -1 : bad[0]);
      for (int i = 0; i < c.len(); ++i) EXPECT_EQ(!r.verdicts[i].efficient, classify(N, c.s[i]).bad());
    }
  }
}

TEST(Audit, PipelineTracesPass) {
  long events = 0, gaps = 0;
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int seed = 0; seed < 120; ++seed) {
      Curve c = seed % 3 == 2 ? gen_random_arc(N, 3 + seed % 20, seed) : gen_random_curve(N, 2 + seed % 20, seed);
      PipelineResult r = traced(N, c);
      AuditReport rep = audit_trace(N, r.trace);
      events += rep.events;
      auto left = ttpos::testing::unexplained(N, r.trace, rep);
      EXPECT_TRUE(left.empty()) << name << " seed " << seed << " " << left[0].clause + ": " + left[0].detail;
      gaps += rep.violations.size() - left.size();
      if (rep.pass) EXPECT_NO_THROW(audit_or_throw(N, r.trace));
    }
  }
  EXPECT_GT(events, 500);
  EXPECT_LT(gaps * 100, events);
}

// The full-lap annulus case really does break monotonicity, and the audit reports it.
TEST(Audit, LapOverrunReported) {
  long seen = 0;
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int seed = 0; seed < 600 && !seen; ++seed) {
      PipelineResult r = traced(N, gen_random_curve(N, 2 + seed % 30, seed));
      AuditReport rep = audit_trace(N, r.trace);
      for (const auto& v : rep.violations) {
        const RewriteEvent& e = r.trace.events[v.event];
        ASSERT_TRUE(ttpos::testing::lap_overrun(N, e));
        EXPECT_EQ(v.clause, "monotonicity");
        EXPECT_GT(e.after_red, e.before_red);
        EXPECT_THROW(audit_or_throw(N, r.trace), Error);
        ++seen;
      }
    }
  }
  EXPECT_GT(seen, 0);
}

namespace {

// a real trace holding an event of the given type inside a trigon routine
std::optional<std::pair<std::string, Trace>> trace_with(BadType t) {
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int seed = 0; seed < 400; ++seed) {
      PipelineResult r = traced(N, gen_random_curve(N, 3 + seed % 15, seed));
      for (const auto& e : r.trace.events)
        if (e.type == t && (e.context == "TrigCurve" || e.context == "TrigArc") && e.window_len >= 2)
          return std::make_pair(name, r.trace);
    }
  }
  return std::nullopt;
}

int event_index(const Trace& tr, BadType t) {
  for (int i = 0; i < (int)tr.events.size(); ++i)
    if (tr.events[i].type == t && (tr.events[i].context == "TrigCurve" || tr.events[i].context == "TrigArc")) return i;
  return -1;
}

}  // namespace

TEST(Audit, ForgedTrigonEdgeFails) {
  auto f = trace_with(BadType::B_ht);
  ASSERT_TRUE(f);
  Neighbourhood N = fixture(f->first);
  Trace tr = f->second;
  ASSERT_TRUE(audit_trace(N, tr).pass);
  RewriteEvent& e = tr.events[event_index(tr, BadType::B_ht)];
  SnippetClass to;
  to.verdict = Verdict::Bad;
  to.type = BadType::R_hh;
  to.turn = e.turn;
  e.new_bad = std::make_pair(e.window_start, to);
  AuditReport rep = audit_trace(N, tr);
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(has_clause(rep, "trigon-graph"));
  EXPECT_THROW(audit_or_throw(N, tr), Error);
}

TEST(Audit, FlippedTurnFails) {
  auto f = trace_with(BadType::B_ht);
  ASSERT_TRUE(f);
  Neighbourhood N = fixture(f->first);
  Trace tr = f->second;
  RewriteEvent& e = tr.events[event_index(tr, BadType::B_ht)];
  SnippetClass to;
  to.verdict = Verdict::Bad;
  to.type = BadType::S_hv2;
  to.turn = opposite(e.turn);
  e.new_bad = std::make_pair(e.window_start, to);
  EXPECT_TRUE(has_clause(audit_trace(N, tr), "turn"));
}

TEST(Audit, TamperedSnapshotsFail) {
  auto f = trace_with(BadType::B_ht);
  ASSERT_TRUE(f);
  Neighbourhood N = fixture(f->first);
  Trace base = f->second;
  int i = event_index(base, BadType::B_ht);
  // a snippet outside the window swapped for a copy of another one
  Trace tr = base;
  RewriteEvent& e = tr.events[i];
  Curve& a = *e.after;
  if (a.len() > e.window_len + 1) {
    int out = a.norm(e.window_start + e.window_len);
    a.s[out] = a.s[a.norm(out + 1)] == a.s[out] ? Snippet{a.s[out].region, Locus::closed(), Locus::closed(), 0}
                                                 : a.s[a.norm(out + 1)];
    AuditReport rep = audit_trace(N, tr);
    EXPECT_TRUE(has_clause(rep, "locality") || has_clause(rep, "replay"));
  }
  // a length change that the rule does not allow
  Trace tl = base;
  tl.events[i].after_len += 1;
  EXPECT_TRUE(has_clause(audit_trace(N, tl), "length-delta"));
  tl = base;
  tl.events[i].pushed = 3;
  EXPECT_TRUE(has_clause(audit_trace(N, tl), "length-delta"));
}

TEST(Audit, MonotonicityBreachFails) {
  auto f = trace_with(BadType::B_ht);
  ASSERT_TRUE(f);
  Neighbourhood N = fixture(f->first);
  Trace tr = f->second;
  RewriteEvent& e = tr.events[event_index(tr, BadType::B_ht)];
  e.after_m.bad_count = 1;
  e.after_red = e.before_red + 1;
  EXPECT_TRUE(has_clause(audit_trace(N, tr), "monotonicity"));
}

TEST(Oracle, AgreesWithPipelineOnShortCurves) {
  int agree = 0, total = 0;
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int seed = 0; seed < 60; ++seed) {
      Curve c = gen_random_curve(N, 1 + seed % 5, seed);
      OracleResult o = exhaustive_oracle(N, c);
      PipelineResult r = efficient_position(N, c);
      ASSERT_NE(o.verdict, OracleVerdict::Inconclusive) << name << " " << seed;
      EXPECT_NE(o.verdict, OracleVerdict::Conflict);
      bool same = (o.verdict == OracleVerdict::Efficient) == (r.status == Status::Efficient);
      EXPECT_TRUE(same) << name << " seed " << seed << " oracle " << oracle_name(o.verdict);
      agree += same;
      ++total;
    }
  }
  EXPECT_EQ(agree, total);
}

TEST(Oracle, CapsMakeItInconclusive) {
  Neighbourhood N = fixture("torus_trigon");
  Curve c = boundary_loop(N, N.find("F1"), 2);
  OracleResult full = exhaustive_oracle(N, c);
  EXPECT_EQ(full.verdict, OracleVerdict::SingleSnippet);
  OracleResult capped = exhaustive_oracle(N, c, {1, -1});
  EXPECT_FALSE(capped.complete);
  EXPECT_EQ(capped.verdict, OracleVerdict::Inconclusive);
  Curve e = gen_carried_cycle(N, 3);
  OracleResult eff = exhaustive_oracle(N, e, {1, -1});
  EXPECT_EQ(eff.verdict, OracleVerdict::Efficient);
  EXPECT_EQ(eff.states, 1);
  EXPECT_TRUE(eff.complete);
}
