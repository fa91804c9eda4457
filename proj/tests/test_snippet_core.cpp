#include <gtest/gtest.h>

#include <map>
#include <string>

#include "support/fixtures.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/verify.hpp"

using namespace ttpos;
using ttpos::testing::fixture;
using ttpos::testing::fixture_names;

namespace {

Snippet seg(int r, int a, int b, int w = 0) { return Snippet{r, Locus::at(a), Locus::at(b), w}; }

}  // namespace

// Switch rectangle: segments t_L h t_a v t_b h, corners at local vertices 0 1 2 5, marks at 3 4.
// Expected verdicts counted by hand from the corners on each side.
TEST(Classify, SwitchRectangleTable) {
  Neighbourhood N = fixture("torus_one_hole");
  int r = N.switch_region[0];
  const std::map<std::pair<int, int>, std::string> want{
      {{0, 0}, "S(t,t,0)/-"}, {{0, 1}, "S(h,t,1)/R"}, {{0, 2}, "carried"},    {{0, 3}, "carried"},
      {{0, 4}, "carried"},    {{0, 5}, "S(h,t,1)/L"}, {{1, 0}, "S(h,t,1)/L"}, {{1, 1}, "S(h,h,0)/-"},
      {{1, 2}, "S(h,t,1)/R"}, {{1, 3}, "S(h,v,2)/R"}, {{1, 4}, "S(h,t,3)/R"}, {{1, 5}, "dual-tie"},
      {{2, 0}, "carried"},    {{2, 1}, "S(h,t,1)/L"}, {{2, 2}, "S(t,t,0)/-"}, {{2, 3}, "S(t,v,1)/R"},
      {{2, 4}, "S(t,t,2)/R"}, {{2, 5}, "S(h,t,3)/R"}, {{3, 0}, "carried"},    {{3, 1}, "S(h,v,2)/L"},
      {{3, 2}, "S(t,v,1)/L"}, {{3, 3}, "S(v,v,0)/-"}, {{3, 4}, "S(t,v,1)/R"}, {{3, 5}, "S(h,v,2)/R"},
      {{4, 0}, "carried"},    {{4, 1}, "S(h,t,3)/L"}, {{4, 2}, "S(t,t,2)/L"}, {{4, 3}, "S(t,v,1)/L"},
      {{4, 4}, "S(t,t,0)/-"}, {{4, 5}, "S(h,t,1)/R"}, {{5, 0}, "S(h,t,1)/R"}, {{5, 1}, "dual-tie"},
      {{5, 2}, "S(h,t,3)/L"}, {{5, 3}, "S(h,v,2)/L"}, {{5, 4}, "S(h,t,1)/L"}, {{5, 5}, "S(h,h,0)/-"},
  };
  for (const auto& [ab, s] : want) EXPECT_EQ(classify(N, seg(r, ab.first, ab.second)).str(), s) << ab.first << "->" << ab.second;
  // weight is the number of vertices on the cut-off side
  EXPECT_EQ(weight(N, seg(r, 1, 4)), 3);
  EXPECT_EQ(weight(N, seg(r, 2, 4)), 2);
  EXPECT_EQ(weight(N, seg(r, 2, 3)), 1);
  EXPECT_EQ(weight(N, seg(r, 4, 4)), 0);
  EXPECT_THROW(weight(N, seg(r, 0, 2)), Error);
  EXPECT_THROW(weight(N, seg(N.branch_region[0], 0, 1)), Error);
}

TEST(Classify, BranchRectangle) {
  Neighbourhood N = fixture("torus_one_hole");
  int r = N.branch_region[0];
  EXPECT_EQ(classify(N, seg(r, 0, 2)).str(), "carried");
  EXPECT_EQ(classify(N, seg(r, 2, 0)).str(), "carried");
  EXPECT_EQ(classify(N, seg(r, 1, 3)).str(), "dual-tie");
  EXPECT_EQ(classify(N, seg(r, 0, 1)).str(), "B(h,t)/R");
  EXPECT_EQ(classify(N, seg(r, 1, 0)).str(), "B(h,t)/L");
  EXPECT_EQ(classify(N, seg(r, 1, 1)).str(), "B(h,h)/-");
  EXPECT_EQ(classify(N, seg(r, 2, 2)).str(), "B(t,t)/-");
  EXPECT_EQ(corner_length(N, seg(r, 0, 2)), 1);
  EXPECT_EQ(corner_length(N, seg(N.switch_region[0], 0, 2)), 3);
}

// Once-punctured torus: the annulus has 12 segments and corners at local vertices 1 2 7 8.
TEST(Classify, AnnulusWinding) {
  Neighbourhood N = fixture("torus_one_hole");
  int F = N.find("F0");
  const Region& R = N[F];
  ASSERT_EQ(R.size(), 12);
  ASSERT_EQ(R.corners(), 4);
  auto lift = [&](int a, int b, int D) { return annulus_snippet(R, F, a, b, D); };
  EXPECT_EQ(lift(0, 1, 1).wind, 1);
  EXPECT_EQ(classify(N, lift(0, 1, 1)).str(), "R(h,v)/R");
  EXPECT_EQ(classify(N, lift(1, 0, -1)).str(), "R(h,v)/L");
  EXPECT_EQ(classify(N, lift(2, 4, 2)).str(), "R(h,h)/R");
  EXPECT_EQ(classify(N, lift(2, 4, 2)).cut_vertices, 2);
  EXPECT_EQ(classify(N, lift(0, 2, 2)).str(), "dual-comp/R");
  EXPECT_EQ(classify(N, lift(0, 3, 3)).str(), "dual-comp/R");
  EXPECT_EQ(classify(N, lift(0, 8, 8)).str(), "dual-comp/-");
  EXPECT_EQ(lift(3, 0, 9).wind, 2);
  EXPECT_EQ(lift(3, 0, -3).wind, -2);
  EXPECT_EQ(classify(N, lift(3, 0, -3)).str(), "dual-comp/L");
  EXPECT_EQ(classify(N, lift(1, 1, 0)).str(), "R(v,v)/-");
  EXPECT_EQ(lift(1, 1, 12).wind, 4);
  EXPECT_EQ(classify(N, lift(1, 1, 12)).str(), "dual-comp/-");
  EXPECT_EQ(classify(N, Snippet{F, Locus::ds(), Locus::at(5), 0}).str(), "dual-comp/-");
  EXPECT_EQ(bad_name(classify(N, Snippet{F, Locus::ds(), Locus::ds(), 0}).type), std::string("R(dS,dS)"));
  EXPECT_EQ(classify(N, Snippet{F, Locus::closed(), Locus::closed(), 4}).type, BadType::PeripheralCurve);
  EXPECT_EQ(classify(N, Snippet{F, Locus::closed(), Locus::closed(), 0}).type, BadType::Trivial);
  EXPECT_EQ(winding_number(N, lift(0, 8, 8)), 4);
  EXPECT_THROW(winding_number(N, seg(N.branch_region[0], 0, 2)), Error);
  // between segments 0 and 3 the winding must be 2 + 4t
  EXPECT_THROW(validate_snippet(N, seg(F, 0, 3, 1)), Error);
  EXPECT_NO_THROW(validate_snippet(N, seg(F, 0, 3, -2)));
  EXPECT_EQ(displacement(R, seg(F, 0, 3, -2)), -9);
}

TEST(Classify, AnnulusCornerLength) {
  Neighbourhood N = fixture("torus_one_hole");
  int F = N.find("F0");
  const Region& R = N[F];
  // weighted segments strictly between the endpoints: v(1) + h(1), then h(3)
  EXPECT_EQ(corner_length(N, annulus_snippet(R, F, 0, 3, 3)), 2);
  EXPECT_EQ(corner_length(N, annulus_snippet(R, F, 2, 4, 2)), 3);
  // winding beyond two: the fallback
  EXPECT_EQ(corner_length(N, annulus_snippet(R, F, 0, 8, 8)), 2 * N.s_N);
  EXPECT_EQ(corner_length(N, Snippet{F, Locus::ds(), Locus::at(5), 0}), 2 * N.s_N);
  EXPECT_EQ(corner_length(N, Snippet{F, Locus::closed(), Locus::closed(), 0}), 0);
}

// The disc of the trigon fixture has 18 segments and corners at local vertices 0 7 8 11 12 17.
TEST(Classify, DiscRegion) {
  Neighbourhood N = fixture("torus_trigon");
  int D = -1;
  for (int r : N.comp_regions)
    if (!N[r].annulus()) D = r;
  ASSERT_GE(D, 0);
  ASSERT_EQ(N[D].size(), 18);
  EXPECT_EQ(classify(N, seg(D, 0, 6)).str(), "R(h,h)/R");
  EXPECT_EQ(classify(N, seg(D, 0, 6)).cut_vertices, 6);
  EXPECT_EQ(classify(N, seg(D, 5, 7)).str(), "R(h,v)/R");
  EXPECT_EQ(classify(N, seg(D, 6, 8)).str(), "dual-comp/R");
  EXPECT_EQ(classify(N, seg(D, 8, 6)).str(), "dual-comp/L");
  EXPECT_EQ(classify(N, seg(D, 7, 7)).str(), "R(v,v)/-");
  EXPECT_EQ(classify(N, seg(D, 3, 3)).str(), "R(h,h)/-");
  // corner length of the dual: segment 7 (v, weight 1)
  EXPECT_EQ(corner_length(N, seg(D, 6, 8)), 1);
}

TEST(Classify, NamesAndGroups) {
  int trig = 0, big = 0;
  for (int i = 0; i <= static_cast<int>(BadType::R_hv); ++i) {
    BadType t = static_cast<BadType>(i);
    trig += is_trigon(t);
    big += is_bigon(t);
    EXPECT_FALSE(is_trigon(t) && is_bigon(t));
  }
  EXPECT_EQ(trig, 5);
  EXPECT_EQ(big, 9);
  EXPECT_EQ(opposite(Turn::Left), Turn::Right);
  EXPECT_EQ(opposite(Turn::NA), Turn::NA);
}

// Every snippet of every region (annuli with a few laps) gets exactly one verdict, and the
// boundary-walk checker agrees with it on bad versus efficient.
TEST(Classify, CheckerAgreementExhaustive) {
  long n = 0;
  for (const auto& name : fixture_names()) {
    Neighbourhood N = fixture(name);
    for (int r = 0; r < N.size(); ++r) {
      const Region& R = N[r];
      for (int a = 0; a < R.size(); ++a)
        for (int b = 0; b < R.size(); ++b) {
          std::vector<Snippet> ss;
          if (R.annulus())
            for (int t = -2; t <= 2; ++t) ss.push_back(annulus_snippet(R, r, a, b, R.mod(b - a) + t * R.size()));
          else
            ss.push_back(seg(r, a, b));
          for (const Snippet& s : ss) {
            SnippetClass c = classify(N, s);
            EXPECT_EQ(c.bad(), !check_snippet(N, s).efficient) << R.name << " " << a << "->" << b << " w" << s.wind;
            EXPECT_EQ(c.bad(), c.type != BadType::None);
            ++n;
          }
        }
    }
  }
  EXPECT_GT(n, 1000);
}
