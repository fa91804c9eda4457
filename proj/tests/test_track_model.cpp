#include <gtest/gtest.h>

#include <regex>

#include "support/fixtures.hpp"
#include "ttpos/quarter.hpp"
#include "ttpos/track.hpp"
#include "ttpos/track_io.hpp"

using namespace ttpos;
using ttpos::testing::fixture;
using ttpos::testing::fixture_names;
using ttpos::testing::fixture_text;

namespace {

Errc build_error(const std::string& text) {
  try {
    build_tie_neighbourhood(parse_track(text));
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::AuditFailure;  // sentinel: no error
}

}  // namespace

TEST(Quarter, Arithmetic) {
  EXPECT_EQ(index(1, 6, 0), Quarter{-2});
  EXPECT_EQ(index(0, 4, 0).str(), "-1");
  EXPECT_EQ(index(1, 3, 0).str(), "1/4");
  EXPECT_EQ(index(1, 6, 0).str(), "-1/2");
  EXPECT_LT(Quarter{-1}, Quarter{0});
}

TEST(TrackModel, FixturesValidate) {
  for (const auto& name : fixture_names()) {
    SCOPED_TRACE(name);
    Neighbourhood N = fixture(name);
    EXPECT_GE(N.s_N, 5);
    // rectangles have index zero, complementary regions at most -1/4
    Quarter total{0};
    for (int r = 0; r < N.size(); ++r) {
      total = total + N[r].index();
      if (N[r].rect()) EXPECT_EQ(N[r].index(), Quarter{0}) << N[r].name;
      if (N[r].is_comp()) EXPECT_LE(N[r].index(), Quarter{-1}) << N[r].name;
    }
    // index is additive, so the regions add up to the euler characteristic
    EXPECT_EQ(total, Quarter{4 * N.euler_char});
    // every segment is glued to a segment that points back
    for (int r = 0; r < N.size(); ++r)
      for (int i = 0; i < N[r].size(); ++i) {
        SegRef p = N[r].segs[i].partner;
        EXPECT_EQ(N.partner(p), (SegRef{r, i}));
        EXPECT_FALSE(N[r].is_comp() && N[p.region].is_comp());
      }
  }
}

TEST(TrackModel, RegionCounts) {
  Neighbourhood T = fixture("torus_one_hole");
  EXPECT_EQ(T.euler_char, -1);
  EXPECT_EQ(T.size(), 3 + 2 + 1);
  EXPECT_EQ(T.comp_regions.size(), 1u);
  EXPECT_TRUE(T[T.comp_regions[0]].annulus());
  EXPECT_EQ(T[T.comp_regions[0]].index(), Quarter{-4});
  EXPECT_EQ(T.boundary_components.size(), 1u);

  Neighbourhood S = fixture("sphere_four_holes");
  EXPECT_EQ(S.euler_char, -2);
  EXPECT_EQ(S.comp_regions.size(), 4u);
  for (int r : S.comp_regions) EXPECT_EQ(S[r].index(), Quarter{-2});

  Neighbourhood D = fixture("torus_trigon");
  int discs = 0;
  for (int r : D.comp_regions) discs += !D[r].annulus();
  EXPECT_EQ(discs, 1);
}

TEST(TrackModel, MaximalSideLength) {
  // a horizontal side passing k branches and k-1 switches has weighted length k + 3(k-1)
  EXPECT_EQ(fixture("torus_one_hole").s_N, 3 + 3 * 2);
  EXPECT_EQ(fixture("sphere_four_holes").s_N, 3 + 3 * 2);
  EXPECT_EQ(fixture("torus_trigon").s_N, 4 + 3 * 3);
}

TEST(TrackModel, RectangleShapes) {
  Neighbourhood N = fixture("torus_one_hole");
  const Region& B = N[N.branch_region[0]];
  ASSERT_EQ(B.size(), 4);
  EXPECT_EQ(B.corners(), 4);
  EXPECT_EQ(B.segs[0].label, Label::t);
  EXPECT_EQ(B.segs[1].label, Label::h);
  const Region& S = N[N.switch_region[0]];
  ASSERT_EQ(S.size(), 6);
  EXPECT_EQ(S.corners(), 4);
  EXPECT_EQ(S.segs[3].label, Label::v);
  EXPECT_FALSE(S.is_corner(3));
  EXPECT_FALSE(S.is_corner(4));
}

TEST(TrackModel, LowComplexity) {
  std::string t = fixture_text("sphere_four_holes");
  t = std::regex_replace(t, std::regex("boundary 4"), "boundary 3");
  EXPECT_EQ(build_error(t), Errc::LowComplexity);
}

TEST(TrackModel, InvalidValence) {
  std::string t = fixture_text("torus_one_hole");
  t = std::regex_replace(t, std::regex("small c.0 a.0"), "small c.0 c.1");
  EXPECT_EQ(build_error(t), Errc::InvalidValence);
  std::string u = std::regex_replace(fixture_text("torus_one_hole"), std::regex("a w u"), "a w nowhere");
  EXPECT_EQ(build_error(u), Errc::InvalidValence);
}

TEST(TrackModel, NotLarge) {
  // a face missing from the description
  std::string t = fixture_text("sphere_four_holes");
  t = std::regex_replace(t, std::regex("  annulus d- e- f\\+ \\^u2\n"), "");
  EXPECT_EQ(build_error(t), Errc::NotLarge);
  // a face word that is not a traced boundary
  std::string u = std::regex_replace(fixture_text("torus_one_hole"), std::regex("a\\+ \\^u c- b\\+"), "a+ ^u b+ c-");
  EXPECT_EQ(build_error(u), Errc::NotLarge);
}

TEST(TrackModel, NonNegativeIndexRegion) {
  // a once-cusped face declared as a disc has index 1/2
  std::string t = fixture_text("sphere_four_holes");
  t = std::regex_replace(t, std::regex("annulus a\\+"), "disc a+");
  EXPECT_EQ(build_error(t), Errc::NonNegativeIndexRegion);
}

TEST(TrackIO, RoundTrip) {
  for (const auto& name : fixture_names()) {
    TrackDesc d = parse_track(fixture_text(name));
    std::string canon = serialize_track(d);
    EXPECT_EQ(serialize_track(parse_track(canon)), canon);
  }
}

TEST(TrackIO, ParseErrorsCarryPosition) {
  try {
    parse_track("surface { genus 1 boundary 1 }\nswitches [\n  u large b.1 small c.x a.1\n]\n");
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_EQ(e.where(), 3);
    EXPECT_EQ(e.column(), 21);
  }
  EXPECT_THROW(parse_track(""), Error);
  EXPECT_THROW(parse_track("surface { genus one boundary 1 }"), Error);
}
