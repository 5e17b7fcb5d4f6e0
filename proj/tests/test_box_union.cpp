#include <gtest/gtest.h>

#include "cpargmin/box_union.hpp"
#include "cpargmin/error.hpp"

using namespace cpargmin;

TEST(BoxUnion, MergesOverlappingAndTouchingIntervals) {
  BoxUnion u(1, {Box{Interval{3, 4}}, Box{Interval{0, 1}}, Box{Interval{1, 2}}, Box{Interval{0.5, 0.7}}});
  ASSERT_EQ(u.boxes().size(), 2u);
  EXPECT_EQ(u.boxes()[0][0], (Interval{0, 2}));
  EXPECT_EQ(u.boxes()[1][0], (Interval{3, 4}));
}

TEST(BoxUnion, DropsContainedBoxesInTwoDimensions) {
  BoxUnion u(2, {Box{Interval{0, 2}, Interval{0, 2}}, Box{Interval{0, 1}, Interval{1, 2}},
                 Box{Interval{1, 3}, Interval{1, 3}}});
  EXPECT_EQ(u.boxes().size(), 2u);
}

TEST(BoxUnion, RejectsMalformedBoxes) {
  EXPECT_THROW(BoxUnion(1, {Box{Interval{2, 1}}}), Error);
  EXPECT_THROW(BoxUnion(2, {Box{Interval{0, 1}}}), Error);
  EXPECT_THROW(BoxUnion(1, {Box{Interval{kInf, kInf}}}), Error);
}

TEST(BoxUnion, MembershipAndBoundedness) {
  auto all = BoxUnion::everything(2);
  const double p[] = {1e300, -1e300};
  EXPECT_TRUE(all.contains(p));
  EXPECT_FALSE(all.bounded());
  auto iv = BoxUnion::interval(0, 1);
  EXPECT_TRUE(iv.bounded());
  const double zero = 0.0, one = 1.0, two = 2.0;
  EXPECT_TRUE(iv.contains(std::span(&zero, 1)));
  EXPECT_TRUE(iv.contains(std::span(&one, 1)));
  EXPECT_FALSE(iv.contains(std::span(&two, 1)));
}

TEST(OpenBoxUnion, ExcludesBoundary) {
  auto g = OpenBoxUnion::interval(0, 2);
  const double zero = 0.0, one = 1.0;
  EXPECT_FALSE(g.contains(std::span(&zero, 1)));
  EXPECT_TRUE(g.contains(std::span(&one, 1)));
  EXPECT_TRUE(OpenBoxUnion(1, {OpenBox{OpenInterval{1, 1}}}).boxes().empty());
}

TEST(BoxUnionText, RoundTrip) {
  BoxUnion u(2, {Box{Interval{-kInf, 0.1}, Interval{2, kInf}}, Box{Interval{3, 3}, Interval{-1, 1}}});
  const std::string text = to_text(u);
  EXPECT_EQ(text, "[-inf,0.10000000000000001] [2,inf]\n[3,3] [-1,1]\n");
  EXPECT_EQ(box_union_from_text(text, 2), u);
  EXPECT_THROW(box_union_from_text("[0,1]\n", 2), Error);
}

TEST(SetSyntax, ClosedSets) {
  EXPECT_EQ(parse_closed_set_1d("all"), BoxUnion::everything(1));
  EXPECT_TRUE(parse_closed_set_1d("empty").empty());
  auto u = parse_closed_set_1d("(-inf,-3] u [3,inf)");
  ASSERT_EQ(u.boxes().size(), 2u);
  EXPECT_EQ(u.boxes()[0][0], (Interval{-kInf, -3}));
  EXPECT_EQ(u.boxes()[1][0], (Interval{3, kInf}));
  EXPECT_EQ(describe(u), "[-inf,-3] u [3,inf]");
  EXPECT_THROW(parse_closed_set_1d("(0,1]"), Error);
  EXPECT_THROW(parse_closed_set_1d("[1,0]"), Error);
  EXPECT_THROW(parse_closed_set_1d("[0;1]"), Error);
}

TEST(SetSyntax, OpenSets) {
  auto g = parse_open_set_1d("(-inf,1) | (2,3)");
  EXPECT_EQ(g.boxes().size(), 2u);
  EXPECT_EQ(describe(g), "(-inf,1) u (2,3)");
  EXPECT_THROW(parse_open_set_1d("[0,1)"), Error);
  EXPECT_TRUE(parse_open_set_1d("empty").boxes().empty());
}
