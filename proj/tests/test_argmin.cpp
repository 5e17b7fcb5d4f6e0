#include <gtest/gtest.h>

#include <random>

#include "cpargmin/argmin.hpp"
#include "cpargmin/error.hpp"
#include "oracles.hpp"

using namespace cpargmin;

namespace {

BoxUnion two_boxes() {
  return BoxUnion(2, {Box{Interval{0, 1}, Interval{0, 1}}, Box{Interval{-1, 0}, Interval{2, 3}}});
}

// A = [0,1]x[1,2] u [1,2]x[0,1], the argmin of a 3x3 grid with two
// minimizing cells.
GridFunction staircase_grid() {
  return GridFunction({{0, 1, 2}, {0, 1, 2}}, {5, 5, 5, 5,  //
                                               5, 5, 0, 5,  //
                                               5, 0, 5, 5,  //
                                               5, 5, 5, 5});
}

}  // namespace

TEST(ArgminSet, ConstantIsEverything) { EXPECT_EQ(argmin_set(StepFunction1D(5.0)), BoxUnion::everything(1)); }

TEST(ArgminSet, IncludesEndpointReachedByLeftLimit) {
  EXPECT_EQ(argmin_set(StepFunction1D({0, 1}, {1, 0, 1})), BoxUnion::interval(0, 1));
}

TEST(ArgminSet, UnboundedAndBoundedPieces) {
  auto a = argmin_set(StepFunction1D({-1, 0, 1}, {0, 2, 0, 3}));
  EXPECT_EQ(a, BoxUnion(1, {Box{Interval{-kInf, -1}}, Box{Interval{0, 1}}}));
}

TEST(ArgminSet, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int rep = 0; rep < 150; ++rep) {
      auto f = oracle::random_grid(rng, d, d == 3 ? 5 : 8, rep % 2 == 1);
      auto a = argmin_set(f);
      EXPECT_EQ(a, oracle::brute_force_argmin(f));
      for (const auto& face : oracle::brute_force_faces(f)) {
        ASSERT_EQ(a.contains(face.point), face.minimizing) << "d=" << d << " rep=" << rep;
      }
    }
  }
}

TEST(ArgminSet, InvariantUnderPositiveAffineMaps) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    auto f = oracle::random_grid(rng, 2, 6);
    std::vector<double> cells = f.cells();
    for (auto& c : cells) c = 4.0 * c + 0.5;
    EXPECT_EQ(argmin_set(GridFunction(f.axes(), cells)), argmin_set(f));
  }
}

TEST(LexExtremes, Examples) {
  EXPECT_EQ(sargmin(BoxUnion::interval(0, 1)), std::vector<double>{0});
  EXPECT_EQ(largmin(BoxUnion::interval(0, 1)), std::vector<double>{1});
  EXPECT_EQ(sargmin(two_boxes()), (std::vector<double>{-1, 2}));
  EXPECT_EQ(largmin(two_boxes()), (std::vector<double>{1, 1}));
  const double p[] = {3, 4};
  EXPECT_EQ(sargmin(BoxUnion::point(p)), (std::vector<double>{3, 4}));
  EXPECT_EQ(largmin(BoxUnion::point(p)), (std::vector<double>{3, 4}));
}

TEST(LexExtremes, Errors) {
  try {
    sargmin(BoxUnion(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySet);
  }
  try {
    largmin(BoxUnion(1, {Box{Interval{0, kInf}}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
}

TEST(LexExtremes, AreMembersAndMatchCornerEnumeration) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    auto a = argmin_set(oracle::random_grid(rng, 2, 6, true));
    if (!a.bounded()) continue;
    ++checked;
    auto lo = sargmin(a);
    auto hi = largmin(a);
    EXPECT_TRUE(hits(a, BoxUnion::point(lo)));
    EXPECT_TRUE(hits(a, BoxUnion::point(hi)));
    std::vector<std::vector<double>> corners;
    for (const auto& b : a.boxes()) {
      for (int c = 0; c < 4; ++c) corners.push_back({c & 1 ? b[0].hi : b[0].lo, c & 2 ? b[1].hi : b[1].lo});
    }
    EXPECT_EQ(lo, *std::min_element(corners.begin(), corners.end()));
    EXPECT_EQ(hi, *std::max_element(corners.begin(), corners.end()));
  }
  EXPECT_GT(checked, 100);
}

TEST(Hits, Examples) {
  BoxUnion a(1, {Box{Interval{0, 1}}, Box{Interval{3, 4}}});
  EXPECT_TRUE(hits(a, BoxUnion::interval(-kInf, 2)));
  EXPECT_FALSE(hits(BoxUnion::interval(0, 1), BoxUnion::interval(2, 3)));
  EXPECT_TRUE(hits(two_boxes(), BoxUnion(2, {Box{Interval{-kInf, 0}, Interval{-kInf, 3}}})));
  EXPECT_FALSE(hits(a, BoxUnion(1)));
}

TEST(ContainedInOpen, Examples) {
  EXPECT_TRUE(contained_in_open(BoxUnion::interval(0, 1), OpenBoxUnion::interval(-0.5, 1.5)));
  EXPECT_FALSE(contained_in_open(BoxUnion::interval(0, 1), OpenBoxUnion::interval(0, 2)));
  BoxUnion a(1, {Box{Interval{-kInf, -1}}, Box{Interval{0, 1}}});
  EXPECT_TRUE(contained_in_open(a, OpenBoxUnion::interval(-kInf, 2)));
  EXPECT_TRUE(contained_in_open(BoxUnion(1), OpenBoxUnion(1)));
}

TEST(ContainedInOpen, SharedEndpointOfOpenPartsIsNotCovered) {
  OpenBoxUnion g(1, {OpenBox{OpenInterval{0, 1}}, OpenBox{OpenInterval{1, 2}}});
  EXPECT_FALSE(contained_in_open(BoxUnion::interval(0.5, 1.5), g));
  OpenBoxUnion h(1, {OpenBox{OpenInterval{0, 1.2}}, OpenBox{OpenInterval{1, 2}}});
  EXPECT_TRUE(contained_in_open(BoxUnion::interval(0.5, 1.5), h));
}

TEST(ContainedInOpen, DualToHittingTheComplement) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> pos(-8, 8);
  std::uniform_int_distribution<int> count(0, 3);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<Box> boxes;
    for (int i = count(rng); i > 0; --i) {
      int a = pos(rng), b = pos(rng);
      boxes.push_back(Box{Interval{std::min(a, b) * 0.5, std::max(a, b) * 0.5}});
    }
    std::vector<OpenBox> open;
    for (int i = count(rng); i > 0; --i) {
      int a = pos(rng), b = pos(rng);
      double lo = a == -8 ? -kInf : std::min(a, b) * 0.5;
      double hi = b == 8 ? kInf : std::max(a, b) * 0.5;
      open.push_back(OpenBox{OpenInterval{lo, hi}});
    }
    BoxUnion a(1, boxes);
    OpenBoxUnion g(1, open);
    ASSERT_EQ(contained_in_open(a, g), !hits(a, closed_complement(g))) << describe(a) << " in " << describe(g);
    ASSERT_EQ(detail::contained_by_decomposition(a, g), contained_in_open(a, g)) << describe(a) << " in " << describe(g);
  }
}

TEST(ContainedInOpen, DecompositionAgreesWithPointSampling2d) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> pos(0, 6);
  for (int rep = 0; rep < 500; ++rep) {
    auto a = argmin_set(oracle::random_grid(rng, 2, 3, rep % 2 == 1));
    std::vector<OpenBox> open;
    for (int i = 0; i < 3; ++i) {
      int x0 = pos(rng), x1 = pos(rng), y0 = pos(rng), y1 = pos(rng);
      auto side = [](int u, int v) {
        return OpenInterval{u == 0 ? -kInf : std::min(u, v) * 2.0 - 6.0, v == 6 ? kInf : std::max(u, v) * 2.0 - 6.0};
      };
      open.push_back(OpenBox{side(x0, x1), side(y0, y1)});
    }
    OpenBoxUnion g(2, open);
    EXPECT_EQ(contained_in_open(a, g), !hits(a, closed_complement(g)));
  }
}

TEST(LemmaA1, OneDimensionalExamples) {
  StepFunction1D f({0, 1}, {1, 0, 1});
  auto c = check_lemma_a1(f, {2.0});
  EXPECT_TRUE(c.hits_lower_orthant && c.sargmin_below && c.inside_open_orthant && c.largmin_strictly_below);
  c = check_lemma_a1(f, {0.0});
  EXPECT_TRUE(c.hits_lower_orthant && c.sargmin_below);
  EXPECT_FALSE(c.inside_open_orthant || c.largmin_strictly_below);
  c = check_lemma_a1(f, {-1.0});
  EXPECT_FALSE(c.hits_lower_orthant || c.sargmin_below || c.inside_open_orthant || c.largmin_strictly_below);
}

TEST(LemmaA1, RejectsNonCompactArgmin) {
  try {
    check_lemma_a1(StepFunction1D(0.0), {0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCompact);
  }
}

TEST(LemmaA1, EquivalencesHoldInOneDimension) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> xs(-44, 44);
  for (int rep = 0; rep < 500; ++rep) {
    auto f = oracle::random_grid(rng, 1, 12, rep % 2 == 1);
    auto a = argmin_set(f);
    if (!a.bounded()) continue;
    for (int k = 0; k < 25; ++k) {
      auto c = check_lemma_a1(a, {xs(rng) * 0.25});
      EXPECT_TRUE(c.first_equivalence());
      EXPECT_TRUE(c.second_equivalence());
    }
  }
}

TEST(LemmaA1, EquivalencesHoldForSingleBoxes) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> xs(-6, 6);
  for (int rep = 0; rep < 500; ++rep) {
    double a = xs(rng), b = xs(rng), c = xs(rng), d = xs(rng);
    BoxUnion box(2, {Box{Interval{std::min(a, b), std::max(a, b)}, Interval{std::min(c, d), std::max(c, d)}}});
    auto r = check_lemma_a1(box, {xs(rng) + 0.5 * (rep % 2), static_cast<double>(xs(rng))});
    EXPECT_TRUE(r.first_equivalence());
    EXPECT_TRUE(r.second_equivalence());
  }
}

TEST(LemmaA1, TrivialDirectionsHoldInEveryDimension) {
  std::mt19937_64 rng(18);
  std::uniform_int_distribution<int> xs(-44, 44);
  for (std::size_t d = 2; d <= 3; ++d) {
    for (int rep = 0; rep < 300; ++rep) {
      auto a = argmin_set(oracle::random_grid(rng, d, 6, true));
      if (!a.bounded()) continue;
      for (int k = 0; k < 10; ++k) {
        std::vector<double> x;
        for (std::size_t i = 0; i < d; ++i) x.push_back(xs(rng) * 0.25);
        auto c = check_lemma_a1(a, x);
        if (c.sargmin_below) EXPECT_TRUE(c.hits_lower_orthant);
        if (c.inside_open_orthant) EXPECT_TRUE(c.largmin_strictly_below);
      }
    }
  }
}

TEST(LemmaA1, LexicographicExtremesBreakTheEquivalencesInTwoDimensions) {
  auto a = argmin_set(staircase_grid());
  EXPECT_EQ(a, BoxUnion(2, {Box{Interval{0, 1}, Interval{1, 2}}, Box{Interval{1, 2}, Interval{0, 1}}}));
  EXPECT_EQ(sargmin(a), (std::vector<double>{0, 1}));
  EXPECT_EQ(largmin(a), (std::vector<double>{2, 1}));
  auto first = check_lemma_a1(a, {1.5, 0.5});
  EXPECT_TRUE(first.hits_lower_orthant);
  EXPECT_FALSE(first.sargmin_below);
  auto second = check_lemma_a1(a, {2.5, 1.5});
  EXPECT_TRUE(second.largmin_strictly_below);
  EXPECT_FALSE(second.inside_open_orthant);
}
