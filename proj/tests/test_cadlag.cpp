#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "cpargmin/cadlag.hpp"
#include "cpargmin/error.hpp"

using namespace cpargmin;

namespace {

double kInfinity() { return std::numeric_limits<double>::infinity(); }

std::vector<double> probes_for(const std::vector<double>& axis) {
  std::vector<double> p;
  if (axis.empty()) return {-1.0, 0.0, 3.7};
  p.push_back(axis.front() - 1.0);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    p.push_back(axis[i]);
    if (i + 1 < axis.size()) p.push_back(0.5 * (axis[i] + axis[i + 1]));
  }
  p.push_back(axis.back() + 1.0);
  return p;
}

StepFunction1D random_step(std::mt19937_64& rng, int max_bps) {
  std::uniform_int_distribution<int> count(0, max_bps);
  std::uniform_int_distribution<int> pos(-20, 20);
  std::uniform_int_distribution<int> val(0, 3);
  std::vector<double> bps;
  int n = count(rng);
  for (int i = 0; i < n; ++i) bps.push_back(pos(rng) * 0.25);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<double> vals;
  for (std::size_t i = 0; i <= bps.size(); ++i) vals.push_back(val(rng));
  return StepFunction1D(bps, vals);
}

}  // namespace

TEST(StepFunction1D, EvaluatesConstant) {
  StepFunction1D f(5.0);
  EXPECT_EQ(f(3.7), 5.0);
}

TEST(StepFunction1D, IsRightContinuousAtBreakpoint) {
  StepFunction1D f({0.0}, {1.0, 0.0});
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_EQ(f(-1e-300), 1.0);
}

TEST(StepFunction1D, EvaluatesInteriorOfMiddleCell) {
  StepFunction1D f({0.0, 1.0}, {1.0, 0.0, 1.0});
  EXPECT_EQ(f(0.999), 0.0);
}

TEST(StepFunction1D, RejectsMalformedInput) {
  EXPECT_THROW(StepFunction1D({1.0, 1.0}, {0, 0, 0}), Error);
  EXPECT_THROW(StepFunction1D({2.0, 1.0}, {0, 0, 0}), Error);
  EXPECT_THROW(StepFunction1D({1.0}, {0}), Error);
  EXPECT_THROW(StepFunction1D({kInfinity()}, {0, 0}), Error);
}

TEST(StepFunction1D, QuadrantLimitsAtJump) {
  StepFunction1D f({0.0}, {0.0, 1.0});
  EXPECT_EQ(f.quadrant_limit(0.0, Relation::Below), 0.0);
  EXPECT_EQ(f.quadrant_limit(0.0, Relation::AtOrAbove), 1.0);
}

TEST(StepFunction1D, UpperQuadrantLimitEqualsValueEverywhere) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    auto f = random_step(rng, 8);
    for (double t : probes_for(f.breakpoints())) EXPECT_EQ(f.quadrant_limit(t, Relation::AtOrAbove), f(t));
  }
}

TEST(GridFunction, QuadrantLimitsAtOrigin) {
  GridFunction g({{0.0}, {0.0}}, {1, 2, 3, 4});
  const double t[] = {0.0, 0.0};
  using R = Relation;
  EXPECT_EQ(g.quadrant_limit(t, Quadrant{{R::Below, R::Below}}), 1.0);
  EXPECT_EQ(g.quadrant_limit(t, Quadrant{{R::AtOrAbove, R::Below}}), 3.0);
  EXPECT_EQ(g.quadrant_limit(t, Quadrant{{R::Below, R::AtOrAbove}}), 2.0);
  EXPECT_EQ(g.quadrant_limit(t, Quadrant{{R::AtOrAbove, R::AtOrAbove}}), 4.0);
  EXPECT_EQ(g(t), 4.0);
}

TEST(GridFunction, RejectsBadShapes) {
  EXPECT_THROW(GridFunction({}, {1.0}), Error);
  EXPECT_THROW(GridFunction({{0.0}, {0.0}}, {1, 2, 3}), Error);
  EXPECT_THROW(GridFunction({{}, {}, {}, {}}, {1.0}), Error);
  EXPECT_THROW(GridFunction({{1.0, 0.0}}, {1, 2, 3}), Error);
}

TEST(GridFunction, UpperQuadrantLimitEqualsValue3d) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> val(-2, 2);
  std::vector<std::vector<double>> axes{{0.0, 1.0}, {-1.0}, {0.5, 2.0, 3.0}};
  std::vector<double> cells(3 * 2 * 4);
  for (auto& c : cells) c = val(rng);
  GridFunction g(axes, cells);
  for (double a : probes_for(axes[0])) {
    for (double b : probes_for(axes[1])) {
      for (double c : probes_for(axes[2])) {
        const double t[] = {a, b, c};
        EXPECT_EQ(g.quadrant_limit(t, Quadrant::upper(3)), g(t));
      }
    }
  }
}

TEST(LowerEnvelope, ConstantFunction) {
  LowerEnvelope e(StepFunction1D(2.0));
  EXPECT_EQ(e(-5.0), 2.0);
  EXPECT_EQ(e(5.0), 2.0);
}

TEST(LowerEnvelope, LeftLimitBeatsValue) {
  LowerEnvelope e(StepFunction1D({0.0, 1.0}, {1.0, 0.0, 1.0}));
  EXPECT_EQ(e(1.0), 0.0);
  LowerEnvelope e2(StepFunction1D({0.0}, {0.0, 1.0}));
  EXPECT_EQ(e2(0.0), 0.0);
}

TEST(LowerEnvelope, MatchesMinimumOverAllQuadrants2d) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(0, 4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::vector<double>> axes{{-1.0, 0.0, 2.0}, {0.0, 1.0}};
    std::vector<double> cells(4 * 3);
    for (auto& c : cells) c = val(rng);
    GridFunction g(axes, cells);
    LowerEnvelope env(g);
    for (double a : probes_for(axes[0])) {
      for (double b : probes_for(axes[1])) {
        const double t[] = {a, b};
        double m = kInfinity();
        for (int q = 0; q < 4; ++q) {
          Quadrant quad{{q & 1 ? Relation::Below : Relation::AtOrAbove, q & 2 ? Relation::Below : Relation::AtOrAbove}};
          m = std::min(m, g.quadrant_limit(t, quad));
        }
        EXPECT_EQ(env(t), m);
        EXPECT_LE(env(t), g(t));
      }
    }
  }
}

TEST(LowerEnvelope, EqualsValueOffBreakpoints) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    auto f = random_step(rng, 6);
    LowerEnvelope env(f);
    const auto& b = f.breakpoints();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const double mid = 0.5 * (b[i] + b[i + 1]);
      EXPECT_EQ(env(mid), f(mid));
    }
  }
}

TEST(Infimum, Examples) {
  EXPECT_EQ(infimum(StepFunction1D({0.0, 1.0}, {1, 0, 1})), 0.0);
  EXPECT_EQ(infimum(StepFunction1D(-2.5)), -2.5);
  EXPECT_EQ(infimum(GridFunction({{0.0}, {0.0}}, {1, 2, 3, -4})), -4.0);
}

TEST(Infimum, MatchesProbeGridMinimum) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    auto f = random_step(rng, 10);
    double m = kInfinity();
    for (double t : probes_for(f.breakpoints())) m = std::min(m, f(t));
    EXPECT_EQ(infimum(f), m);
  }
}

TEST(AddScale, Examples) {
  StepFunction1D f({0.0, 1.0}, {1, 0, 1});
  StepFunction1D one(1.0);
  EXPECT_EQ(add_scale(f, one, 1.0, -1.0), StepFunction1D({0.0, 1.0}, {0, -1, 0}));
  EXPECT_EQ(add_scale(f, one, 1.0, 0.0), f);
  auto zero = add_scale(f, one, 0.0, 0.0);
  EXPECT_EQ(normalize(zero), StepFunction1D(0.0));
}

TEST(AddScale, PointwiseOnMergedGrid) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    auto f = random_step(rng, 6);
    auto g = random_step(rng, 6);
    auto h = add_scale(f, g, 2.0, -3.0);
    std::vector<double> all = f.breakpoints();
    all.insert(all.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(all.begin(), all.end());
    for (double t : probes_for(all)) EXPECT_EQ(h(t), 2.0 * f(t) - 3.0 * g(t));
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(StepFunction1D({0.0, 1.0}, {1, 1, 2})), StepFunction1D({1.0}, {1, 2}));
  StepFunction1D minimal({0.0}, {1, 2});
  EXPECT_EQ(normalize(minimal), minimal);
  EXPECT_EQ(normalize(StepFunction1D({0.0, 1.0}, {3, 3, 3})), StepFunction1D(3.0));
}

TEST(Normalize, PreservesValues1d) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    auto f = random_step(rng, 10);
    auto g = normalize(f);
    for (double t : probes_for(f.breakpoints())) EXPECT_EQ(g(t), f(t));
    EXPECT_EQ(normalize(g), g);
  }
}

TEST(Normalize, RemovesEqualSlabsInGrid) {
  GridFunction g({{0.0, 1.0}, {5.0}}, {1, 2, 1, 2, 3, 4});
  auto n = normalize(g);
  EXPECT_EQ(n.axis(0), std::vector<double>{1.0});
  EXPECT_EQ(n.axis(1), std::vector<double>{5.0});
  for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    for (double b : {4.0, 5.0, 6.0}) {
      const double t[] = {a, b};
      EXPECT_EQ(n(t), g(t));
    }
  }
}

TEST(TextFormat, StepRoundTripIsExact) {
  StepFunction1D f({-0.1, 1.0 / 3.0, 2.5e10}, {0.3, -7.0, 1e-300, 12345.678901234567});
  EXPECT_EQ(to_text(f), "-0.10000000000000001,0.33333333333333331,25000000000\n"
                        "0.29999999999999999,-7,1e-300,12345.678901234567\n");
  EXPECT_EQ(step_from_text(to_text(f)), f);
  EXPECT_EQ(step_from_text("\n5\n"), StepFunction1D(5.0));
}

TEST(TextFormat, GridRoundTripIsExact) {
  GridFunction g({{0.0}, {0.1, 0.2}}, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(grid_from_text(to_text(g)), g);
  EXPECT_THROW(grid_from_text("4\n\n\n\n\n1\n"), Error);
}

TEST(TextFormat, ParseDouble) {
  EXPECT_EQ(parse_double(" inf "), kInfinity());
  EXPECT_EQ(parse_double("-inf"), -kInfinity());
  EXPECT_EQ(parse_double("1e3"), 1000.0);
  EXPECT_THROW(parse_double("1.0x"), Error);
  EXPECT_THROW(parse_double(""), Error);
  EXPECT_EQ(format_double(-kInfinity()), "-inf");
}
