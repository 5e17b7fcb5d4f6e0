#pragma once

// Two-sided pure-jump compound Poisson processes Z with Z(0) = 0:
//   Z(t) = sum_{T_i <= t} J_i^+          for t >= 0,
//   Z(t) = sum_{L_i < -t} J_i^-          for t < 0,
// and Monte Carlo estimates of the capacity and containment functionals of
// the random closed set A(Z).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cpargmin/box_union.hpp"
#include "cpargmin/cadlag.hpp"
#include "cpargmin/parallel.hpp"

namespace cpargmin {

struct JumpLaw {
  enum class Family { Point, TwoPoint, Gaussian, ShiftedExponential };

  Family family = Family::Point;
  // Point: {value}; TwoPoint: {v1, v2, P(v1)}; Gaussian: {mean, sd};
  // ShiftedExponential: {shift, scale}, i.e. shift + Exp(mean = scale).
  std::vector<double> params{1.0};

  static JumpLaw point(double v) { return {Family::Point, {v}}; }
  static JumpLaw two_point(double v1, double v2, double p1) { return {Family::TwoPoint, {v1, v2, p1}}; }
  static JumpLaw gaussian(double mean, double sd) { return {Family::Gaussian, {mean, sd}}; }
  static JumpLaw shifted_exponential(double shift, double scale) { return {Family::ShiftedExponential, {shift, scale}}; }

  double mean() const;
  double sample(Engine& rng) const;
  void validate() const;  // InvalidSpec on malformed parameters
  // theta > 0 with E exp(-theta J) = 1; infinite when J >= 0 almost surely.
  // A walk with these increments ever falls h below its start with
  // probability at most exp(-theta h).
  double lundberg_exponent() const;

  friend bool operator==(const JumpLaw&, const JumpLaw&) = default;
};

// Parses "point(1)", "twopoint(0.5,2,0.3)", "gaussian(1,0.5)", "shiftexp(0.1,1)".
JumpLaw parse_jump_law(const std::string& text);
std::string to_string(const JumpLaw& law);

struct CompoundPoissonSpec {
  double rate_right = 1.0;
  double rate_left = 1.0;
  JumpLaw jump_right = JumpLaw::point(1.0);
  JumpLaw jump_left = JumpLaw::point(1.0);
  double window_initial = 10.0;
  double window_growth = 2.0;
  double max_window = 1e6;

  // InvalidSpec unless rates are positive, jump means strictly positive and
  // the window policy is sane.
  void validate() const;

  friend bool operator==(const CompoundPoissonSpec&, const CompoundPoissonSpec&) = default;
};

// key = value text with keys rate_right, rate_left, jump_right, jump_left,
// window_initial, window_growth, max_window.
CompoundPoissonSpec parse_compound_poisson_spec(const std::string& text);
std::string to_text(const CompoundPoissonSpec& spec);

struct Trajectory {
  StepFunction1D path;
  BoxUnion argmin;
  bool boundary = false;  // max_window reached without A(Z) inside the window
  double window = 0.0;    // final half-width a of [-a, a]
  std::vector<double> right_arrivals;  // T_1 < T_2 < ... <= a
  std::vector<double> left_arrivals;   // L_1 < L_2 < ... <= a
};

// The window starts at window_initial and grows geometrically until A(Z)
// lies strictly inside (-a, a) and Z(+-a) exceed inf Z by ln(1e12)/theta of
// the respective jump law, so a later undershoot has probability below
// 1e-12 per side. Each side draws (gap, jump) pairs from its own stream, so
// a larger window only appends arrivals.
Trajectory simulate_trajectory(const CompoundPoissonSpec& spec, std::uint64_t seed);

struct MinimizerSample {
  double xi_min = 0.0;
  double xi_max = 0.0;
  bool boundary_touched = false;
  int redraws = 0;
};

struct ArgminDraw {
  BoxUnion set;
  int redraws = 0;
};

// A(Z) per replication, re-drawing replications whose window was exhausted.
// Replication r, attempt q uses substream_seed(seed, r, q). Throws
// TooManyRedraws when more than 1% of replications needed a redraw.
std::vector<ArgminDraw> draw_argmin_sets(const CompoundPoissonSpec& spec, std::size_t replications,
                                         std::uint64_t seed, unsigned workers = 1);

std::vector<MinimizerSample> sample_extreme_minimizers(const CompoundPoissonSpec& spec, std::size_t replications,
                                                       std::uint64_t seed, unsigned workers = 1);

struct FunctionalEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;

  static FunctionalEstimate from_count(std::size_t successes, std::size_t replications);
};

FunctionalEstimate estimate_capacity(const std::vector<ArgminDraw>& draws, const BoxUnion& e);
FunctionalEstimate estimate_containment(const std::vector<ArgminDraw>& draws, const OpenBoxUnion& g);
FunctionalEstimate estimate_capacity(const CompoundPoissonSpec& spec, const BoxUnion& e, std::size_t replications,
                                     std::uint64_t seed, unsigned workers = 1);
FunctionalEstimate estimate_containment(const CompoundPoissonSpec& spec, const OpenBoxUnion& g,
                                        std::size_t replications, std::uint64_t seed, unsigned workers = 1);

struct IntervalBounds {
  double a = 0.0;
  double b = 0.0;
};

// Bonferroni split: a = s_(r) - kappa on the xi_min order statistics and b
// symmetrically on the xi_max upper tail, r = max(1, floor((1-gamma)/2 * m)),
// kappa = 1e-9 * max(1, |s_(r)|). Throws EmptySamples on empty input.
IntervalBounds choose_interval_bounds(const std::vector<MinimizerSample>& samples, double gamma);

// Fraction of samples with xi_min > a and xi_max < b.
double joint_frequency(const std::vector<MinimizerSample>& samples, const IntervalBounds& bounds);

// CSV with header rep,xi_min,xi_max,redraws.
std::string samples_to_csv(const std::vector<MinimizerSample>& samples);

}  // namespace cpargmin
