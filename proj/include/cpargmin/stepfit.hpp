#pragma once

// Least-squares step-function regression with k jumps, the rescaled
// processes around a reference fit, synthetic data from a regression model
// Y = m(X) + eps, and plug-in parameters for the limit processes.
//
// A step model g_(t,a) takes level a_1 on x <= t_1, a_{j+1} on
// t_j < x <= t_{j+1} and a_{k+1} on x > t_k.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cpargmin/box_union.hpp"
#include "cpargmin/cadlag.hpp"
#include "cpargmin/compound_poisson.hpp"
#include "cpargmin/keyvalue.hpp"
#include "cpargmin/parallel.hpp"

namespace cpargmin {

struct Dataset {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  // InvalidArgument unless lengths match, n >= 2, values are finite and x
  // is not constant.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Header "x,y", one observation per row. Parse errors name the line.
Dataset parse_dataset_csv(const std::string& text);
Dataset load_dataset_csv(const std::string& path);
std::string to_csv(const Dataset& data);

struct StepModel {
  std::vector<double> t;  // k strictly increasing breakpoints
  std::vector<double> a;  // k+1 levels

  void validate() const;  // InvalidArgument
  double operator()(double x) const;
};

// Segment index of x: the number of breakpoints strictly below x.
std::size_t segment_of(const std::vector<double>& t, double x);

// Unnormalized residual sum of squares, n * S_n(t, a).
double sse(const Dataset& data, const StepModel& model);

// Segment means; EmptySegment if a segment holds no observation.
std::vector<double> optimal_levels(const Dataset& data, const std::vector<double>& t);

struct FitResult {
  std::vector<double> tau;
  std::vector<double> alpha;
  double sse = 0.0;
  std::vector<std::size_t> segment_counts;
  std::vector<double> sigma_hat;

  StepModel model() const { return {tau, alpha}; }
};

// Exact minimizer over breakpoints drawn from the distinct x values other
// than the largest, by dynamic programming over segment costs. Among
// minimizers the lexicographically smallest tau is returned.
// TooFewDistinctX when fewer than k+1 distinct x values exist.
FitResult fit_step(const Dataset& data, std::size_t k);

// Fields tau, alpha, sse, segment_counts, sigma_hat as "key = v1,v2,...".
std::string to_text(const FitResult& fit);

// scale * (x - tau), the single formula used for every rescaled coordinate.
inline double rescale(double scale, double x, double tau) { return scale * (x - tau); }

struct RescaledProcess {
  GridFunction joint;                   // Z_n(t_1, ..., t_k)
  std::vector<StepFunction1D> sections; // t_j -> Z_n(0, .., t_j, .., 0)
  // Per axis, the rescaled window (lo, hi] whose observations enter the
  // axis; outside it the section is continued by its boundary value.
  std::vector<OpenInterval> windows;
};

// Z_n(t) = sum_i [(Y_i - g_(tau + t/scale, alpha)(X_i))^2 - (Y_i - g_(tau, alpha)(X_i))^2].
// Axis j only sees observations with x between the midpoints to the
// neighbouring reference breakpoints, which keeps shifted breakpoints
// ordered; on that window Z_n is the sum of its sections. k must be 1..3.
// CollapsedOrder if tau_ref is not strictly increasing.
RescaledProcess rescaled_process(const Dataset& data, const std::vector<double>& tau_ref,
                                 const std::vector<double>& alpha_ref, double scale);

struct CovariateLaw {
  enum class Family { Uniform, Gaussian };
  Family family = Family::Uniform;
  double p1 = 0.0;  // lo or mean
  double p2 = 1.0;  // hi or sd

  double density(double x) const;
  double cdf(double x) const;
  double sample(Engine& rng) const;
};

struct NoiseLaw {
  enum class Family { None, Gaussian, TwoPoint };
  Family family = Family::None;
  double scale = 0.0;  // sd for Gaussian, h for the symmetric two-point law +-h

  double variance() const;
  double sample(Engine& rng) const;
};

// "uniform(lo,hi)", "gaussian(mu,sd)".
CovariateLaw parse_covariate_law(const std::string& text);
// "none", "gaussian(0,sd)", "twopoint(h)".
NoiseLaw parse_noise_law(const std::string& text);
std::string to_string(const CovariateLaw& law);
std::string to_string(const NoiseLaw& law);

struct RegressionModelSpec {
  std::size_t k = 1;
  CovariateLaw x_law;
  NoiseLaw noise;
  std::vector<double> true_tau;
  std::vector<double> true_alpha;
  // m is piecewise polynomial: piece p covers (m_breaks[p-1], m_breaks[p]]
  // and holds coefficients in ascending powers.
  std::vector<double> m_breaks;
  std::vector<std::vector<double>> m_pieces;

  // Regression function equal to the step model g_(tau, alpha).
  static RegressionModelSpec pure_step(std::vector<double> tau, std::vector<double> alpha, CovariateLaw x_law,
                                       NoiseLaw noise);

  double m(double x) const;
  double m_left(double x) const;   // m(x-)
  double m_right(double x) const;  // m(x+)
  // InvalidSpec unless shapes agree, tau is increasing, m jumps at every
  // tau_j and the covariate density is positive there.
  void validate() const;
};

// Keys k, x_law, noise, true_tau, true_alpha and optionally m_breaks,
// m_pieces (pieces separated by ';', coefficients by ',').
RegressionModelSpec regression_model_from_keys(const KeyValueFile& kv);

Dataset synthesize(const RegressionModelSpec& model, std::size_t n, std::uint64_t seed);

// Plug-in limit process for breakpoint j (0-based): both rates equal the
// covariate density at tau_j, right jumps are (Y - a)^2 - (Y - b)^2 with
// Y = m(tau_j+) + eps and left jumps (Y - b)^2 - (Y - a)^2 with
// Y = m(tau_j-) + eps, where (a, b) are the levels on either side. Both are
// affine in eps, so the laws are point, Gaussian or two-point.
// NonpositiveJumpMean if either mean is not strictly positive.
CompoundPoissonSpec derive_limit_spec(const RegressionModelSpec& model, std::size_t j);

// Limit standard deviation of sqrt(n)(alpha_n,i - alpha_i) (0-based i):
// sqrt(Var(Y | X in segment i) / P(X in segment i)), by quadrature.
double limit_sigma(const RegressionModelSpec& model, std::size_t i);

}  // namespace cpargmin
