#pragma once

// Monte Carlo harnesses comparing the finite-n behaviour of the least-squares
// step estimator against its limit laws: hit/containment inequalities, tail
// boundedness of n(tau_n - tau), confidence-rectangle coverage and
// asymptotic independence of the coordinates.
//
// Randomness: data replication r at grid position g uses
// substream_seed(substream_seed(master, g, 11), r); limit draws for
// breakpoint j use substream_seed(master, j, 21). Every reduction runs in
// replication order, so results do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cpargmin/box_union.hpp"
#include "cpargmin/compound_poisson.hpp"
#include "cpargmin/stepfit.hpp"

namespace cpargmin {

// (1 - rho)^(1/(2k+1)); OutOfDomain unless 0 < rho < 1 and k >= 1.
double gamma_of(double rho, std::size_t k);

struct Rectangle {
  std::vector<OpenInterval> tau;
  std::vector<Interval> alpha;

  bool contains(const std::vector<double>& tau_true, const std::vector<double>& alpha_true) const;
};

// tau_j in (tau_n,j - b_j/n, tau_n,j - a_j/n), alpha_i in
// [alpha_n,i - v_i/sqrt(n), alpha_n,i - u_i/sqrt(n)]. BadBounds unless a < b
// and u <= v.
Rectangle build_rectangle(const FitResult& fit, std::size_t n, const std::vector<IntervalBounds>& bounds_tau,
                          const std::vector<IntervalBounds>& bounds_alpha);

// One test-set tuple: closed sets F_j with closed boxes B_i, or open sets
// G_j with open boxes B_i. B_i applies to sqrt(n)(alpha_n,i - alpha_i).
struct SetTuple {
  std::string name;
  bool closed = true;
  std::vector<BoxUnion> f;      // closed tuples
  std::vector<BoxUnion> b;
  std::vector<OpenBoxUnion> g;  // open tuples
  std::vector<OpenBoxUnion> b_open;

  bool holds(const std::vector<double>& xi, const std::vector<double>& aux) const;
  bool tau_event(std::size_t j, double xi) const;
  bool alpha_event(std::size_t i, double aux) const;
};

// "closed|open ; F_1 ; ... ; F_k ; B_1 ; ... ; B_{k+1}" with the set syntax
// of parse_closed_set_1d / parse_open_set_1d.
SetTuple parse_set_tuple(const std::string& name, const std::string& text, std::size_t k);

enum class RhsMode { Plugin, EmpiricalBootstrap };

struct VerificationConfig {
  RegressionModelSpec model;
  std::vector<std::size_t> n_grid;
  std::size_t replications_data = 1000;
  std::size_t replications_limit = 1000;
  double rho = 0.1;
  std::vector<SetTuple> test_sets;
  std::uint64_t master_seed = 1;
  double mc_slack = 2.0;
  RhsMode rhs_mode = RhsMode::Plugin;
  std::size_t bootstrap_n = 0;
  std::size_t bootstrap_replications = 0;
  std::vector<double> tail_grid{0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  double tail_threshold = 20.0;
  double tail_level = 0.05;
  double coverage_tolerance = 0.03;
  double product_discrepancy = 0.03;

  void validate() const;  // InvalidSpec
};

// Model keys (see regression_model_from_keys) plus n_grid,
// replications_data, replications_limit, rho, master_seed, mc_slack,
// rhs_mode, bootstrap_n, bootstrap_replications, tail_grid, tail_threshold,
// tail_level, coverage_tolerance, product_discrepancy and set.<name> tuples.
VerificationConfig parse_verification_config(const std::string& text);
VerificationConfig load_verification_config(const std::string& path);

struct EstimatorDraw {
  std::vector<double> xi;   // n (tau_n - tau)
  std::vector<double> aux;  // sqrt(n) (alpha_n - alpha)
  std::vector<double> sigma_hat;
};

std::vector<EstimatorDraw> estimator_draws(const RegressionModelSpec& model, std::size_t n, std::size_t replications,
                                           std::uint64_t seed, unsigned workers = 1);

// P(W_i in B) for W_i ~ N(0, sigma^2); sigma = 0 gives the point mass at 0.
double normal_box_probability(const BoxUnion& b, double sigma);
double normal_box_probability(const OpenBoxUnion& b, double sigma);

struct InequalityRow {
  std::size_t n = 0;
  std::string set;
  bool closed = true;
  FunctionalEstimate lhs;
  double rhs = 0.0;
  double rhs_se = 0.0;
  bool violated = false;
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  std::vector<std::string> sets;
  std::vector<std::size_t> slack_violations;  // per set, over all n
  std::vector<bool> verdicts;                 // per set, at the largest n
  bool pass = true;
};

struct TailRow {
  std::size_t n = 0;
  double a = 0.0;
  double tail = 0.0;
};

struct TailTable {
  std::vector<TailRow> rows;
  std::vector<double> verdict_tail;  // per n, at the largest a <= threshold
  std::vector<bool> verdicts;
  bool pass = true;
};

struct ProductRow {
  std::string set;
  double joint = 0.0;
  double product = 0.0;
  double discrepancy = 0.0;
  double se_joint = 0.0;
  bool pass = true;
};

struct ProductTable {
  std::size_t n = 0;
  std::vector<ProductRow> rows;
  double max_discrepancy = 0.0;
  bool pass = true;
};

struct CoverageReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  double gamma = 0.0;
  double coverage = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::vector<IntervalBounds> bounds_tau;
  double z = 0.0;                   // quantile (gamma + 1)/2 of N(0,1)
  std::vector<double> mean_widths;  // tau coordinates then alpha coordinates
  bool pass = true;
};

struct MembershipReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t members = 0;
  std::vector<std::vector<double>> xi;
  std::vector<bool> member;
};

// The limit draws A(Z^(j)) per breakpoint j; bootstrap mode replaces them by
// the singletons {n*(tau_n*,j - tau_j)} at n* = bootstrap_n.
std::vector<std::vector<ArgminDraw>> limit_draws(const VerificationConfig& config, unsigned workers = 1);

InequalityReport verify_extended_argmin(const VerificationConfig& config,
                                        const std::vector<std::vector<EstimatorDraw>>& draws_per_n,
                                        const std::vector<std::vector<ArgminDraw>>& limit);
InequalityReport verify_extended_argmin(const VerificationConfig& config, unsigned workers = 1);

TailTable tail_boundedness(const VerificationConfig& config,
                           const std::vector<std::vector<EstimatorDraw>>& draws_per_n);
TailTable tail_boundedness(const VerificationConfig& config, unsigned workers = 1);

// Uses the largest n; InvalidArgument unless k >= 2.
ProductTable product_form_check(const VerificationConfig& config, const std::vector<EstimatorDraw>& draws);
ProductTable product_form_check(const VerificationConfig& config, unsigned workers = 1);

CoverageReport coverage_experiment(const VerificationConfig& config, unsigned workers = 1);

// Checks n(tau_n - tau) in argmin_set(Z_n) with Z_n built at the true tau
// and the fitted levels, replication by replication.
MembershipReport membership_experiment(const RegressionModelSpec& model, std::size_t n, std::size_t replications,
                                       std::uint64_t seed, unsigned workers = 1);

std::vector<std::vector<EstimatorDraw>> draws_for_grid(const VerificationConfig& config, unsigned workers = 1);

std::string to_csv(const InequalityReport& r);
std::string to_csv(const TailTable& t);
std::string to_csv(const ProductTable& t);
std::string to_csv(const MembershipReport& r);
std::string summary_text(const InequalityReport& r);
std::string summary_text(const TailTable& t);
std::string summary_text(const ProductTable& t);
std::string summary_text(const CoverageReport& r);

}  // namespace cpargmin
