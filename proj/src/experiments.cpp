#include "cpargmin/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpargmin/argmin.hpp"
#include "cpargmin/error.hpp"
#include "cpargmin/keyvalue.hpp"
#include "cpargmin/normal.hpp"

namespace cpargmin {

namespace {

constexpr std::uint64_t kSaltData = 11;
constexpr std::uint64_t kSaltLimit = 21;
constexpr std::uint64_t kSaltBootstrap = 31;
constexpr std::uint64_t kSaltCoverage = 41;

std::size_t parse_count(const KeyValueFile& kv, const std::string& key, long long fallback) {
  const long long v = kv.has(key) ? kv.require_int(key) : fallback;
  if (v < 0) throw Error(ErrorCode::InvalidSpec, "key '" + key + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

double gamma_of(double rho, std::size_t k) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::OutOfDomain, "rho must lie in (0,1)");
  if (k < 1) throw Error(ErrorCode::OutOfDomain, "k must be at least 1");
  return std::pow(1.0 - rho, 1.0 / static_cast<double>(2 * k + 1));
}

bool Rectangle::contains(const std::vector<double>& tau_true, const std::vector<double>& alpha_true) const {
  for (std::size_t j = 0; j < tau.size(); ++j) {
    if (!tau[j].contains(tau_true[j])) return false;
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i].contains(alpha_true[i])) return false;
  }
  return true;
}

Rectangle build_rectangle(const FitResult& fit, std::size_t n, const std::vector<IntervalBounds>& bounds_tau,
                          const std::vector<IntervalBounds>& bounds_alpha) {
  if (bounds_tau.size() != fit.tau.size() || bounds_alpha.size() != fit.alpha.size()) {
    throw Error(ErrorCode::BadBounds, "bound count does not match the fit");
  }
  if (n < 1) throw Error(ErrorCode::BadBounds, "n must be positive");
  const double nd = static_cast<double>(n);
  const double rn = std::sqrt(nd);
  Rectangle r;
  for (std::size_t j = 0; j < fit.tau.size(); ++j) {
    const auto& b = bounds_tau[j];
    if (!(b.a < b.b)) throw Error(ErrorCode::BadBounds, "tau bounds need a < b");
    r.tau.push_back(OpenInterval{fit.tau[j] - b.b / nd, fit.tau[j] - b.a / nd});
  }
  for (std::size_t i = 0; i < fit.alpha.size(); ++i) {
    const auto& b = bounds_alpha[i];
    if (!(b.a <= b.b)) throw Error(ErrorCode::BadBounds, "alpha bounds need u <= v");
    r.alpha.push_back(Interval{fit.alpha[i] - b.b / rn, fit.alpha[i] - b.a / rn});
  }
  return r;
}

bool SetTuple::tau_event(std::size_t j, double xi) const {
  return closed ? f[j].contains(std::span<const double>(&xi, 1)) : g[j].contains(std::span<const double>(&xi, 1));
}

bool SetTuple::alpha_event(std::size_t i, double aux) const {
  return closed ? b[i].contains(std::span<const double>(&aux, 1))
                : b_open[i].contains(std::span<const double>(&aux, 1));
}

bool SetTuple::holds(const std::vector<double>& xi, const std::vector<double>& aux) const {
  for (std::size_t j = 0; j < xi.size(); ++j) {
    if (!tau_event(j, xi[j])) return false;
  }
  for (std::size_t i = 0; i < aux.size(); ++i) {
    if (!alpha_event(i, aux[i])) return false;
  }
  return true;
}

SetTuple parse_set_tuple(const std::string& name, const std::string& text, std::size_t k) {
  auto parts = split_trimmed(text, ';');
  if (parts.size() != 2 * k + 2) {
    throw Error(ErrorCode::Parse, "set '" + name + "' needs a kind, " + std::to_string(k) + " sets and " +
                                      std::to_string(k + 1) + " boxes");
  }
  SetTuple s;
  s.name = name;
  if (parts[0] == "closed") {
    s.closed = true;
  } else if (parts[0] == "open") {
    s.closed = false;
  } else {
    throw Error(ErrorCode::Parse, "set '" + name + "' must start with closed or open");
  }
  try {
    for (std::size_t p = 1; p < parts.size(); ++p) {
      const bool is_tau = p <= k;
      if (s.closed) {
        (is_tau ? s.f : s.b).push_back(parse_closed_set_1d(parts[p]));
      } else {
        (is_tau ? s.g : s.b_open).push_back(parse_open_set_1d(parts[p]));
      }
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, "set '" + name + "': " + e.what());
  }
  return s;
}

void VerificationConfig::validate() const {
  model.validate();
  if (n_grid.empty()) throw Error(ErrorCode::InvalidSpec, "n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2 * model.k + 2) throw Error(ErrorCode::InvalidSpec, "n_grid entries are too small for k");
    if (i > 0 && !(n_grid[i - 1] < n_grid[i])) throw Error(ErrorCode::InvalidSpec, "n_grid must be increasing");
  }
  if (replications_data < 1000 || replications_limit < 1000) {
    throw Error(ErrorCode::InvalidSpec, "replication counts must be at least 1000");
  }
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::InvalidSpec, "rho must lie in (0,1)");
  if (!(mc_slack > 0.0)) throw Error(ErrorCode::InvalidSpec, "mc_slack must be positive");
  if (rhs_mode == RhsMode::EmpiricalBootstrap && (bootstrap_n < 2 * model.k + 2 || bootstrap_replications < 1000)) {
    throw Error(ErrorCode::InvalidSpec, "empirical-bootstrap needs bootstrap_n and bootstrap_replications >= 1000");
  }
  if (tail_grid.empty() || !std::is_sorted(tail_grid.begin(), tail_grid.end()) || tail_grid.front() > tail_threshold) {
    throw Error(ErrorCode::InvalidSpec, "tail_grid must be sorted with an entry at or below tail_threshold");
  }
  if (!(tail_level >= 0.0 && tail_level <= 1.0)) throw Error(ErrorCode::InvalidSpec, "tail_level must lie in [0,1]");
  if (!(coverage_tolerance >= 0.0)) throw Error(ErrorCode::InvalidSpec, "coverage_tolerance must be nonnegative");
  if (!(product_discrepancy >= 0.0)) throw Error(ErrorCode::InvalidSpec, "product_discrepancy must be nonnegative");
  for (const auto& s : test_sets) {
    const std::size_t nk = s.closed ? s.f.size() : s.g.size();
    const std::size_t nb = s.closed ? s.b.size() : s.b_open.size();
    if (nk != model.k || nb != model.k + 1) throw Error(ErrorCode::InvalidSpec, "set '" + s.name + "' has wrong arity");
  }
}

VerificationConfig parse_verification_config(const std::string& text) {
  auto kv = KeyValueFile::parse(text);
  VerificationConfig c;
  c.model = regression_model_from_keys(kv);
  for (double v : parse_double_list(kv.require("n_grid"))) {
    if (!(v >= 1.0) || v != std::floor(v)) throw Error(ErrorCode::Parse, "n_grid entries must be positive integers");
    c.n_grid.push_back(static_cast<std::size_t>(v));
  }
  c.replications_data = parse_count(kv, "replications_data", -1);
  c.replications_limit = parse_count(kv, "replications_limit", -1);
  c.rho = kv.get_double("rho", c.rho);
  {
    const std::string s = trim_copy(kv.require("master_seed"));
    std::size_t used = 0;
    try {
      if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
      c.master_seed = std::stoull(s, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::Parse, "master_seed must be an unsigned 64-bit integer");
  }
  c.mc_slack = kv.get_double("mc_slack", c.mc_slack);
  const std::string mode = kv.get("rhs_mode").value_or("plugin");
  if (mode == "plugin") {
    c.rhs_mode = RhsMode::Plugin;
  } else if (mode == "empirical-bootstrap") {
    c.rhs_mode = RhsMode::EmpiricalBootstrap;
  } else {
    throw Error(ErrorCode::Parse, "rhs_mode must be plugin or empirical-bootstrap");
  }
  c.bootstrap_n = parse_count(kv, "bootstrap_n", static_cast<long long>(10 * c.n_grid.back()));
  c.bootstrap_replications = parse_count(kv, "bootstrap_replications", static_cast<long long>(c.replications_limit));
  if (kv.has("tail_grid")) c.tail_grid = parse_double_list(kv.require("tail_grid"));
  c.tail_threshold = kv.get_double("tail_threshold", c.tail_threshold);
  c.tail_level = kv.get_double("tail_level", c.tail_level);
  c.coverage_tolerance = kv.get_double("coverage_tolerance", c.coverage_tolerance);
  c.product_discrepancy = kv.get_double("product_discrepancy", c.product_discrepancy);
  for (const auto& key : kv.keys_with_prefix("set.")) {
    c.test_sets.push_back(parse_set_tuple(key.substr(4), kv.require(key), c.model.k));
  }
  c.validate();
  return c;
}

VerificationConfig load_verification_config(const std::string& path) {
  return parse_verification_config(read_file(path));
}

std::vector<EstimatorDraw> estimator_draws(const RegressionModelSpec& model, std::size_t n, std::size_t replications,
                                           std::uint64_t seed, unsigned workers) {
  model.validate();
  const double nd = static_cast<double>(n);
  return parallel_map<EstimatorDraw>(replications, workers, [&](std::size_t r) {
    const Dataset data = synthesize(model, n, substream_seed(seed, r));
    const FitResult fit = fit_step(data, model.k);
    EstimatorDraw d;
    for (std::size_t j = 0; j < model.k; ++j) d.xi.push_back(rescale(nd, fit.tau[j], model.true_tau[j]));
    for (std::size_t i = 0; i <= model.k; ++i) d.aux.push_back(std::sqrt(nd) * (fit.alpha[i] - model.true_alpha[i]));
    d.sigma_hat = fit.sigma_hat;
    return d;
  });
}

double normal_box_probability(const BoxUnion& b, double sigma) {
  if (sigma == 0.0) return BoxUnion(b).contains(std::vector<double>{0.0}) ? 1.0 : 0.0;
  double p = 0.0;
  for (const auto& box : b.boxes()) p += normal_cdf(box[0].hi / sigma) - normal_cdf(box[0].lo / sigma);
  return std::clamp(p, 0.0, 1.0);
}

double normal_box_probability(const OpenBoxUnion& b, double sigma) {
  if (sigma == 0.0) return b.contains(std::vector<double>{0.0}) ? 1.0 : 0.0;
  // Open boxes may overlap; integrate over the union of their closures,
  // which differs from the open union by a null set.
  std::vector<Box> closed;
  for (const auto& box : b.boxes()) closed.push_back(Box{Interval{box[0].lo, box[0].hi}});
  return normal_box_probability(BoxUnion(1, std::move(closed)), sigma);
}

std::vector<std::vector<EstimatorDraw>> draws_for_grid(const VerificationConfig& config, unsigned workers) {
  std::vector<std::vector<EstimatorDraw>> out;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    out.push_back(estimator_draws(config.model, config.n_grid[g], config.replications_data,
                                  substream_seed(config.master_seed, g, kSaltData), workers));
  }
  return out;
}

std::vector<std::vector<ArgminDraw>> limit_draws(const VerificationConfig& config, unsigned workers) {
  std::vector<std::vector<ArgminDraw>> out(config.model.k);
  if (config.rhs_mode == RhsMode::EmpiricalBootstrap) {
    auto boot = estimator_draws(config.model, config.bootstrap_n, config.bootstrap_replications,
                                substream_seed(config.master_seed, 0, kSaltBootstrap), workers);
    for (std::size_t j = 0; j < config.model.k; ++j) {
      for (const auto& d : boot) out[j].push_back(ArgminDraw{BoxUnion::interval(d.xi[j], d.xi[j]), 0});
    }
    return out;
  }
  for (std::size_t j = 0; j < config.model.k; ++j) {
    out[j] = draw_argmin_sets(derive_limit_spec(config.model, j), config.replications_limit,
                              substream_seed(config.master_seed, j, kSaltLimit), workers);
  }
  return out;
}

InequalityReport verify_extended_argmin(const VerificationConfig& config,
                                        const std::vector<std::vector<EstimatorDraw>>& draws_per_n,
                                        const std::vector<std::vector<ArgminDraw>>& limit) {
  const std::size_t k = config.model.k;
  std::vector<double> sigma;
  for (std::size_t i = 0; i <= k; ++i) sigma.push_back(limit_sigma(config.model, i));

  InequalityReport rep;
  for (const auto& s : config.test_sets) {
    // Product of the limit functionals with a delta-method standard error.
    std::vector<FunctionalEstimate> parts;
    for (std::size_t j = 0; j < k; ++j) {
      parts.push_back(s.closed ? estimate_capacity(limit[j], s.f[j]) : estimate_containment(limit[j], s.g[j]));
    }
    double w = 1.0;
    for (std::size_t i = 0; i <= k; ++i) {
      w *= s.closed ? normal_box_probability(s.b[i], sigma[i]) : normal_box_probability(s.b_open[i], sigma[i]);
    }
    double prod = 1.0;
    for (const auto& p : parts) prod *= p.value;
    double var = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double others = 1.0;
      for (std::size_t l = 0; l < k; ++l) {
        if (l != j) others *= parts[l].value;
      }
      var += std::pow(parts[j].std_error * others, 2);
    }
    const double rhs = prod * w;
    const double rhs_se = std::sqrt(var) * w;

    std::size_t violations = 0;
    bool verdict = true;
    for (std::size_t g = 0; g < draws_per_n.size(); ++g) {
      const auto& draws = draws_per_n[g];
      std::size_t hits_count = 0;
      for (const auto& d : draws) hits_count += s.holds(d.xi, d.aux) ? 1 : 0;
      InequalityRow row;
      row.n = config.n_grid[g];
      row.set = s.name;
      row.closed = s.closed;
      row.lhs = FunctionalEstimate::from_count(hits_count, draws.size());
      row.rhs = rhs;
      row.rhs_se = rhs_se;
      const double se = std::sqrt(row.lhs.std_error * row.lhs.std_error + rhs_se * rhs_se);
      row.violated = s.closed ? row.lhs.value > rhs + config.mc_slack * se : row.lhs.value < rhs - config.mc_slack * se;
      if (row.violated) ++violations;
      if (g + 1 == draws_per_n.size()) verdict = !row.violated;
      rep.rows.push_back(row);
    }
    rep.sets.push_back(s.name);
    rep.slack_violations.push_back(violations);
    rep.verdicts.push_back(verdict);
    rep.pass = rep.pass && verdict;
  }
  return rep;
}

InequalityReport verify_extended_argmin(const VerificationConfig& config, unsigned workers) {
  config.validate();
  return verify_extended_argmin(config, draws_for_grid(config, workers), limit_draws(config, workers));
}

TailTable tail_boundedness(const VerificationConfig& config,
                           const std::vector<std::vector<EstimatorDraw>>& draws_per_n) {
  TailTable t;
  std::size_t verdict_index = 0;
  for (std::size_t a = 0; a < config.tail_grid.size(); ++a) {
    if (config.tail_grid[a] <= config.tail_threshold) verdict_index = a;
  }
  for (std::size_t g = 0; g < draws_per_n.size(); ++g) {
    std::vector<double> norms;
    for (const auto& d : draws_per_n[g]) {
      double m = 0.0;
      for (double v : d.xi) m = std::max(m, std::abs(v));
      norms.push_back(m);
    }
    std::sort(norms.begin(), norms.end());
    for (std::size_t a = 0; a < config.tail_grid.size(); ++a) {
      const double level = config.tail_grid[a];
      const auto above = norms.end() - std::upper_bound(norms.begin(), norms.end(), level);
      const double tail = static_cast<double>(above) / static_cast<double>(norms.size());
      t.rows.push_back(TailRow{config.n_grid[g], level, tail});
      if (a == verdict_index) {
        t.verdict_tail.push_back(tail);
        t.verdicts.push_back(tail <= config.tail_level);
        t.pass = t.pass && t.verdicts.back();
      }
    }
  }
  return t;
}

TailTable tail_boundedness(const VerificationConfig& config, unsigned workers) {
  config.validate();
  return tail_boundedness(config, draws_for_grid(config, workers));
}

ProductTable product_form_check(const VerificationConfig& config, const std::vector<EstimatorDraw>& draws) {
  const std::size_t k = config.model.k;
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "product-form check needs k >= 2");
  if (draws.empty()) throw Error(ErrorCode::EmptySamples, "no estimator draws");
  ProductTable t;
  t.n = config.n_grid.back();
  const double m = static_cast<double>(draws.size());
  for (const auto& s : config.test_sets) {
    std::size_t joint = 0;
    std::vector<std::size_t> tau_marg(k, 0), alpha_marg(k + 1, 0);
    for (const auto& d : draws) {
      joint += s.holds(d.xi, d.aux) ? 1 : 0;
      for (std::size_t j = 0; j < k; ++j) tau_marg[j] += s.tau_event(j, d.xi[j]) ? 1 : 0;
      for (std::size_t i = 0; i <= k; ++i) alpha_marg[i] += s.alpha_event(i, d.aux[i]) ? 1 : 0;
    }
    ProductRow row;
    row.set = s.name;
    row.joint = static_cast<double>(joint) / m;
    row.product = 1.0;
    for (auto c : tau_marg) row.product *= static_cast<double>(c) / m;
    for (auto c : alpha_marg) row.product *= static_cast<double>(c) / m;
    row.discrepancy = std::abs(row.joint - row.product);
    row.se_joint = std::sqrt(row.joint * (1.0 - row.joint) / m);
    row.pass = row.discrepancy <= config.product_discrepancy + config.mc_slack * row.se_joint;
    t.max_discrepancy = std::max(t.max_discrepancy, row.discrepancy);
    t.pass = t.pass && row.pass;
    t.rows.push_back(row);
  }
  return t;
}

ProductTable product_form_check(const VerificationConfig& config, unsigned workers) {
  config.validate();
  const std::size_t g = config.n_grid.size() - 1;
  return product_form_check(config, estimator_draws(config.model, config.n_grid[g], config.replications_data,
                                                    substream_seed(config.master_seed, g, kSaltData), workers));
}

CoverageReport coverage_experiment(const VerificationConfig& config, unsigned workers) {
  config.validate();
  const std::size_t k = config.model.k;
  CoverageReport rep;
  rep.n = config.n_grid.back();
  rep.replications = config.replications_data;
  rep.gamma = gamma_of(config.rho, k);
  rep.target = 1.0 - config.rho;
  rep.tolerance = config.coverage_tolerance;
  rep.z = inverse_normal_cdf((rep.gamma + 1.0) / 2.0);
  for (std::size_t j = 0; j < k; ++j) {
    auto samples = sample_extreme_minimizers(derive_limit_spec(config.model, j), config.replications_limit,
                                             substream_seed(config.master_seed, j, kSaltLimit), workers);
    rep.bounds_tau.push_back(choose_interval_bounds(samples, rep.gamma));
  }

  struct Outcome {
    bool covered = false;
    std::vector<double> widths;
  };
  const std::uint64_t base = substream_seed(config.master_seed, 0, kSaltCoverage);
  auto outcomes = parallel_map<Outcome>(rep.replications, workers, [&](std::size_t r) {
    const Dataset data = synthesize(config.model, rep.n, substream_seed(base, r));
    const FitResult fit = fit_step(data, k);
    std::vector<IntervalBounds> ba;
    for (double s : fit.sigma_hat) ba.push_back(IntervalBounds{-rep.z * s, rep.z * s});
    const Rectangle rect = build_rectangle(fit, rep.n, rep.bounds_tau, ba);
    Outcome o;
    o.covered = rect.contains(config.model.true_tau, config.model.true_alpha);
    for (const auto& iv : rect.tau) o.widths.push_back(iv.hi - iv.lo);
    for (const auto& iv : rect.alpha) o.widths.push_back(iv.hi - iv.lo);
    return o;
  });
  std::size_t covered = 0;
  rep.mean_widths.assign(2 * k + 1, 0.0);
  for (const auto& o : outcomes) {
    covered += o.covered ? 1 : 0;
    for (std::size_t c = 0; c < o.widths.size(); ++c) rep.mean_widths[c] += o.widths[c];
  }
  for (double& w : rep.mean_widths) w /= static_cast<double>(rep.replications);
  rep.coverage = static_cast<double>(covered) / static_cast<double>(rep.replications);
  rep.pass = rep.coverage >= rep.target - rep.tolerance;
  return rep;
}

MembershipReport membership_experiment(const RegressionModelSpec& model, std::size_t n, std::size_t replications,
                                       std::uint64_t seed, unsigned workers) {
  model.validate();
  if (model.k > 3) throw Error(ErrorCode::InvalidArgument, "membership needs k <= 3");
  struct Outcome {
    std::vector<double> xi;
    bool member = false;
  };
  const double nd = static_cast<double>(n);
  auto outcomes = parallel_map<Outcome>(replications, workers, [&](std::size_t r) {
    const Dataset data = synthesize(model, n, substream_seed(seed, r));
    const FitResult fit = fit_step(data, model.k);
    const RescaledProcess z = rescaled_process(data, model.true_tau, fit.alpha, nd);
    Outcome o;
    bool inside = true;
    for (std::size_t j = 0; j < model.k; ++j) {
      o.xi.push_back(rescale(nd, fit.tau[j], model.true_tau[j]));
      inside = inside && z.windows[j].lo < o.xi[j] && o.xi[j] <= z.windows[j].hi;
    }
    o.member = inside && argmin_set(z.joint).contains(o.xi);
    return o;
  });
  MembershipReport rep;
  rep.n = n;
  rep.replications = replications;
  for (auto& o : outcomes) {
    rep.members += o.member ? 1 : 0;
    rep.xi.push_back(std::move(o.xi));
    rep.member.push_back(o.member);
  }
  return rep;
}

std::string to_csv(const InequalityReport& r) {
  std::string s = "n,set,kind,lhs,lhs_se,rhs,rhs_se,violated\n";
  for (const auto& row : r.rows) {
    s += std::to_string(row.n) + "," + row.set + "," + (row.closed ? "closed" : "open") + "," + fmt(row.lhs.value) +
         "," + fmt(row.lhs.std_error) + "," + fmt(row.rhs) + "," + fmt(row.rhs_se) + "," +
         (row.violated ? "1" : "0") + "\n";
  }
  return s;
}

std::string to_csv(const TailTable& t) {
  std::string s = "n,a,tail\n";
  for (const auto& row : t.rows) s += std::to_string(row.n) + "," + fmt(row.a) + "," + fmt(row.tail) + "\n";
  return s;
}

std::string to_csv(const ProductTable& t) {
  std::string s = "set,joint,product,discrepancy,se_joint,pass\n";
  for (const auto& row : t.rows) {
    s += row.set + "," + fmt(row.joint) + "," + fmt(row.product) + "," + fmt(row.discrepancy) + "," +
         fmt(row.se_joint) + "," + (row.pass ? "1" : "0") + "\n";
  }
  return s;
}

std::string to_csv(const MembershipReport& r) {
  std::string s = "rep";
  const std::size_t k = r.xi.empty() ? 0 : r.xi.front().size();
  for (std::size_t j = 0; j < k; ++j) s += ",xi_" + std::to_string(j + 1);
  s += ",member\n";
  for (std::size_t i = 0; i < r.xi.size(); ++i) {
    s += std::to_string(i);
    for (double v : r.xi[i]) s += "," + fmt(v);
    s += std::string(",") + (r.member[i] ? "1" : "0") + "\n";
  }
  return s;
}

std::string summary_text(const InequalityReport& r) {
  std::ostringstream os;
  os << "inequality_verdict = " << (r.pass ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    os << "set." << r.sets[i] << " = " << (r.verdicts[i] ? "pass" : "fail")
       << " ; slack_violations = " << r.slack_violations[i] << "\n";
  }
  return os.str();
}

std::string summary_text(const TailTable& t) {
  std::ostringstream os;
  os << "tail_verdict = " << (t.pass ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < t.verdicts.size(); ++i) {
    os << "tail." << i << " = " << fmt(t.verdict_tail[i]) << " ; " << (t.verdicts[i] ? "pass" : "fail") << "\n";
  }
  return os.str();
}

std::string summary_text(const ProductTable& t) {
  std::ostringstream os;
  os << "product_verdict = " << (t.pass ? "pass" : "fail") << "\n"
     << "product_n = " << t.n << "\n"
     << "max_discrepancy = " << fmt(t.max_discrepancy) << "\n";
  return os.str();
}

std::string summary_text(const CoverageReport& r) {
  std::ostringstream os;
  os << "coverage_verdict = " << (r.pass ? "pass" : "fail") << "\n"
     << "n = " << r.n << "\n"
     << "replications = " << r.replications << "\n"
     << "gamma = " << fmt(r.gamma) << "\n"
     << "coverage = " << fmt(r.coverage) << "\n"
     << "target = " << fmt(r.target) << "\n"
     << "tolerance = " << fmt(r.tolerance) << "\n"
     << "z = " << fmt(r.z) << "\n";
  for (std::size_t j = 0; j < r.bounds_tau.size(); ++j) {
    os << "bounds_tau." << j + 1 << " = " << fmt(r.bounds_tau[j].a) << "," << fmt(r.bounds_tau[j].b) << "\n";
  }
  os << "mean_widths = ";
  for (std::size_t c = 0; c < r.mean_widths.size(); ++c) os << (c ? "," : "") << fmt(r.mean_widths[c]);
  os << "\n";
  return os.str();
}

}  // namespace cpargmin
