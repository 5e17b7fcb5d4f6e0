#include "cpargmin/stepfit.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpargmin/error.hpp"
#include "cpargmin/normal.hpp"

namespace cpargmin {

namespace {

std::vector<double> call_args(const std::string& text, const std::string& family) {
  const std::string t = trim_copy(text);
  if (t.size() < family.size() + 2 || t.compare(0, family.size() + 1, family + "(") != 0 || t.back() != ')') {
    return {};
  }
  return parse_double_list(t.substr(family.size() + 1, t.size() - family.size() - 2));
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

double poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += format_double(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

}  // namespace

void Dataset::validate() const {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "x and y differ in length");
  if (x.size() < 2) throw Error(ErrorCode::InvalidArgument, "dataset needs at least two observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error(ErrorCode::InvalidArgument, "non-finite observation");
  }
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    throw Error(ErrorCode::InvalidArgument, "x values are all identical");
  }
}

Dataset parse_dataset_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  bool header = false;
  Dataset d;
  while (std::getline(ss, line)) {
    ++number;
    line = trim_copy(line);
    if (line.empty()) continue;
    if (!header) {
      auto cols = split_trimmed(line, ',');
      if (cols.size() != 2 || cols[0] != "x" || cols[1] != "y") {
        throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": expected header 'x,y'");
      }
      header = true;
      continue;
    }
    auto cols = split_trimmed(line, ',');
    if (cols.size() != 2) throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": expected two columns");
    try {
      double xv = parse_double(cols[0]);
      double yv = parse_double(cols[1]);
      if (!std::isfinite(xv) || !std::isfinite(yv)) throw Error(ErrorCode::Parse, "non-finite value");
      d.x.push_back(xv);
      d.y.push_back(yv);
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "empty CSV: header 'x,y' required");
  if (d.size() < 2) throw Error(ErrorCode::Parse, "CSV holds fewer than two observations");
  return d;
}

Dataset load_dataset_csv(const std::string& path) { return parse_dataset_csv(read_file(path)); }

std::string to_csv(const Dataset& data) {
  std::string s = "x,y\n";
  for (std::size_t i = 0; i < data.size(); ++i) s += format_double(data.x[i]) + "," + format_double(data.y[i]) + "\n";
  return s;
}

void StepModel::validate() const {
  if (a.size() != t.size() + 1) throw Error(ErrorCode::InvalidArgument, "need one more level than breakpoints");
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (!(t[j - 1] < t[j])) throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
  }
}

std::size_t segment_of(const std::vector<double>& t, double x) {
  return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), x) - t.begin());
}

double StepModel::operator()(double x) const { return a[segment_of(t, x)]; }

double sse(const Dataset& data, const StepModel& model) {
  model.validate();
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double r = data.y[i] - model(data.x[i]);
    s += r * r;
  }
  return s;
}

std::vector<double> optimal_levels(const Dataset& data, const std::vector<double>& t) {
  StepModel{t, std::vector<double>(t.size() + 1)}.validate();
  std::vector<double> sum(t.size() + 1, 0.0);
  std::vector<std::size_t> count(t.size() + 1, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto s = segment_of(t, data.x[i]);
    sum[s] += data.y[i];
    ++count[s];
  }
  for (std::size_t s = 0; s < sum.size(); ++s) {
    if (count[s] == 0) throw Error(ErrorCode::EmptySegment, "segment " + std::to_string(s + 1) + " is empty");
    sum[s] /= static_cast<double>(count[s]);
  }
  return sum;
}

FitResult fit_step(const Dataset& data, std::size_t k) {
  data.validate();
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return data.x[i] < data.x[j]; });

  const double mean = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(n);
  // Per distinct x: value and prefix sums of centred y and y^2.
  std::vector<double> gx;
  std::vector<double> c{0.0}, s1{0.0}, s2{0.0};
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::size_t i = order[idx];
    const double v = data.y[i] - mean;
    if (gx.empty() || data.x[i] != gx.back()) {
      gx.push_back(data.x[i]);
      c.push_back(c.back());
      s1.push_back(s1.back());
      s2.push_back(s2.back());
    }
    c.back() += 1.0;
    s1.back() += v;
    s2.back() += v * v;
  }
  const std::size_t g = gx.size();
  if (g < k + 1) {
    throw Error(ErrorCode::TooFewDistinctX,
                std::to_string(g) + " distinct x values cannot support " + std::to_string(k) + " breakpoints");
  }
  auto cost = [&](std::size_t p, std::size_t q) {
    const double cnt = c[q] - c[p];
    const double s = s1[q] - s1[p];
    return std::max(0.0, (s2[q] - s2[p]) - s * s / cnt);
  };

  // best[j][p]: minimal cost of groups [p, g) split into j+1 segments.
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(g + 1, kInf));
  for (std::size_t p = 0; p < g; ++p) best[0][p] = cost(p, g);
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t p = 0; p + j < g; ++p) {
      double b = kInf;
      for (std::size_t q = p + 1; q + j <= g; ++q) b = std::min(b, cost(p, q) + best[j - 1][q]);
      best[j][p] = b;
    }
  }
  const double tol = 1e-10 * (1.0 + s2[g]);
  FitResult fit;
  std::size_t p = 0;
  for (std::size_t j = k; j >= 1; --j) {
    for (std::size_t q = p + 1; q + j <= g; ++q) {
      if (cost(p, q) + best[j - 1][q] <= best[j][p] + tol) {
        fit.tau.push_back(gx[q - 1]);
        p = q;
        break;
      }
    }
  }
  fit.alpha = optimal_levels(data, fit.tau);
  fit.sse = sse(data, fit.model());

  fit.segment_counts.assign(k + 1, 0);
  std::vector<double> sum(k + 1, 0.0), sq(k + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = segment_of(fit.tau, data.x[i]);
    ++fit.segment_counts[s];
    const double r = data.y[i] - fit.alpha[s];
    sq[s] += r * r;
  }
  for (std::size_t s = 0; s <= k; ++s) {
    const double cnt = static_cast<double>(fit.segment_counts[s]);
    const double var = fit.segment_counts[s] > 1 ? sq[s] / (cnt - 1.0) : 0.0;
    fit.sigma_hat.push_back(std::sqrt(var / (cnt / static_cast<double>(n))));
  }
  return fit;
}

std::string to_text(const FitResult& fit) {
  std::ostringstream os;
  os << "tau = " << join(fit.tau) << "\n"
     << "alpha = " << join(fit.alpha) << "\n"
     << "sse = " << format_double(fit.sse) << "\n"
     << "segment_counts = " << join(fit.segment_counts) << "\n"
     << "sigma_hat = " << join(fit.sigma_hat) << "\n";
  return os.str();
}

RescaledProcess rescaled_process(const Dataset& data, const std::vector<double>& tau_ref,
                                 const std::vector<double>& alpha_ref, double scale) {
  const std::size_t k = tau_ref.size();
  if (k < 1 || k > 3) throw Error(ErrorCode::InvalidArgument, "rescaled process needs 1 to 3 breakpoints");
  if (alpha_ref.size() != k + 1) throw Error(ErrorCode::InvalidArgument, "need k+1 reference levels");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  for (std::size_t j = 1; j < k; ++j) {
    if (!(tau_ref[j - 1] < tau_ref[j])) {
      throw Error(ErrorCode::CollapsedOrder, "reference breakpoints are not strictly increasing");
    }
  }

  RescaledProcess out{GridFunction({{}}, {0.0}), {}, {}};
  std::vector<std::vector<double>> axes;
  std::vector<std::vector<double>> section_values;
  for (std::size_t j = 0; j < k; ++j) {
    const double lo = j == 0 ? -kInf : 0.5 * (tau_ref[j - 1] + tau_ref[j]);
    const double hi = j + 1 == k ? kInf : 0.5 * (tau_ref[j] + tau_ref[j + 1]);
    const double a = alpha_ref[j];
    const double b = alpha_ref[j + 1];
    std::vector<std::pair<double, double>> pts;  // (position, contribution)
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double x = data.x[i];
      if (!(x > lo && x <= hi)) continue;
      const double p = rescale(scale, x, tau_ref[j]);
      const double y = data.y[i];
      const double ra = (y - a) * (y - a);
      const double rb = (y - b) * (y - b);
      pts.emplace_back(p, p > 0.0 ? ra - rb : rb - ra);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> bps;
    std::vector<double> contrib;
    for (const auto& [p, v] : pts) {
      if (bps.empty() || bps.back() != p) {
        bps.push_back(p);
        contrib.push_back(0.0);
      }
      contrib.back() += v;
    }
    // Cell c spans [bps[c-1], bps[c]).
    const std::size_t m = bps.size();
    std::vector<double> vals(m + 1, 0.0);
    const std::size_t first_pos =
        static_cast<std::size_t>(std::upper_bound(bps.begin(), bps.end(), 0.0) - bps.begin());
    double acc = 0.0;
    for (std::size_t c = first_pos + 1; c <= m; ++c) {
      acc += contrib[c - 1];
      vals[c] = acc;
    }
    acc = 0.0;
    for (std::size_t c = first_pos; c-- > 0;) {
      acc += contrib[c];
      vals[c] = acc;
    }
    const double wlo = std::isinf(lo) ? -kInf : rescale(scale, lo, tau_ref[j]);
    const double whi = std::isinf(hi) ? kInf : rescale(scale, hi, tau_ref[j]);
    out.windows.push_back(OpenInterval{wlo, whi});
    out.sections.emplace_back(bps, vals);
    axes.push_back(std::move(bps));
    section_values.push_back(std::move(vals));
  }

  std::size_t total = 1;
  for (const auto& v : section_values) total *= v.size();
  std::vector<double> cells(total, 0.0);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t f = 0; f < total; ++f) {
    double v = 0.0;
    for (std::size_t j = 0; j < k; ++j) v += section_values[j][idx[j]];
    cells[f] = v;
    for (std::size_t j = k; j-- > 0;) {
      if (++idx[j] < section_values[j].size()) break;
      idx[j] = 0;
    }
  }
  out.joint = GridFunction(std::move(axes), std::move(cells));
  return out;
}

double CovariateLaw::density(double x) const {
  if (family == Family::Uniform) return (x >= p1 && x <= p2) ? 1.0 / (p2 - p1) : 0.0;
  const double z = (x - p1) / p2;
  return std::exp(-0.5 * z * z) / (p2 * std::sqrt(2.0 * M_PI));
}

double CovariateLaw::cdf(double x) const {
  if (family == Family::Uniform) return std::clamp((x - p1) / (p2 - p1), 0.0, 1.0);
  return normal_cdf((x - p1) / p2);
}

double CovariateLaw::sample(Engine& rng) const {
  if (family == Family::Uniform) {
    std::uniform_real_distribution<double> u(p1, p2);
    return u(rng);
  }
  std::normal_distribution<double> nd(p1, p2);
  return nd(rng);
}

double NoiseLaw::variance() const { return family == Family::None ? 0.0 : scale * scale; }

double NoiseLaw::sample(Engine& rng) const {
  switch (family) {
    case Family::None: return 0.0;
    case Family::Gaussian: {
      std::normal_distribution<double> nd(0.0, scale);
      return nd(rng);
    }
    case Family::TwoPoint: {
      std::bernoulli_distribution coin(0.5);
      return coin(rng) ? scale : -scale;
    }
  }
  return 0.0;
}

CovariateLaw parse_covariate_law(const std::string& text) {
  const std::string t = trim_copy(text);
  CovariateLaw law;
  std::vector<double> p;
  if (starts_with(t, "uniform(")) {
    law.family = CovariateLaw::Family::Uniform;
    p = call_args(t, "uniform");
    if (p.size() != 2 || !(p[0] < p[1])) throw Error(ErrorCode::InvalidSpec, "uniform(lo,hi) needs lo < hi");
  } else if (starts_with(t, "gaussian(")) {
    law.family = CovariateLaw::Family::Gaussian;
    p = call_args(t, "gaussian");
    if (p.size() != 2 || !(p[1] > 0.0)) throw Error(ErrorCode::InvalidSpec, "gaussian(mu,sd) needs sd > 0");
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown covariate law '" + t + "'");
  }
  if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw Error(ErrorCode::InvalidSpec, "covariate law is not finite");
  law.p1 = p[0];
  law.p2 = p[1];
  return law;
}

NoiseLaw parse_noise_law(const std::string& text) {
  const std::string t = trim_copy(text);
  NoiseLaw law;
  if (t == "none") return law;
  if (starts_with(t, "gaussian(")) {
    auto p = call_args(t, "gaussian");
    if (p.size() != 2 || p[0] != 0.0 || !(p[1] >= 0.0) || !std::isfinite(p[1])) {
      throw Error(ErrorCode::InvalidSpec, "noise gaussian(0,sd) must be centred with sd >= 0");
    }
    law.family = NoiseLaw::Family::Gaussian;
    law.scale = p[1];
  } else if (starts_with(t, "twopoint(")) {
    auto p = call_args(t, "twopoint");
    if (p.size() != 1 || !(p[0] >= 0.0) || !std::isfinite(p[0])) {
      throw Error(ErrorCode::InvalidSpec, "noise twopoint(h) needs h >= 0");
    }
    law.family = NoiseLaw::Family::TwoPoint;
    law.scale = p[0];
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown noise law '" + t + "'");
  }
  return law;
}

std::string to_string(const CovariateLaw& law) {
  return std::string(law.family == CovariateLaw::Family::Uniform ? "uniform(" : "gaussian(") + format_double(law.p1) +
         "," + format_double(law.p2) + ")";
}

std::string to_string(const NoiseLaw& law) {
  switch (law.family) {
    case NoiseLaw::Family::None: return "none";
    case NoiseLaw::Family::Gaussian: return "gaussian(0," + format_double(law.scale) + ")";
    case NoiseLaw::Family::TwoPoint: return "twopoint(" + format_double(law.scale) + ")";
  }
  return "none";
}

RegressionModelSpec RegressionModelSpec::pure_step(std::vector<double> tau, std::vector<double> alpha,
                                                   CovariateLaw x_law, NoiseLaw noise) {
  RegressionModelSpec s;
  s.k = tau.size();
  s.x_law = x_law;
  s.noise = noise;
  s.m_breaks = tau;
  for (double a : alpha) s.m_pieces.push_back({a});
  s.true_tau = std::move(tau);
  s.true_alpha = std::move(alpha);
  return s;
}

double RegressionModelSpec::m(double x) const { return poly(m_pieces[segment_of(m_breaks, x)], x); }

double RegressionModelSpec::m_left(double x) const {
  return poly(m_pieces[segment_of(m_breaks, x)], x);
}

double RegressionModelSpec::m_right(double x) const {
  auto s = static_cast<std::size_t>(std::upper_bound(m_breaks.begin(), m_breaks.end(), x) - m_breaks.begin());
  return poly(m_pieces[s], x);
}

void RegressionModelSpec::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidSpec, "k must be at least 1");
  if (true_tau.size() != k || true_alpha.size() != k + 1) {
    throw Error(ErrorCode::InvalidSpec, "true_tau needs k entries and true_alpha k+1");
  }
  for (std::size_t j = 1; j < k; ++j) {
    if (!(true_tau[j - 1] < true_tau[j])) throw Error(ErrorCode::InvalidSpec, "true_tau must be strictly increasing");
  }
  for (std::size_t j = 1; j < m_breaks.size(); ++j) {
    if (!(m_breaks[j - 1] < m_breaks[j])) throw Error(ErrorCode::InvalidSpec, "m_breaks must be strictly increasing");
  }
  if (m_pieces.size() != m_breaks.size() + 1) throw Error(ErrorCode::InvalidSpec, "m needs one more piece than breaks");
  for (const auto& p : m_pieces) {
    if (p.empty()) throw Error(ErrorCode::InvalidSpec, "empty polynomial piece");
  }
  for (double t : true_tau) {
    if (m_left(t) == m_right(t)) throw Error(ErrorCode::InvalidSpec, "m must jump at every true breakpoint");
    if (!(x_law.density(t) > 0.0)) throw Error(ErrorCode::InvalidSpec, "covariate density vanishes at a breakpoint");
  }
}

RegressionModelSpec regression_model_from_keys(const KeyValueFile& kv) {
  RegressionModelSpec s;
  const long long k = kv.require_int("k");
  if (k < 1) throw Error(ErrorCode::InvalidSpec, "k must be at least 1");
  s.k = static_cast<std::size_t>(k);
  s.x_law = parse_covariate_law(kv.require("x_law"));
  s.noise = parse_noise_law(kv.require("noise"));
  s.true_tau = parse_double_list(kv.require("true_tau"));
  s.true_alpha = parse_double_list(kv.require("true_alpha"));
  if (kv.has("m_breaks") != kv.has("m_pieces")) {
    throw Error(ErrorCode::InvalidSpec, "m_breaks and m_pieces must be given together");
  }
  if (kv.has("m_breaks")) {
    const std::string breaks = trim_copy(kv.require("m_breaks"));
    if (!breaks.empty()) s.m_breaks = parse_double_list(breaks);
    for (const auto& piece : split_trimmed(kv.require("m_pieces"), ';')) s.m_pieces.push_back(parse_double_list(piece));
  } else {
    s.m_breaks = s.true_tau;
    for (double a : s.true_alpha) s.m_pieces.push_back({a});
  }
  s.validate();
  return s;
}

Dataset synthesize(const RegressionModelSpec& model, std::size_t n, std::uint64_t seed) {
  model.validate();
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "sample size must be at least 2");
  Engine rng = make_engine(seed);
  Dataset d;
  d.x.reserve(n);
  d.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = model.x_law.sample(rng);
    const double e = model.noise.sample(rng);
    d.x.push_back(x);
    d.y.push_back(model.m(x) + e);
  }
  return d;
}

CompoundPoissonSpec derive_limit_spec(const RegressionModelSpec& model, std::size_t j) {
  model.validate();
  if (j >= model.k) throw Error(ErrorCode::InvalidArgument, "breakpoint index out of range");
  const double tau = model.true_tau[j];
  const double a = model.true_alpha[j];
  const double b = model.true_alpha[j + 1];
  const double rate = model.x_law.density(tau);

  // Jump = slope * (c + eps) + const with c the one-sided limit of m.
  auto law = [&](double c, double slope) {
    const double mean = slope * (2.0 * c - a - b);
    const double spread = 2.0 * std::abs(slope) * model.noise.scale;
    switch (model.noise.family) {
      case NoiseLaw::Family::Gaussian:
        if (model.noise.scale > 0.0) return JumpLaw::gaussian(mean, spread);
        return JumpLaw::point(mean);
      case NoiseLaw::Family::TwoPoint:
        if (model.noise.scale > 0.0) return JumpLaw::two_point(mean + spread, mean - spread, 0.5);
        return JumpLaw::point(mean);
      case NoiseLaw::Family::None: break;
    }
    return JumpLaw::point(mean);
  };

  CompoundPoissonSpec spec;
  spec.rate_right = rate;
  spec.rate_left = rate;
  spec.jump_right = law(model.m_right(tau), b - a);
  spec.jump_left = law(model.m_left(tau), a - b);
  if (!(spec.jump_right.mean() > 0.0) || !(spec.jump_left.mean() > 0.0)) {
    throw Error(ErrorCode::NonpositiveJumpMean,
                "limit jumps at breakpoint " + std::to_string(j + 1) + " do not have positive mean");
  }
  spec.window_initial = 10.0 / rate;
  spec.window_growth = 2.0;
  spec.max_window = 1e6 / rate;
  spec.validate();
  return spec;
}

double limit_sigma(const RegressionModelSpec& model, std::size_t i) {
  model.validate();
  if (i > model.k) throw Error(ErrorCode::InvalidArgument, "segment index out of range");
  double lo = i == 0 ? -kInf : model.true_tau[i - 1];
  double hi = i == model.k ? kInf : model.true_tau[i];
  const double mass = model.x_law.cdf(hi) - model.x_law.cdf(lo);
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidSpec, "segment has zero covariate mass");

  if (model.x_law.family == CovariateLaw::Family::Uniform) {
    lo = std::max(lo, model.x_law.p1);
    hi = std::min(hi, model.x_law.p2);
  } else {
    lo = std::max(lo, model.x_law.p1 - 12.0 * model.x_law.p2);
    hi = std::min(hi, model.x_law.p1 + 12.0 * model.x_law.p2);
  }
  std::vector<double> cuts{lo};
  for (double b : model.m_breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);

  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    if (!(cuts[c] < cuts[c + 1])) continue;
    // Sample m strictly inside the piece so endpoint conventions do not matter.
    const auto& piece = model.m_pieces[segment_of(model.m_breaks, 0.5 * (cuts[c] + cuts[c + 1]))];
    m1 += Quad::integrate([&](double x) { return poly(piece, x) * model.x_law.density(x); }, cuts[c], cuts[c + 1], 15,
                          1e-12);
    m2 += Quad::integrate([&](double x) { double v = poly(piece, x); return v * v * model.x_law.density(x); },
                          cuts[c], cuts[c + 1], 15, 1e-12);
  }
  m1 /= mass;
  m2 /= mass;
  const double var = std::max(0.0, m2 - m1 * m1) + model.noise.variance();
  return std::sqrt(var / mass);
}

}  // namespace cpargmin
