#include "cpargmin/compound_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cpargmin/argmin.hpp"
#include "cpargmin/error.hpp"
#include "cpargmin/keyvalue.hpp"

namespace cpargmin {

namespace {

constexpr int kMaxAttempts = 1000;
// Bound on the probability that one side dips below the current infimum
// after the window closes.
constexpr double kUndershootLevel = 1e-12;

std::vector<double> parse_call(const std::string& text, std::string& name) {
  const std::string t = trim_copy(text);
  auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    throw Error(ErrorCode::Parse, "expected family(params), got '" + t + "'");
  }
  name = trim_copy(t.substr(0, open));
  return parse_double_list(t.substr(open + 1, t.size() - open - 2));
}

// Draws (gap, jump) pairs on one side of the origin until past `horizon`.
struct ArrivalStream {
  Engine rng;
  double rate;
  const JumpLaw* law;
  std::vector<double> times;
  std::vector<double> jumps;

  void extend_past(double horizon) {
    std::exponential_distribution<double> gap(rate);
    while (times.empty() || times.back() <= horizon) {
      double t = (times.empty() ? 0.0 : times.back()) + gap(rng);
      times.push_back(t);
      jumps.push_back(law->sample(rng));
    }
  }

  std::size_t count_within(double horizon) const {
    return static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), horizon) - times.begin());
  }
};

StepFunction1D build_path(const ArrivalStream& right, const ArrivalStream& left, double a) {
  const std::size_t nr = right.count_within(a);
  const std::size_t nl = left.count_within(a);
  std::vector<double> bps;
  std::vector<double> vals;
  bps.reserve(nr + nl);
  vals.reserve(nr + nl + 1);

  // Left cell [-L_i, -L_{i-1}) carries sum_{l < i} J_l^-; the outermost cell
  // carries the full sum.
  std::vector<double> left_cum(nl + 1, 0.0);
  for (std::size_t i = 0; i < nl; ++i) left_cum[i + 1] = left_cum[i] + left.jumps[i];
  vals.push_back(left_cum[nl]);
  for (std::size_t i = nl; i-- > 0;) {
    bps.push_back(-left.times[i]);
    vals.push_back(left_cum[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < nr; ++i) {
    acc += right.jumps[i];
    bps.push_back(right.times[i]);
    vals.push_back(acc);
  }
  return StepFunction1D(std::move(bps), std::move(vals));
}

bool strictly_inside(const BoxUnion& set, double a) {
  if (set.empty() || !set.bounded()) return false;
  return set.boxes().front()[0].lo > -a && set.boxes().back()[0].hi < a;
}

}  // namespace

double JumpLaw::mean() const {
  switch (family) {
    case Family::Point: return params[0];
    case Family::TwoPoint: return params[2] * params[0] + (1.0 - params[2]) * params[1];
    case Family::Gaussian: return params[0];
    case Family::ShiftedExponential: return params[0] + params[1];
  }
  return 0.0;
}

double JumpLaw::sample(Engine& rng) const {
  switch (family) {
    case Family::Point: return params[0];
    case Family::TwoPoint: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return u(rng) < params[2] ? params[0] : params[1];
    }
    case Family::Gaussian: {
      std::normal_distribution<double> n(params[0], params[1]);
      return n(rng);
    }
    case Family::ShiftedExponential: {
      std::exponential_distribution<double> e(1.0 / params[1]);
      return params[0] + e(rng);
    }
  }
  return 0.0;
}

void JumpLaw::validate() const {
  std::size_t want = 0;
  switch (family) {
    case Family::Point: want = 1; break;
    case Family::TwoPoint: want = 3; break;
    case Family::Gaussian: want = 2; break;
    case Family::ShiftedExponential: want = 2; break;
  }
  if (params.size() != want) throw Error(ErrorCode::InvalidSpec, "jump law has wrong number of parameters");
  for (double p : params) {
    if (!std::isfinite(p)) throw Error(ErrorCode::InvalidSpec, "jump law parameters must be finite");
  }
  if (family == Family::TwoPoint && !(params[2] >= 0.0 && params[2] <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec, "two-point probability must lie in [0,1]");
  }
  if (family == Family::Gaussian && !(params[1] >= 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "gaussian sd must be nonnegative");
  }
  if (family == Family::ShiftedExponential && !(params[1] > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "exponential scale must be positive");
  }
}

double JumpLaw::lundberg_exponent() const {
  const double inf = std::numeric_limits<double>::infinity();
  // log E exp(-theta J) for theta > 0.
  std::function<double(double)> psi;
  switch (family) {
    case Family::Point:
      return params[0] >= 0.0 ? inf : 0.0;
    case Family::Gaussian:
      if (params[1] == 0.0) return params[0] >= 0.0 ? inf : 0.0;
      return 2.0 * params[0] / (params[1] * params[1]);
    case Family::TwoPoint: {
      const double v1 = params[0], v2 = params[1], p = params[2];
      if ((p == 0.0 || v1 >= 0.0) && (p == 1.0 || v2 >= 0.0)) return inf;
      psi = [=](double th) {
        const double m = std::max(-th * v1, -th * v2);
        return m + std::log(p * std::exp(-th * v1 - m) + (1.0 - p) * std::exp(-th * v2 - m));
      };
      break;
    }
    case Family::ShiftedExponential: {
      const double shift = params[0], scale = params[1];
      if (shift >= 0.0) return inf;
      psi = [=](double th) { return -th * shift - std::log1p(th * scale); };
      break;
    }
  }
  if (!(mean() > 0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (psi(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) <= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

namespace {

double undershoot_margin(const JumpLaw& law) {
  const double theta = law.lundberg_exponent();
  return std::isinf(theta) ? 0.0 : -std::log(kUndershootLevel) / theta;
}

}  // namespace

JumpLaw parse_jump_law(const std::string& text) {
  std::string name;
  auto p = parse_call(text, name);
  JumpLaw law;
  if (name == "point") {
    law.family = JumpLaw::Family::Point;
  } else if (name == "twopoint") {
    law.family = JumpLaw::Family::TwoPoint;
  } else if (name == "gaussian") {
    law.family = JumpLaw::Family::Gaussian;
  } else if (name == "shiftexp") {
    law.family = JumpLaw::Family::ShiftedExponential;
  } else {
    throw Error(ErrorCode::Parse, "unknown jump family '" + name + "'");
  }
  law.params = std::move(p);
  law.validate();
  return law;
}

std::string to_string(const JumpLaw& law) {
  const char* name = "point";
  switch (law.family) {
    case JumpLaw::Family::Point: name = "point"; break;
    case JumpLaw::Family::TwoPoint: name = "twopoint"; break;
    case JumpLaw::Family::Gaussian: name = "gaussian"; break;
    case JumpLaw::Family::ShiftedExponential: name = "shiftexp"; break;
  }
  std::string s = std::string(name) + "(";
  for (std::size_t i = 0; i < law.params.size(); ++i) {
    if (i) s += ',';
    s += format_double(law.params[i]);
  }
  return s + ")";
}

void CompoundPoissonSpec::validate() const {
  if (!(rate_right > 0.0) || !(rate_left > 0.0) || !std::isfinite(rate_right) || !std::isfinite(rate_left)) {
    throw Error(ErrorCode::InvalidSpec, "rates must be positive and finite");
  }
  jump_right.validate();
  jump_left.validate();
  if (!(jump_right.mean() > 0.0) || !(jump_left.mean() > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "jump laws must have strictly positive mean");
  }
  if (!(window_initial > 0.0) || !(window_growth > 1.0) || !(max_window >= window_initial) ||
      !std::isfinite(max_window)) {
    throw Error(ErrorCode::InvalidSpec, "window policy needs 0 < initial <= max and growth > 1");
  }
}

CompoundPoissonSpec parse_compound_poisson_spec(const std::string& text) {
  auto kv = KeyValueFile::parse(text);
  CompoundPoissonSpec spec;
  spec.rate_right = kv.require_double("rate_right");
  spec.rate_left = kv.require_double("rate_left");
  spec.jump_right = parse_jump_law(kv.require("jump_right"));
  spec.jump_left = parse_jump_law(kv.require("jump_left"));
  spec.window_initial = kv.get_double("window_initial", spec.window_initial);
  spec.window_growth = kv.get_double("window_growth", spec.window_growth);
  spec.max_window = kv.get_double("max_window", spec.max_window);
  spec.validate();
  return spec;
}

std::string to_text(const CompoundPoissonSpec& spec) {
  std::ostringstream os;
  os << "rate_right = " << format_double(spec.rate_right) << "\n"
     << "rate_left = " << format_double(spec.rate_left) << "\n"
     << "jump_right = " << to_string(spec.jump_right) << "\n"
     << "jump_left = " << to_string(spec.jump_left) << "\n"
     << "window_initial = " << format_double(spec.window_initial) << "\n"
     << "window_growth = " << format_double(spec.window_growth) << "\n"
     << "max_window = " << format_double(spec.max_window) << "\n";
  return os.str();
}

Trajectory simulate_trajectory(const CompoundPoissonSpec& spec, std::uint64_t seed) {
  spec.validate();
  ArrivalStream right{make_engine(substream_seed(seed, 0, 1)), spec.rate_right, &spec.jump_right, {}, {}};
  ArrivalStream left{make_engine(substream_seed(seed, 0, 2)), spec.rate_left, &spec.jump_left, {}, {}};

  const double margin_right = undershoot_margin(spec.jump_right);
  const double margin_left = undershoot_margin(spec.jump_left);
  double a = spec.window_initial;
  while (true) {
    right.extend_past(a);
    left.extend_past(a);
    Trajectory tr;
    tr.path = build_path(right, left, a);
    tr.argmin = argmin_set(tr.path);
    tr.window = a;
    const double floor = infimum(tr.path);
    const bool settled = strictly_inside(tr.argmin, a) && tr.path(a) - floor >= margin_right &&
                         tr.path(-a) - floor >= margin_left;
    if (settled || a >= spec.max_window) {
      tr.boundary = !settled;
      tr.right_arrivals.assign(right.times.begin(), right.times.begin() + right.count_within(a));
      tr.left_arrivals.assign(left.times.begin(), left.times.begin() + left.count_within(a));
      return tr;
    }
    a = std::min(a * spec.window_growth, spec.max_window);
  }
}

std::vector<ArgminDraw> draw_argmin_sets(const CompoundPoissonSpec& spec, std::size_t replications,
                                         std::uint64_t seed, unsigned workers) {
  spec.validate();
  if (replications < 1) throw Error(ErrorCode::InvalidArgument, "need at least one replication");
  auto draws = parallel_map<ArgminDraw>(replications, workers, [&](std::size_t r) {
    for (int q = 0; q < kMaxAttempts; ++q) {
      auto tr = simulate_trajectory(spec, substream_seed(seed, r, static_cast<std::uint64_t>(q)));
      if (!tr.boundary) return ArgminDraw{std::move(tr.argmin), q};
    }
    return ArgminDraw{BoxUnion(1), -1};
  });
  std::size_t redrawn = 0;
  for (const auto& d : draws) {
    if (d.redraws < 0) throw Error(ErrorCode::TooManyRedraws, "a replication never fit inside max_window");
    if (d.redraws > 0) ++redrawn;
  }
  if (redrawn * 100 > replications) {
    throw Error(ErrorCode::TooManyRedraws,
                std::to_string(redrawn) + " of " + std::to_string(replications) + " replications exhausted max_window");
  }
  return draws;
}

std::vector<MinimizerSample> sample_extreme_minimizers(const CompoundPoissonSpec& spec, std::size_t replications,
                                                       std::uint64_t seed, unsigned workers) {
  auto draws = draw_argmin_sets(spec, replications, seed, workers);
  std::vector<MinimizerSample> out;
  out.reserve(draws.size());
  for (const auto& d : draws) {
    out.push_back(MinimizerSample{sargmin(d.set)[0], largmin(d.set)[0], false, d.redraws});
  }
  return out;
}

FunctionalEstimate FunctionalEstimate::from_count(std::size_t successes, std::size_t replications) {
  FunctionalEstimate e;
  e.replications = replications;
  e.value = static_cast<double>(successes) / static_cast<double>(replications);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(replications));
  return e;
}

FunctionalEstimate estimate_capacity(const std::vector<ArgminDraw>& draws, const BoxUnion& e) {
  if (draws.empty()) throw Error(ErrorCode::EmptySamples, "no draws");
  std::size_t n = 0;
  for (const auto& d : draws) n += hits(d.set, e) ? 1 : 0;
  return FunctionalEstimate::from_count(n, draws.size());
}

FunctionalEstimate estimate_containment(const std::vector<ArgminDraw>& draws, const OpenBoxUnion& g) {
  if (draws.empty()) throw Error(ErrorCode::EmptySamples, "no draws");
  std::size_t n = 0;
  for (const auto& d : draws) n += contained_in_open(d.set, g) ? 1 : 0;
  return FunctionalEstimate::from_count(n, draws.size());
}

FunctionalEstimate estimate_capacity(const CompoundPoissonSpec& spec, const BoxUnion& e, std::size_t replications,
                                     std::uint64_t seed, unsigned workers) {
  return estimate_capacity(draw_argmin_sets(spec, replications, seed, workers), e);
}

FunctionalEstimate estimate_containment(const CompoundPoissonSpec& spec, const OpenBoxUnion& g,
                                        std::size_t replications, std::uint64_t seed, unsigned workers) {
  return estimate_containment(draw_argmin_sets(spec, replications, seed, workers), g);
}

IntervalBounds choose_interval_bounds(const std::vector<MinimizerSample>& samples, double gamma) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "no minimizer samples");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::OutOfDomain, "gamma must lie in (0,1)");
  const std::size_t m = samples.size();
  std::vector<double> lo, hi;
  lo.reserve(m);
  hi.reserve(m);
  for (const auto& s : samples) {
    lo.push_back(s.xi_min);
    hi.push_back(s.xi_max);
  }
  std::sort(lo.begin(), lo.end());
  std::sort(hi.begin(), hi.end());
  auto r = static_cast<std::size_t>(std::floor((1.0 - gamma) / 2.0 * static_cast<double>(m)));
  r = std::clamp<std::size_t>(r, 1, m);
  const double s_r = lo[r - 1];
  const double t_r = hi[m - r];
  return IntervalBounds{s_r - 1e-9 * std::max(1.0, std::abs(s_r)), t_r + 1e-9 * std::max(1.0, std::abs(t_r))};
}

double joint_frequency(const std::vector<MinimizerSample>& samples, const IntervalBounds& bounds) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "no minimizer samples");
  std::size_t n = 0;
  for (const auto& s : samples) n += (s.xi_min > bounds.a && s.xi_max < bounds.b) ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(samples.size());
}

std::string samples_to_csv(const std::vector<MinimizerSample>& samples) {
  std::string s = "rep,xi_min,xi_max,redraws\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    s += std::to_string(i) + "," + format_double(samples[i].xi_min) + "," + format_double(samples[i].xi_max) + "," +
         std::to_string(samples[i].redraws) + "\n";
  }
  return s;
}

}  // namespace cpargmin
