#include "cpargmin/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cpargmin/box_union.hpp"
#include "cpargmin/compound_poisson.hpp"
#include "cpargmin/error.hpp"
#include "cpargmin/experiments.hpp"
#include "cpargmin/keyvalue.hpp"
#include "cpargmin/stepfit.hpp"

namespace cpargmin {

namespace {

namespace fs = std::filesystem;

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewDistinctX:
    case ErrorCode::EmptySegment:
    case ErrorCode::InvalidArgument:
    case ErrorCode::CollapsedOrder:
      return kExitShape;
    case ErrorCode::TooManyRedraws:
      return kExitVerdict;
    default:
      return kExitInput;
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw OutputError("cannot write '" + path.string() + "'");
}

// Creates the directory, removes a stale DONE marker and writes the manifest.
fs::path begin_run(const RunManifest& m) {
  fs::path dir(m.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + m.output_dir + "': " + ec.message());
  fs::remove(dir / "DONE", ec);
  write_file(dir / "manifest.txt", to_text(m));
  return dir;
}

void finish_run(const fs::path& dir) { write_file(dir / "DONE", "done\n"); }

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

std::string to_text(const RunManifest& m) {
  std::ostringstream os;
  os << "command = " << m.command << "\n"
     << "config_path = " << m.config_path << "\n"
     << "output_dir = " << m.output_dir << "\n"
     << "master_seed = " << m.master_seed << "\n"
     << "tool_version = " << m.tool_version << "\n";
  return os.str();
}

int run_fit(const std::string& data_path, long long k, const std::string& out, std::ostream& err) {
  return guarded(err, [&] {
    if (k < 0) throw Error(ErrorCode::Parse, "--k must be nonnegative");
    const Dataset data = load_dataset_csv(data_path);
    const auto dir = begin_run(RunManifest{"fit", data_path, out, 0});
    const FitResult fit = fit_step(data, static_cast<std::size_t>(k));
    write_file(dir / "fit.txt", to_text(fit));
    std::string res = "x,y,fitted,residual\n";
    const StepModel model = fit.model();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double f = model(data.x[i]);
      res += format_double(data.x[i]) + "," + format_double(data.y[i]) + "," + format_double(f) + "," +
             format_double(data.y[i] - f) + "\n";
    }
    write_file(dir / "residuals.csv", res);
    finish_run(dir);
    return static_cast<int>(kExitOk);
  });
}

int run_simulate_limit(const std::string& spec_path, long long reps, std::uint64_t seed, const std::string& out,
                       unsigned workers, std::ostream& err) {
  return guarded(err, [&] {
    if (reps < 1) throw Error(ErrorCode::Parse, "--reps must be at least 1");
    const auto spec = parse_compound_poisson_spec(read_file(spec_path));
    const auto dir = begin_run(RunManifest{"simulate-limit", spec_path, out, seed});
    const auto samples = sample_extreme_minimizers(spec, static_cast<std::size_t>(reps), seed, workers);
    write_file(dir / "samples.csv", samples_to_csv(samples));
    finish_run(dir);
    return static_cast<int>(kExitOk);
  });
}

int run_capacity(const std::string& spec_path, const std::string& set, bool open, long long reps, std::uint64_t seed,
                 unsigned workers, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (reps < 1) throw Error(ErrorCode::Parse, "--reps must be at least 1");
    const auto spec = parse_compound_poisson_spec(read_file(spec_path));
    const auto n = static_cast<std::size_t>(reps);
    FunctionalEstimate e = open ? estimate_containment(spec, parse_open_set_1d(set), n, seed, workers)
                                : estimate_capacity(spec, parse_closed_set_1d(set), n, seed, workers);
    out << (open ? "containment" : "capacity") << " = " << format_double(e.value) << "\n"
        << "std_error = " << format_double(e.std_error) << "\n"
        << "replications = " << e.replications << "\n";
    return static_cast<int>(kExitOk);
  });
}

int run_coverage(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
                 unsigned workers, std::ostream& err) {
  return guarded(err, [&] {
    auto config = load_verification_config(config_path);
    if (seed) config.master_seed = *seed;
    const auto dir = begin_run(RunManifest{"coverage", config_path, out, config.master_seed});
    const auto report = coverage_experiment(config, workers);
    write_file(dir / "coverage.txt", summary_text(report));
    finish_run(dir);
    return static_cast<int>(report.pass ? kExitOk : kExitVerdict);
  });
}

int run_verify(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
               unsigned workers, std::ostream& err) {
  return guarded(err, [&] {
    auto config = load_verification_config(config_path);
    if (seed) config.master_seed = *seed;
    const auto dir = begin_run(RunManifest{"verify", config_path, out, config.master_seed});
    const auto draws = draws_for_grid(config, workers);
    const auto ineq = verify_extended_argmin(config, draws, limit_draws(config, workers));
    const auto tail = tail_boundedness(config, draws);
    std::string summary = summary_text(ineq) + summary_text(tail);
    bool pass = ineq.pass && tail.pass;
    write_file(dir / "inequality.csv", to_csv(ineq));
    write_file(dir / "tail.csv", to_csv(tail));
    if (config.model.k >= 2) {
      const auto product = product_form_check(config, draws.back());
      write_file(dir / "product.csv", to_csv(product));
      summary += summary_text(product);
      pass = pass && product.pass;
    }
    summary = std::string("verdict = ") + (pass ? "pass" : "fail") + "\n" + summary;
    write_file(dir / "summary.txt", summary);
    finish_run(dir);
    return static_cast<int>(pass ? kExitOk : kExitVerdict);
  });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least-squares step fits and compound Poisson argmin limits"};
  app.require_subcommand(1);
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* fit = app.add_subcommand("fit", "Fit a k-jump step function to CSV data");
  std::string data_path;
  long long k = 0;
  fit->add_option("--data", data_path, "CSV with header x,y")->required();
  fit->add_option("--k", k, "Number of breakpoints")->required();
  fit->add_option("--out", out_dir, "Output directory")->required();

  auto* sim = app.add_subcommand("simulate-limit", "Sample smallest/largest minimizers of a limit process");
  std::string spec_path;
  long long reps = 0;
  sim->add_option("--spec", spec_path, "Compound Poisson spec file")->required();
  sim->add_option("--reps", reps, "Replications")->required();
  sim->add_option("--seed", seed, "Master seed")->required();
  sim->add_option("--out", out_dir, "Output directory")->required();
  sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* cap = app.add_subcommand("capacity", "Estimate the capacity (or containment) functional of A(Z)");
  std::string set;
  bool open = false;
  cap->add_option("--spec", spec_path, "Compound Poisson spec file")->required();
  cap->add_option("--set", set, "Closed set, or open set with --open")->required();
  cap->add_option("--reps", reps, "Replications")->required();
  cap->add_option("--seed", seed, "Master seed")->required();
  cap->add_flag("--open", open, "Estimate P(A(Z) inside the open set)");
  cap->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string config_path;
  auto* cov = app.add_subcommand("coverage", "Coverage of the asymptotic confidence rectangle");
  cov->add_option("--config", config_path, "Verification config")->required();
  cov->add_option("--out", out_dir, "Output directory")->required();
  auto* cov_seed = cov->add_option("--seed", seed, "Override master_seed");
  cov->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "Check limit inequalities, tails and product form");
  ver->add_option("--config", config_path, "Verification config")->required();
  ver->add_option("--out", out_dir, "Output directory")->required();
  auto* ver_seed = ver->add_option("--seed", seed, "Override master_seed");
  ver->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (fit->parsed()) return run_fit(data_path, k, out_dir, err);
  if (sim->parsed()) return run_simulate_limit(spec_path, reps, seed, out_dir, workers, err);
  if (cap->parsed()) return run_capacity(spec_path, set, open, reps, seed, workers, out, err);
  if (cov->parsed()) {
    return run_coverage(config_path, out_dir, cov_seed->count() ? std::optional(seed) : std::nullopt, workers, err);
  }
  return run_verify(config_path, out_dir, ver_seed->count() ? std::optional(seed) : std::nullopt, workers, err);
}

}  // namespace cpargmin
