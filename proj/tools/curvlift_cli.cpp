#include <curvlift/study.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

namespace {

struct LevelRange {
  int begin = 1;
  int end = 4;
};

bool parse_int(std::string_view text, int& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_levels(const std::string& text, LevelRange& out) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) {
    if (!parse_int(text, out.begin)) return false;
    out.end = out.begin;
    return true;
  }
  return parse_int(std::string_view(text).substr(0, pos), out.begin) &&
         parse_int(std::string_view(text).substr(pos + 1), out.end);
}

int run_converge(const curvlift::StudyConfig& config, const std::string& out_path) {
  const auto records = curvlift::run_convergence_study(config);
  if (out_path.empty()) {
    curvlift::write_csv(std::cout, records);
    return 0;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  curvlift::write_csv(os, records);
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + out_path);
  return 0;
}

int run_verify(const curvlift::VerifyOptions& base, const LevelRange& range) {
  bool all_passed = true;
  for (int level = range.begin; level <= range.end; ++level) {
    curvlift::VerifyOptions options = base;
    options.level = level;
    for (const auto& check : curvlift::run_verification(options)) {
      std::printf("[%s] %-30s residual %.3e  tol %.0e  (k=%d, level=%d)\n",
                  check.passed ? "PASS" : "FAIL", check.name.c_str(), check.residual,
                  check.tolerance, options.metric_degree, level);
      all_passed = all_passed && check.passed;
    }
  }
  return all_passed ? 0 : 1;
}

int run_dofs(int metric_degree, int lift_deg, const LevelRange& range) {
  std::printf("level,ndof_metric,ndof_lift\n");
  for (int level = range.begin; level <= range.end; ++level)
    std::printf("%d,%lld,%lld\n", level,
                static_cast<long long>(curvlift::regge_dimension(metric_degree, level)),
                static_cast<long long>(curvlift::lagrange_dimension(lift_deg, level)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifted distributional Gauss curvature of Regge metrics"};
  app.require_subcommand(1);

  int metric_degree = 1;
  int lift_offset = 0;
  std::string levels_text = "1:4";
  std::uint64_t seed = 6;
  bool no_perturb = false;
  int quad_order = 0;
  std::string out_path;
  int trials = 50;
  int t_points = 20;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--metric-degree", metric_degree, "Regge metric degree k");
    cmd->add_option("--lift-offset", lift_offset, "lifting degree offset d, degree = k + d");
    cmd->add_option("--levels", levels_text, "refinement level range A:B (inclusive)");
    cmd->add_option("--seed", seed, "seed for mesh perturbation and random checks");
    cmd->add_flag("--no-perturb", no_perturb, "keep the structured mesh unperturbed");
    cmd->add_option("--quad-order", quad_order, "assembly quadrature exactness override");
  };

  CLI::App* converge = app.add_subcommand("converge", "run the benchmark convergence study");
  add_common(converge);
  converge->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify);
  verify->add_option("--trials", trials, "number of random adjointness trials");
  verify->add_option("--t-points", t_points, "Gauss points for the representation t-integral");

  CLI::App* dofs = app.add_subcommand("dofs", "print space dimensions per level");
  add_common(dofs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  LevelRange range;
  if (!parse_levels(levels_text, range)) {
    std::fprintf(stderr, "error: cannot parse --levels '%s' (expected A:B)\n",
                 levels_text.c_str());
    return 2;
  }

  curvlift::StudyConfig config;
  config.metric_degree = metric_degree;
  config.lift_offset = lift_offset;
  config.level_begin = range.begin;
  config.level_end = range.end;
  config.seed = seed;
  config.perturb = !no_perturb;
  config.quad_exactness = quad_order;

  try {
    curvlift::validate(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (converge->parsed()) return run_converge(config, out_path);
    if (verify->parsed()) {
      curvlift::VerifyOptions options;
      options.metric_degree = metric_degree;
      options.seed = seed;
      options.adjointness_trials = trials;
      options.t_points = t_points;
      return run_verify(options, range);
    }
    return run_dofs(metric_degree, curvlift::lift_degree(config), range);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
