#ifndef CURVLIFT_STUDY_HPP
#define CURVLIFT_STUDY_HPP

#include <curvlift/norms.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace curvlift {

/// Configuration of a benchmark convergence run. The lifting degree is
/// metric_degree + lift_offset.
struct StudyConfig {
  int metric_degree = 1;  // k, the Regge interpolation degree
  int lift_offset = 0;    // d in {-1, 0, 1, 2}
  int level_begin = 1;
  int level_end = 4;
  std::uint64_t seed = 6;  // the pinned experiment seed
  bool perturb = true;
  int quad_exactness = 0;   // 0 picks the default 2 max(k, k+d) + 6
  int norm_exactness = 20;  // error norms and H^-1 right-hand sides
};

/// Throws std::invalid_argument on violated constraints: k in [0, 8],
/// d in {-1, 0, 1, 2}, k + d >= 1 (so k = 0 needs d >= 1), d = -1 only for
/// k >= 2, and 0 <= level_begin <= level_end <= 12.
void validate(const StudyConfig& config);

int lift_degree(const StudyConfig& config);
int assembly_exactness(const StudyConfig& config);

/// One row of the convergence table. h is the nominal unperturbed mesh size
/// sqrt(2) 2^-level; dof counts are full space dimensions, constrained dofs
/// included.
struct ErrorRecord {
  int level = 0;
  double h = 0;
  std::int64_t ndof_metric = 0;
  std::int64_t ndof_lift = 0;
  double err_L2_K = 0;
  double err_L2_Kw = 0;
  double err_Hm1_K = 0;
  double err_Hm1_Kw = 0;
  double err_H1_K = -1;  // optional; negative when not computed
};

/// Per-level perturbation seed, a SplitMix64-style mix of (seed, level).
std::uint64_t level_seed(std::uint64_t seed, int level);

/// Closed-form space dimensions on the structured level-l mesh.
std::int64_t lagrange_dimension(int degree, int level);
std::int64_t regge_dimension(int degree, int level);

/// Runs the benchmark convergence study; one record per level, deterministic
/// for a fixed config.
std::vector<ErrorRecord> run_convergence_study(const StudyConfig& config);

/// CSV table: fixed header, one row per record at 17 significant digits, then
/// four `# eoc_<column>: ...` comment lines with the pairwise rates.
void write_csv(std::ostream& os, const std::vector<ErrorRecord>& records);

struct VerifyOptions {
  int metric_degree = 1;
  int level = 1;
  std::uint64_t seed = 6;
  int adjointness_trials = 50;
  int t_points = 20;
};

struct CheckResult {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
};

/// Verification suites: adjointness of the distributional pairings on random
/// inputs, the integral representation of the curvature error, the
/// Gauss-Bonnet audit, flat-metric exactness, and interpolant moment
/// preservation. One result per check.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace curvlift

#endif
