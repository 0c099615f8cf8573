#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <curvlift/rng.hpp>
#include <curvlift/spaces.hpp>
#include <curvlift/study.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace curvlift;

namespace {

StudyConfig valid_config() {
  StudyConfig cfg;
  cfg.metric_degree = 1;
  cfg.level_begin = 1;
  cfg.level_end = 2;
  return cfg;
}

}  // namespace

TEST_CASE("validate: admissible and inadmissible configurations") {
  CHECK_NOTHROW(validate(valid_config()));
  auto reject = [](auto&& tweak) {
    StudyConfig cfg = valid_config();
    tweak(cfg);
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  };
  reject([](StudyConfig& c) { c.metric_degree = -1; });
  reject([](StudyConfig& c) { c.metric_degree = 9; });
  reject([](StudyConfig& c) { c.lift_offset = -2; });
  reject([](StudyConfig& c) { c.lift_offset = 3; });
  reject([](StudyConfig& c) { c.metric_degree = 0; });  // k + d >= 1
  reject([](StudyConfig& c) { c.lift_offset = -1; });   // d = -1 needs k >= 2
  reject([](StudyConfig& c) { c.level_begin = 3; });    // begin > end
  reject([](StudyConfig& c) { c.level_begin = -1; });
  reject([](StudyConfig& c) { c.level_end = 13; });
  reject([](StudyConfig& c) { c.quad_exactness = 61; });
  reject([](StudyConfig& c) { c.norm_exactness = 1; });

  StudyConfig k0 = valid_config();
  k0.metric_degree = 0;
  k0.lift_offset = 1;
  CHECK_NOTHROW(validate(k0));
  StudyConfig km = valid_config();
  km.metric_degree = 2;
  km.lift_offset = -1;
  CHECK_NOTHROW(validate(km));
}

TEST_CASE("degrees and exactness defaults") {
  StudyConfig cfg = valid_config();
  cfg.metric_degree = 2;
  cfg.lift_offset = 1;
  CHECK(lift_degree(cfg) == 3);
  CHECK(assembly_exactness(cfg) == 2 * 3 + 6);
  cfg.lift_offset = -1;
  CHECK(lift_degree(cfg) == 1);
  CHECK(assembly_exactness(cfg) == 2 * 2 + 6);
  cfg.quad_exactness = 17;
  CHECK(assembly_exactness(cfg) == 17);
}

TEST_CASE("space dimensions: closed forms against constructed spaces") {
  const std::int64_t lag_k1[7] = {4, 9, 25, 81, 289, 1089, 4225};
  for (int level = 0; level <= 6; ++level) CHECK(lagrange_dimension(1, level) == lag_k1[level]);
  const std::int64_t lag_k3[6] = {16, 49, 169, 625, 2401, 9409};
  for (int level = 0; level <= 5; ++level) CHECK(lagrange_dimension(3, level) == lag_k3[level]);
  for (int degree = 1; degree <= 4; ++degree)
    for (int level = 0; level <= 3; ++level) {
      const Mesh mesh = build_structured_square(level);
      CHECK(LagrangeSpace(mesh, degree).n_dofs() == lagrange_dimension(degree, level));
      if (degree <= 3) CHECK(ReggeSpace(mesh, degree).n_dofs() == regge_dimension(degree, level));
    }
  CHECK(regge_dimension(0, 0) == 5);  // edge moments only
}

TEST_CASE("level seeds: deterministic and distinct") {
  CHECK(level_seed(6, 1) == level_seed(6, 1));
  std::vector<std::uint64_t> seen;
  for (std::uint64_t seed : {1, 6})
    for (int level = 0; level <= 5; ++level) seen.push_back(level_seed(seed, level));
  for (size_t i = 0; i < seen.size(); ++i)
    for (size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
}

TEST_CASE("write_csv: exact layout, parseable 17 digit fields") {
  std::vector<ErrorRecord> records(2);
  records[0] = {1, std::sqrt(2.0) / 2, 21, 9, 0.25, 0.5, 0.125, 0.0625, -1};
  records[1] = {2, std::sqrt(2.0) / 4, 65, 25, 0.0625, 0.125, 0.015625, 0.0078125, -1};
  std::ostringstream os;
  write_csv(os, records);
  std::istringstream is(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "level,h,ndof_metric,ndof_lift,err_L2_K,err_L2_Kw,err_Hm1_K,err_Hm1_Kw");
  CHECK(lines[1].substr(0, 2) == "1,");
  CHECK(lines[2].substr(0, 2) == "2,");
  CHECK(lines[3].rfind("# eoc_err_L2_K:", 0) == 0);
  CHECK(lines[4].rfind("# eoc_err_L2_Kw:", 0) == 0);
  CHECK(lines[5].rfind("# eoc_err_Hm1_K:", 0) == 0);
  CHECK(lines[6].rfind("# eoc_err_Hm1_Kw:", 0) == 0);

  // h round trips through the 17 digit format
  const std::string row = lines[1];
  const size_t c0 = row.find(','), c1 = row.find(',', c0 + 1);
  CHECK(std::strtod(row.substr(c0 + 1, c1 - c0 - 1).c_str(), nullptr) == records[0].h);

  // rates: errors quarter per level at h halving -> EOC 2 except the 3 in Hm1_Kw
  CHECK(lines[3].find(" 2") != std::string::npos);
  CHECK(lines[6].rfind("3") != std::string::npos);
}

TEST_CASE("write_csv: empty rate lines for a single record") {
  std::vector<ErrorRecord> records(1);
  records[0] = {3, 0.25, 100, 50, 1e-3, 2e-3, 1e-4, 2e-4, -1};
  std::ostringstream os;
  write_csv(os, records);
  std::istringstream is(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);
  CHECK(lines[2] == "# eoc_err_L2_K:");
}

TEST_CASE("convergence study: deterministic records with the advertised shapes") {
  StudyConfig cfg = valid_config();
  const std::vector<ErrorRecord> a = run_convergence_study(cfg);
  const std::vector<ErrorRecord> b = run_convergence_study(cfg);
  REQUIRE(a.size() == 2);
  std::ostringstream csv_a, csv_b;
  write_csv(csv_a, a);
  write_csv(csv_b, b);
  CHECK(csv_a.str() == csv_b.str());
  for (size_t i = 0; i < a.size(); ++i) {
    const int level = cfg.level_begin + int(i);
    CHECK(a[i].level == level);
    CHECK(a[i].h == std::sqrt(2.0) / (1 << level));
    CHECK(a[i].ndof_metric == regge_dimension(cfg.metric_degree, level));
    CHECK(a[i].ndof_lift == lagrange_dimension(lift_degree(cfg), level));
    CHECK(a[i].err_L2_K > 0);
    CHECK(a[i].err_L2_Kw > 0);
    CHECK(a[i].err_Hm1_K > 0);
    CHECK(a[i].err_Hm1_Kw > 0);
    CHECK(std::isfinite(a[i].err_L2_K));
  }
  CHECK(a[1].err_L2_K < a[0].err_L2_K);
  CHECK(a[1].err_Hm1_Kw < a[0].err_Hm1_Kw);
}

TEST_CASE("convergence study: invalid configuration propagates") {
  StudyConfig cfg = valid_config();
  cfg.lift_offset = 3;
  CHECK_THROWS_AS((void)run_convergence_study(cfg), std::invalid_argument);
}

TEST_CASE("verification suite: all checks green on a small configuration") {
  VerifyOptions options;
  options.metric_degree = 1;
  options.level = 1;
  options.adjointness_trials = 5;
  options.t_points = 12;
  const std::vector<CheckResult> results = run_verification(options);
  REQUIRE(results.size() == 7);
  for (const CheckResult& r : results) {
    INFO(r.name, " residual ", r.residual, " tolerance ", r.tolerance);
    CHECK(r.passed);
    CHECK(r.residual <= r.tolerance);
  }
}
