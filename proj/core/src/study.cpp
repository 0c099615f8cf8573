#include <curvlift/study.hpp>

#include <curvlift/analytic.hpp>
#include <curvlift/quadrature.hpp>
#include <curvlift/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace curvlift {

void validate(const StudyConfig& config) {
  const int k = config.metric_degree;
  const int d = config.lift_offset;
  if (k < 0 || k > 8) throw std::invalid_argument("metric degree must be in [0, 8]");
  if (d < -1 || d > 2) throw std::invalid_argument("lift offset must be in {-1, 0, 1, 2}");
  if (k + d < 1)
    throw std::invalid_argument(
        "lifting degree k + d must be >= 1 (k = 0 needs a positive lift offset)");
  if (d == -1 && k < 2) throw std::invalid_argument("lift offset -1 requires metric degree >= 2");
  if (config.level_begin < 0 || config.level_end > 12 ||
      config.level_begin > config.level_end)
    throw std::invalid_argument("levels must satisfy 0 <= begin <= end <= 12");
  if (config.quad_exactness < 0 || config.quad_exactness > 60)
    throw std::invalid_argument("quadrature exactness override must be in [0, 60]");
  if (config.norm_exactness < 2 || config.norm_exactness > 60)
    throw std::invalid_argument("norm exactness must be in [2, 60]");
}

int lift_degree(const StudyConfig& config) { return config.metric_degree + config.lift_offset; }

int assembly_exactness(const StudyConfig& config) {
  if (config.quad_exactness > 0) return config.quad_exactness;
  return 2 * std::max(config.metric_degree, lift_degree(config)) + 6;
}

std::uint64_t level_seed(std::uint64_t seed, int level) {
  SplitMix64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(level + 1));
  return rng.next();
}

std::int64_t lagrange_dimension(int degree, int level) {
  const std::int64_t n = std::int64_t{1} << level;
  const std::int64_t side = degree * n + 1;
  return side * side;
}

std::int64_t regge_dimension(int degree, int level) {
  const std::int64_t n = std::int64_t{1} << level;
  const std::int64_t edges = 3 * n * n + 2 * n;
  const std::int64_t triangles = 2 * n * n;
  return (degree + 1) * edges + 3 * degree * (degree + 1) / 2 * triangles;
}

std::vector<ErrorRecord> run_convergence_study(const StudyConfig& config) {
  validate(config);
  const int k = config.metric_degree;
  const int r = lift_degree(config);
  const int ex = assembly_exactness(config);
  const AnalyticMetric ghat = benchmark_metric();

  std::vector<ErrorRecord> records;
  for (int level = config.level_begin; level <= config.level_end; ++level) try {
    Mesh mesh = build_structured_square(level);
    if (config.perturb) perturb_interior(mesh, level_seed(config.seed, level));

    const ReggeSpace R(mesh, k);
    const VectorXd gcoeffs = R.interpolate([&](const Vec2& x) { return ghat.jet(x).v; });
    const MetricField g_h = regge_metric_field(R, gcoeffs);
    const LagrangeSpace V(mesh, r);
    const VectorXd K = lift_curvature(V, g_h, ghat, ex);

    const ElemScalar err_K = [&](int t, const Vec2& xhat) {
      const ElementMap map = element_map(mesh, t);
      const Vec2 x = map.origin + map.F * xhat;
      return lagrange_eval(V, K, t, xhat, map, 0).v - ghat.gauss(x);
    };
    const ElemScalar err_Kw = [&](int t, const Vec2& xhat) {
      const ElementMap map = element_map(mesh, t);
      const Vec2 x = map.origin + map.F * xhat;
      const double dens_h = volume_density(regge_eval(R, gcoeffs, t, xhat, map, 0).v);
      return lagrange_eval(V, K, t, xhat, map, 0).v * dens_h -
             ghat.gauss(x) * volume_density(ghat.jet(x).v);
    };

    ErrorRecord rec;
    rec.level = level;
    rec.h = mesh.h_nominal;
    rec.ndof_metric = R.n_dofs();
    rec.ndof_lift = V.n_dofs();
    rec.err_L2_K = l2_norm(mesh, err_K, config.norm_exactness);
    rec.err_L2_Kw = l2_norm(mesh, err_Kw, config.norm_exactness);
    rec.err_Hm1_K = hminus1_norm(mesh, err_K, r + 2, config.norm_exactness);
    rec.err_Hm1_Kw = hminus1_norm(mesh, err_Kw, r + 2, config.norm_exactness);
    records.push_back(rec);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error("level " + std::to_string(level) + ": " + e.what());
  }
  return records;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ErrorRecord>& records) {
  if (records.empty()) throw std::invalid_argument("write_csv: no records");
  os << "level,h,ndof_metric,ndof_lift,err_L2_K,err_L2_Kw,err_Hm1_K,err_Hm1_Kw\n";
  for (const auto& r : records) {
    os << r.level << ',' << fmt17(r.h) << ',' << r.ndof_metric << ',' << r.ndof_lift << ','
       << fmt17(r.err_L2_K) << ',' << fmt17(r.err_L2_Kw) << ',' << fmt17(r.err_Hm1_K) << ','
       << fmt17(r.err_Hm1_Kw) << '\n';
  }
  std::vector<double> hs;
  hs.reserve(records.size());
  for (const auto& r : records) hs.push_back(r.h);
  const std::pair<const char*, double ErrorRecord::*> columns[4] = {
      {"err_L2_K", &ErrorRecord::err_L2_K},
      {"err_L2_Kw", &ErrorRecord::err_L2_Kw},
      {"err_Hm1_K", &ErrorRecord::err_Hm1_K},
      {"err_Hm1_Kw", &ErrorRecord::err_Hm1_Kw}};
  for (const auto& [name, member] : columns) {
    os << "# eoc_" << name << ":";
    if (records.size() >= 2) {
      std::vector<double> errs;
      errs.reserve(records.size());
      for (const auto& r : records) errs.push_back(r.*member);
      for (double rate : eoc(errs, hs)) os << ' ' << fmt17(rate);
    }
    os << '\n';
  }
}

namespace {

VectorXd random_coefficients(SplitMix64& rng, int n, double amplitude) {
  VectorXd c(n);
  for (int i = 0; i < n; ++i) c(i) = amplitude * rng.symmetric();
  return c;
}

// sup of |sigma| over a coarse per-element sample; used to rescale random
// coefficient draws to a prescribed field magnitude
double regge_field_sup(const ReggeSpace& R, const VectorXd& coeffs) {
  const Mesh& mesh = R.mesh();
  const TriangleRule sample = triangle_rule(10);
  double sup = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    for (int q = 0; q < sample.size(); ++q)
      sup = std::max(sup,
                     regge_eval(R, coeffs, t, sample.points.row(q).transpose(), map, 0).v.norm());
  }
  return sup;
}

CheckResult adjointness_check(const Mesh& mesh, int k, std::uint64_t seed, int trials) {
  const ReggeSpace R(mesh, k);
  const LagrangeSpace V(mesh, std::max(k, 1));
  const int exactness = 30;
  const VectorXd identity_coeffs =
      R.interpolate([](const Vec2&) { return Mat2::Identity(); });

  SplitMix64 rng(seed);
  double worst = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // rescale the draws so the metric stays well inside the SPD region
    VectorXd gc = random_coefficients(rng, R.n_dofs(), 1.0);
    gc *= 0.3 / regge_field_sup(R, gc);
    gc += identity_coeffs;
    VectorXd sc = random_coefficients(rng, R.n_dofs(), 1.0);
    sc /= regge_field_sup(R, sc);
    const VectorXd uc = random_coefficients(rng, V.n_dofs(), 1.0);
    const MetricField g = regge_metric_field(R, gc);
    const MetricField sigma_m = regge_metric_field(R, sc);
    const SymTensorField sigma{sigma_m.jet};
    const ScalarField u = lagrange_scalar_field(V, uc);
    const double lhs = distributional_inc(mesh, g, sigma, u, exactness);
    const double rhs = distributional_rotrot(mesh, g, u, sigma, exactness);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return {"adjointness", worst, 1e-10, worst <= 1e-10};
}

CheckResult error_representation_suite(const Mesh& mesh, int k, std::uint64_t seed,
                                       int t_points) {
  const AnalyticMetric ghat = benchmark_metric();
  const int r = std::max(k, 1);
  const ReggeSpace R(mesh, k);
  const LagrangeSpace V(mesh, r);
  const VectorXd gcoeffs = R.interpolate([&](const Vec2& x) { return ghat.jet(x).v; });
  const MetricField g_h = regge_metric_field(R, gcoeffs);

  SplitMix64 rng(seed);
  double worst = 0;
  for (int trial = 0; trial < 3; ++trial) {
    VectorXd uc = random_coefficients(rng, V.n_dofs(), 1.0);
    for (int i = 0; i < V.n_dofs(); ++i)
      if (V.boundary_mask()[i]) uc(i) = 0.0;
    const auto [lhs, rhs] = error_representation_check(mesh, ghat, g_h, V, uc, t_points, 30);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-30));
  }
  return {"error_representation", worst, 1e-8, worst <= 1e-8};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const int k = options.metric_degree;
  const int level = options.level;
  if (k < 0 || k > 8) throw std::invalid_argument("metric degree must be in [0, 8]");
  if (level < 0 || level > 12) throw std::invalid_argument("level must be in [0, 12]");

  Mesh mesh = build_structured_square(level);
  perturb_interior(mesh, level_seed(options.seed, level));
  const AnalyticMetric ghat = benchmark_metric();

  std::vector<CheckResult> out;
  out.push_back(adjointness_check(mesh, k, options.seed, options.adjointness_trials));
  out.push_back(error_representation_suite(mesh, k, options.seed + 1, options.t_points));

  const ReggeSpace R(mesh, k);
  const VectorXd gcoeffs = R.interpolate([&](const Vec2& x) { return ghat.jet(x).v; });
  {
    const double total = gauss_bonnet_audit(mesh, regge_metric_field(R, gcoeffs), 20);
    const double res = std::abs(total - 2.0 * std::numbers::pi);
    out.push_back({"gauss_bonnet", res, 1e-9, res <= 1e-9});
  }
  {
    const AnalyticMetric flat = flat_metric();
    const VectorXd fc = R.interpolate([&](const Vec2& x) { return flat.jet(x).v; });
    const MetricField g_flat = regge_metric_field(R, fc);
    const LagrangeSpace V(mesh, std::max(k, 1));
    const int ex = 2 * std::max(k, 1) + 6;
    const VectorXd F =
        assemble_gauss_functional(V, g_flat, ex) - assemble_neumann_functional(V, flat, ex);
    double res_f = 0;
    for (int i = 0; i < V.n_dofs(); ++i)
      if (!V.dirichlet_mask()[i]) res_f = std::max(res_f, std::abs(F(i)));
    out.push_back({"flat_functional", res_f, 1e-10, res_f <= 1e-10});

    const VectorXd K = lift_curvature(V, g_flat, flat, ex);
    const ElemScalar K_field = [&](int t, const Vec2& xhat) {
      return lagrange_eval(V, K, t, xhat, element_map(mesh, t), 0).v;
    };
    const double res_k = l2_norm(mesh, K_field, 20);
    out.push_back({"flat_lift", res_k, 1e-10, res_k <= 1e-10});
  }
  {
    const auto field = [&](const Vec2& x) { return ghat.jet(x).v; };
    const double res_e = R.edge_moment_residual(gcoeffs, field);
    const double res_i = R.interior_moment_residual(gcoeffs, field);
    out.push_back({"interpolant_edge_moments", res_e, 1e-11, res_e <= 1e-11});
    out.push_back({"interpolant_interior_moments", res_i, 1e-11, res_i <= 1e-11});
  }
  return out;
}

}  // namespace curvlift
