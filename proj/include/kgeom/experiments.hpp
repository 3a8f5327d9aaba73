#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kgeom/contour.hpp"
#include "kgeom/geometry.hpp"
#include "kgeom/interpolant.hpp"
#include "kgeom/kernels.hpp"
#include "kgeom/rng.hpp"
#include "kgeom/surface_ops.hpp"
#include "kgeom/testbeds.hpp"

namespace kgeom {

/// One check of an experiment. `reference` carries the published number
/// when one exists; `threshold` is this artifact's acceptance bound on
/// `computed` (NaN marks an informational row). rel_error compares
/// computed against reference so drift is visible.
struct ExperimentRow {
  std::string quantity;
  double computed = std::numeric_limits<double>::quiet_NaN();
  double reference = std::numeric_limits<double>::quiet_NaN();
  double rel_error = std::numeric_limits<double>::quiet_NaN();
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool pass = true;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<ExperimentRow> rows;

  bool passed() const {
    for (const auto& r : rows) {
      if (!r.pass) return false;
    }
    return true;
  }
};

struct ExperimentOptions {
  std::optional<int> m;
  std::optional<double> alpha;
  std::optional<KernelSpec> kernel;
  std::uint64_t seed = 1;
  double grad_tol = kDefaultGradTol;
};

namespace detail {

inline double rel_to_reference(double computed, double reference) {
  return std::abs(computed - reference) /
         std::max(std::abs(reference), 1e-300);
}

inline ExperimentRow error_row(std::string quantity, double computed,
                               double reference, double threshold) {
  ExperimentRow row;
  row.quantity = std::move(quantity);
  row.computed = computed;
  row.reference = reference;
  if (std::isfinite(reference)) {
    row.rel_error = rel_to_reference(computed, reference);
  }
  row.threshold = threshold;
  row.pass = std::isfinite(threshold) ? computed <= threshold : true;
  return row;
}

inline ExperimentRow check_row(std::string quantity, double computed,
                               bool pass) {
  ExperimentRow row;
  row.quantity = std::move(quantity);
  row.computed = computed;
  row.pass = pass;
  return row;
}

/// Row whose computed field is a value compared against the published
/// number; pass means the *relative error* stays under the threshold.
inline ExperimentRow value_row(std::string quantity, double computed,
                               double reference, double rel_threshold) {
  ExperimentRow row;
  row.quantity = std::move(quantity);
  row.computed = computed;
  row.reference = reference;
  row.rel_error = rel_to_reference(computed, reference);
  row.threshold = rel_threshold;
  row.pass = row.rel_error <= rel_threshold;
  return row;
}

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

/// Sorted-descending computed pair with the global sign chosen to
/// minimize the worse slot error against the (sorted) reference pair.
inline Eigen::Vector2d sign_matched_pair(const Eigen::Vector2d& computed,
                                         Eigen::Vector2d reference) {
  std::sort(reference.data(), reference.data() + 2, std::greater<double>());
  Eigen::Vector2d best;
  double best_err = std::numeric_limits<double>::infinity();
  for (double s : {1.0, -1.0}) {
    Eigen::Vector2d c = s * computed;
    std::sort(c.data(), c.data() + 2, std::greater<double>());
    const double err = std::max(rel_to_reference(c[0], reference[0]),
                                rel_to_reference(c[1], reference[1]));
    if (err < best_err) {
      best_err = err;
      best = c;
    }
  }
  return best;
}

/// Relative sup error over a point set, one value per curvature slot.
/// Slots are ordered by |reference| (the torus tube curvature dominates),
/// and the comparison is on magnitudes: the published torus pair mixes
/// orientation conventions, so only sizes are comparable.
struct CurvaturePairSupError {
  double large = 0.0;
  double small = 0.0;
};

class CurvaturePairAccumulator {
public:
  void add(const Eigen::Vector2d& computed, const Eigen::Vector2d& reference) {
    Eigen::Vector2d c = computed.cwiseAbs();
    Eigen::Vector2d r = reference.cwiseAbs();
    if (c[0] < c[1]) std::swap(c[0], c[1]);
    if (r[0] < r[1]) std::swap(r[0], r[1]);
    num_large_ = std::max(num_large_, std::abs(c[0] - r[0]));
    num_small_ = std::max(num_small_, std::abs(c[1] - r[1]));
    den_large_ = std::max(den_large_, r[0]);
    den_small_ = std::max(den_small_, r[1]);
  }

  CurvaturePairSupError result() const {
    return {num_large_ / std::max(den_large_, 1e-300),
            num_small_ / std::max(den_small_, 1e-300)};
  }

private:
  double num_large_ = 0.0, num_small_ = 0.0;
  double den_large_ = 0.0, den_small_ = 0.0;
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quadratic patch, broken symmetry: principal curvatures at the origin.

inline ExperimentReport run_quad_curvatures(const ExperimentOptions& opt) {
  ExperimentReport report;
  report.name = "quad-curvatures";
  const double alpha = opt.alpha.value_or(0.0);
  const int n = 16;
  report.parameters = {{"surface", "quad:a=1,b=2,h=0.5,n=16"},
                       {"alpha", detail::fmt(alpha)}};

  const PointCloud X = quadratic_patch_grid(1.0, 2.0, 0.5, n);
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();

  struct Case {
    KernelSpec spec;
    std::string label;
    Eigen::Vector2d reference;
    double threshold;
  };
  const std::vector<Case> cases = {
      {KernelSpec::gauss(), "gauss", {1.000, -2.000}, 5e-2},
      {KernelSpec::regularized_laplace(1.0), "laplace eps=1",
       {1.003, -1.992}, 2e-2}};

  for (const auto& c : cases) {
    const KernelSpec spec = opt.kernel.value_or(c.spec);
    const Model sig = signature_model(spec, X, alpha);
    const SurfaceFrame frame = curvatures(sig, origin, opt.grad_tol);
    const Eigen::Vector2d matched = detail::sign_matched_pair(
        Eigen::Vector2d(frame.principal_curvatures[0],
                        frame.principal_curvatures[1]),
        c.reference);
    Eigen::Vector2d ref_sorted = c.reference;
    std::sort(ref_sorted.data(), ref_sorted.data() + 2,
              std::greater<double>());
    report.rows.push_back(detail::value_row("kappa1 (" + c.label + ")",
                                            matched[0], ref_sorted[0],
                                            c.threshold));
    report.rows.push_back(detail::value_row("kappa2 (" + c.label + ")",
                                            matched[1], ref_sorted[1],
                                            c.threshold));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Quadratic patch, full symmetry: the flat-point failure mode on the
// regular grid, and the recovery from random samples.

inline ExperimentReport run_quad_degenerate(const ExperimentOptions& opt) {
  ExperimentReport report;
  report.name = "quad-degenerate";
  // The gradient at the origin vanishes analytically by symmetry, so the
  // computed norm is pure solver noise, which scales with the condition
  // number; regularization keeps it far below the degeneracy threshold.
  // The random-sample recovery wants plain interpolation instead.
  const double alpha_grid = opt.alpha.value_or(1e-6);
  const double alpha_random = opt.alpha.value_or(0.0);
  report.parameters = {{"surface", "quad:a=1,b=1,h=0.5,n=16"},
                       {"alpha(grid)", detail::fmt(alpha_grid)},
                       {"alpha(random)", detail::fmt(alpha_random)},
                       {"seed", std::to_string(opt.seed)}};

  const PointCloud X = quadratic_patch_grid(1.0, 1.0, 0.5, 16);
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();

  struct Case {
    KernelSpec spec;
    std::string label;
    double paper_grad_norm;
  };
  const std::vector<Case> cases = {
      {KernelSpec::gauss(), "gauss", 3.1948e-11},
      {KernelSpec::regularized_laplace(1.0), "laplace eps=1", 5.6192e-12}};

  for (const auto& c : cases) {
    const Model sig = signature_model(c.spec, X, alpha_grid);
    const double gn = evaluate_jet(sig, origin, 1).gradient.norm();
    report.rows.push_back(detail::error_row(
        "|grad u| at origin (" + c.label + ")", gn, c.paper_grad_norm, 1e-8));
    bool degenerate = false;
    try {
      curvatures(sig, origin, opt.grad_tol);
    } catch (const DegenerateGradient&) {
      degenerate = true;
    }
    report.rows.push_back(detail::check_row(
        "DegenerateGradient raised (" + c.label + ")",
        degenerate ? 1.0 : 0.0, degenerate));
  }

  // Random samples break the symmetry and recover the curvatures.
  const KernelSpec spec =
      opt.kernel.value_or(KernelSpec::regularized_laplace(1.0));
  std::vector<double> k1s, k2s;
  for (int s = 0; s < 5; ++s) {
    const PointCloud Xr =
        quadratic_patch_random(1.0, 1.0, 0.5, 256, opt.seed + s);
    const Model sig = signature_model(spec, Xr, alpha_random);
    const SurfaceFrame frame = curvatures(sig, origin, opt.grad_tol);
    // sorted descending: slot 1 is the positive curvature
    k1s.push_back(frame.principal_curvatures[1]);
    k2s.push_back(frame.principal_curvatures[0]);
  }
  const double k1 = detail::median(k1s);
  const double k2 = detail::median(k2s);
  {
    ExperimentRow row;
    row.quantity = "median kappa1, 256 random samples (laplace eps=1)";
    row.computed = k1;
    row.reference = 9.8534e-1;
    row.rel_error = detail::rel_to_reference(k1, row.reference);
    row.pass = std::abs(k1) >= 0.9 && std::abs(k1) <= 1.1;
    report.rows.push_back(row);
  }
  {
    ExperimentRow row;
    row.quantity = "median kappa2, 256 random samples (laplace eps=1)";
    row.computed = k2;
    row.reference = -1.0138;
    row.rel_error = detail::rel_to_reference(k2, row.reference);
    row.pass = std::abs(k2) >= 0.9 && std::abs(k2) <= 1.1;
    report.rows.push_back(row);
  }
  report.rows.push_back(detail::check_row("kappa signs opposite",
                                          k1 * k2 < 0 ? 1.0 : 0.0,
                                          k1 * k2 < 0));
  return report;
}

// ---------------------------------------------------------------------------
// Sphere: interpolation, surface gradient, Laplace-Beltrami.

namespace detail {

struct SphereLevelErrors {
  double f = 0.0;
  double grad = 0.0;
  double lb = 0.0;
};

inline SphereLevelErrors sphere_lb_errors(int m, const KernelSpec& spec,
                                          double alpha,
                                          const std::vector<Eigen::Vector3d>&
                                              eval_points,
                                          double grad_tol) {
  const PointCloud X = fibonacci_sphere(m);
  Eigen::VectorXd Y(X.size());
  for (Eigen::Index j = 0; j < X.size(); ++j) {
    Y[j] = sphere_test_function(X.point(j)).f;
  }
  const Model sig = signature_model(spec, X, alpha);
  const Model f_model = fit(spec, X, Y, alpha).first;

  double nf = 0.0, df = 0.0, ng = 0.0, dg = 0.0, nl = 0.0, dl = 0.0;
  for (const auto& p : eval_points) {
    const auto ref = sphere_test_function(p);
    const double fv = evaluate_jet(f_model, p, 0).value;
    const Eigen::VectorXd gv = surface_gradient(sig, f_model, p, grad_tol);
    const double lv = laplace_beltrami(sig, f_model, p, grad_tol);
    nf = std::max(nf, std::abs(fv - ref.f));
    df = std::max(df, std::abs(ref.f));
    ng = std::max(ng, (gv - ref.surface_gradient).norm());
    dg = std::max(dg, ref.surface_gradient.norm());
    nl = std::max(nl, std::abs(lv - ref.laplace_beltrami));
    dl = std::max(dl, std::abs(ref.laplace_beltrami));
  }
  return {nf / std::max(df, 1e-300), ng / std::max(dg, 1e-300),
          nl / std::max(dl, 1e-300)};
}

}  // namespace detail

inline ExperimentReport run_sphere_lb(const ExperimentOptions& opt) {
  ExperimentReport report;
  report.name = "sphere-lb";
  const KernelSpec spec =
      opt.kernel.value_or(KernelSpec::regularized_laplace(1.0));
  const double alpha = opt.alpha.value_or(1e-10);
  report.parameters = {{"kernel", to_string(spec)},
                       {"alpha", detail::fmt(alpha)},
                       {"seed", std::to_string(opt.seed)},
                       {"eval-points", "32 random on-sphere"}};

  Rng rng(opt.seed);
  std::vector<Eigen::Vector3d> eval_points;
  for (int i = 0; i < 32; ++i) {
    eval_points.emplace_back(rng.unit_vector(3));
  }

  // Published table values (f, surface gradient, Laplace-Beltrami).
  struct Ref {
    int m;
    double f, grad, lb;
  };
  const std::vector<Ref> refs = {{64, 3.811e-2, 3.857e-1, 5.673e-1},
                                 {128, 8.538e-4, 1.579e-1, 1.654e-2},
                                 {256, 2.623e-6, 4.271e-5, 3.136e-5},
                                 {512, 1.117e-9, 2.971e-8, 1.268e-8}};

  const auto ref_for = [&](int m) -> const Ref* {
    for (const auto& r : refs) {
      if (r.m == m) return &r;
    }
    return nullptr;
  };
  const auto threshold_for = [](int m, int quantity) {
    // quantity: 0 = f, 1 = grad, 2 = lb
    if (m == 256) return 1e-3;
    if (m == 512 && quantity == 2) return 1e-5;
    return std::numeric_limits<double>::quiet_NaN();
  };

  std::vector<int> levels = opt.m ? std::vector<int>{*opt.m}
                                  : std::vector<int>{64, 128, 256, 512};
  std::vector<detail::SphereLevelErrors> errors;
  for (int m : levels) {
    const auto e =
        detail::sphere_lb_errors(m, spec, alpha, eval_points, opt.grad_tol);
    errors.push_back(e);
    const Ref* r = ref_for(m);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.rows.push_back(detail::error_row(
        "f rel Linf err, m=" + std::to_string(m), e.f, r ? r->f : nan,
        threshold_for(m, 0)));
    report.rows.push_back(detail::error_row(
        "surface gradient rel Linf err, m=" + std::to_string(m), e.grad,
        r ? r->grad : nan, threshold_for(m, 1)));
    report.rows.push_back(detail::error_row(
        "laplace-beltrami rel Linf err, m=" + std::to_string(m), e.lb,
        r ? r->lb : nan, threshold_for(m, 2)));
  }

  if (levels.size() > 1) {
    auto monotone = [&](auto pick, const std::string& label) {
      double worst = 0.0;
      for (std::size_t i = 1; i < errors.size(); ++i) {
        worst = std::max(worst, pick(errors[i]) / pick(errors[i - 1]));
      }
      report.rows.push_back(detail::check_row(
          label + " max level-to-level ratio", worst, worst < 1.0));
    };
    monotone([](const auto& e) { return e.f; }, "f err decreasing:");
    monotone([](const auto& e) { return e.grad; }, "grad err decreasing:");
    monotone([](const auto& e) { return e.lb; }, "lb err decreasing:");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Torus principal curvatures, Fibonacci lattice and rejection sampling.

namespace detail {

inline CurvaturePairSupError torus_curvature_errors(
    const PointCloud& X, const KernelSpec& spec, double alpha, double u_star,
    double grad_tol) {
  const Torus torus{2.0, 0.5};
  const Model sig = signature_model(spec, X, alpha);
  CurvaturePairAccumulator acc;
  for (int j = 0; j < 32; ++j) {
    const double v = 2.0 * std::numbers::pi * j / 32.0;
    const Eigen::Vector3d p = torus_point(torus, u_star, v);
    const SurfaceFrame frame = curvatures(sig, p, grad_tol);
    const GroundTruth gt = analytic_frame(AnalyticSurface{torus}, p);
    acc.add(Eigen::Vector2d(frame.principal_curvatures[0],
                            frame.principal_curvatures[1]),
            Eigen::Vector2d(gt.principal_curvatures[0],
                            gt.principal_curvatures[1]));
  }
  return acc.result();
}

}  // namespace detail

inline ExperimentReport run_torus(const ExperimentOptions& opt,
                                  bool fibonacci) {
  ExperimentReport report;
  report.name = fibonacci ? "torus-fibonacci" : "torus-random";
  const KernelSpec spec =
      opt.kernel.value_or(KernelSpec::regularized_laplace(1.0));
  const double alpha = opt.alpha.value_or(1e-10);
  report.parameters = {{"surface", "torus:R1=2,R2=0.5"},
                       {"kernel", to_string(spec)},
                       {"alpha", detail::fmt(alpha)},
                       {"seed", std::to_string(opt.seed)},
                       {"eval-points", "32 equidistant on a random vertical "
                                       "circle"}};

  Rng rng(opt.seed);
  const double u_star = 2.0 * std::numbers::pi * rng.uniform01();

  // Published Laplace(eps=1) relative Linf errors, size-ordered pairs.
  struct Ref {
    int m;
    double large, small;
  };
  const std::vector<Ref> refs_fib = {{64, 1.24e-1, 1.08e-1},
                                     {128, 4.42e-2, 3.27e-2},
                                     {256, 3.00e-3, 2.08e-3},
                                     {512, 3.11e-4, 2.08e-4},
                                     {1024, 1.16e-6, 7.40e-7}};
  const std::vector<Ref> refs_rand = {{64, 1.02e-1, 2.21e-1},
                                      {128, 5.26e-2, 1.08e-1},
                                      {256, 8.61e-3, 7.94e-3},
                                      {512, 1.59e-3, 9.46e-4},
                                      {1024, 8.51e-6, 4.18e-6}};
  const auto& refs = fibonacci ? refs_fib : refs_rand;
  const auto ref_for = [&](int m) -> const Ref* {
    for (const auto& r : refs) {
      if (r.m == m) return &r;
    }
    return nullptr;
  };

  const std::vector<int> levels =
      opt.m ? std::vector<int>{*opt.m}
            : (fibonacci ? std::vector<int>{64, 128, 256, 512}
                         : std::vector<int>{64, 128, 256});
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (int m : levels) {
    detail::CurvaturePairSupError err;
    if (fibonacci) {
      err = detail::torus_curvature_errors(fibonacci_torus(m, 2.0, 0.5),
                                           spec, alpha, u_star, opt.grad_tol);
    } else {
      // Median over three sampling seeds, per slot.
      std::vector<double> large, small;
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto e = detail::torus_curvature_errors(
            torus_rejection_sample(m, 2.0, 0.5, opt.seed + s), spec, alpha,
            u_star, opt.grad_tol);
        large.push_back(e.large);
        small.push_back(e.small);
      }
      err = {detail::median(large), detail::median(small)};
    }
    const Ref* r = ref_for(m);
    const double threshold =
        m == 256 ? (fibonacci ? 3e-2 : 5e-2) : nan;
    report.rows.push_back(detail::error_row(
        "kappa(large) rel Linf err, m=" + std::to_string(m), err.large,
        r ? r->large : nan, threshold));
    report.rows.push_back(detail::error_row(
        "kappa(small) rel Linf err, m=" + std::to_string(m), err.small,
        r ? r->small : nan, threshold));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Ellipsoid Gauss curvature.

inline ExperimentReport run_ellipsoid_gauss(const ExperimentOptions& opt) {
  ExperimentReport report;
  report.name = "ellipsoid-gauss";
  const KernelSpec spec =
      opt.kernel.value_or(KernelSpec::regularized_laplace(1.0));
  const double alpha = opt.alpha.value_or(1e-10);
  const double a = 2.0, b = 0.5, c = 1.0;
  report.parameters = {{"surface", "ellipsoid:a=2,b=0.5,c=1"},
                       {"kernel", to_string(spec)},
                       {"alpha", detail::fmt(alpha)},
                       {"seed", std::to_string(opt.seed)},
                       {"eval-points", "32 random on the ellipsoid"}};

  const PointCloud eval = ellipsoid_sample(32, a, b, c, opt.seed);
  const AnalyticSurface surface{Ellipsoid{a, b, c}};

  struct Ref {
    int m;
    double err;
  };
  const std::vector<Ref> refs = {{64, 2.428e-1},
                                 {128, 8.408e-2},
                                 {256, 1.186e-2},
                                 {512, 5.439e-4},
                                 {1024, 4.995e-5}};
  const auto ref_for = [&](int m) -> const Ref* {
    for (const auto& r : refs) {
      if (r.m == m) return &r;
    }
    return nullptr;
  };

  const std::vector<int> levels =
      opt.m ? std::vector<int>{*opt.m}
            : std::vector<int>{64, 128, 256, 512, 1024};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> errors;
  for (int m : levels) {
    const PointCloud X = ellipsoid_fibonacci(m, a, b, c);
    const Model sig = signature_model(spec, X, alpha);
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < eval.size(); ++j) {
      const Eigen::VectorXd p = eval.point(j);
      const SurfaceFrame frame = curvatures(sig, p, opt.grad_tol);
      const GroundTruth gt = analytic_frame(surface, p);
      num = std::max(num,
                     std::abs(frame.gauss_curvature - gt.gauss_curvature));
      den = std::max(den, std::abs(gt.gauss_curvature));
    }
    const double err = num / std::max(den, 1e-300);
    errors.push_back(err);
    const Ref* r = ref_for(m);
    report.rows.push_back(detail::error_row(
        "gauss curvature rel Linf err, m=" + std::to_string(m), err,
        r ? r->err : nan, m == 512 ? 1e-2 : nan));
  }
  if (levels.size() > 1) {
    double worst = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
      worst = std::max(worst, errors[i] / errors[i - 1]);
    }
    report.rows.push_back(detail::check_row(
        "err decreasing: max level-to-level ratio", worst, worst < 1.0));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Noisy ellipse: regression, mean level, reconstruction.

inline ExperimentReport run_noisy_ellipse(const ExperimentOptions& opt) {
  ExperimentReport report;
  report.name = "noisy-ellipse";
  const KernelSpec spec =
      opt.kernel.value_or(KernelSpec::regularized_laplace(1.0));
  const double alpha = opt.alpha.value_or(0.1);
  const int m = opt.m.value_or(32);
  report.parameters = {{"surface", "ellipse:a=1,b=0.5"},
                       {"kernel", to_string(spec)},
                       {"alpha", detail::fmt(alpha)},
                       {"noise", "0.1"},
                       {"m", std::to_string(m)},
                       {"seed", std::to_string(opt.seed)}};

  const PointCloud clean = curve_sample(AnalyticSurface{Ellipse{1.0, 0.5}}, m);
  const PointCloud X = perturb(clean, 0.1, opt.seed);
  const Model sig = signature_model(spec, X, alpha);
  const LevelStats stats = level_stats(sig, X);

  report.rows.push_back(detail::check_row(
      "mean level in (0, 1)", stats.mean_level,
      stats.mean_level > 0.0 && stats.mean_level < 1.0));
  report.rows.push_back(detail::check_row("residual rms positive",
                                          stats.residual_rms,
                                          stats.residual_rms > 0.0));

  const ValueGrid2d grid = sample_grid2d(sig, default_box(X), 128);
  const auto polylines = extract_level_polylines(grid, stats.mean_level);
  report.rows.push_back(detail::check_row("polyline count at mean level",
                                          static_cast<double>(polylines.size()),
                                          polylines.size() == 1));
  const bool closed = polylines.size() == 1 && is_closed(polylines.front());
  report.rows.push_back(
      detail::check_row("polyline closed", closed ? 1.0 : 0.0, closed));
  return report;
}

// ---------------------------------------------------------------------------

inline ExperimentReport run_experiment(const std::string& name,
                                       const ExperimentOptions& opt) {
  if (name == "quad-curvatures") return run_quad_curvatures(opt);
  if (name == "quad-degenerate") return run_quad_degenerate(opt);
  if (name == "sphere-lb") return run_sphere_lb(opt);
  if (name == "torus-random") return run_torus(opt, false);
  if (name == "torus-fibonacci") return run_torus(opt, true);
  if (name == "ellipsoid-gauss") return run_ellipsoid_gauss(opt);
  if (name == "noisy-ellipse") return run_noisy_ellipse(opt);
  throw std::invalid_argument(
      "unknown experiment '" + name +
      "' (expected quad-curvatures, quad-degenerate, sphere-lb, "
      "torus-random, torus-fibonacci, ellipsoid-gauss, or noisy-ellipse)");
}

/// Markdown rendering: parameter list then one table row per check.
inline std::string render_markdown(const ExperimentReport& report) {
  std::ostringstream out;
  out << "# experiment " << report.name << "\n\n";
  for (const auto& [k, v] : report.parameters) {
    out << "- " << k << ": " << v << "\n";
  }
  out << "\n| quantity | computed | reference | rel error | threshold | "
         "status |\n";
  out << "|---|---|---|---|---|---|\n";
  auto cell = [](double v) {
    if (!std::isfinite(v)) return std::string("-");
    std::ostringstream ss;
    ss.precision(4);
    ss << std::scientific << v;
    return ss.str();
  };
  for (const auto& r : report.rows) {
    out << "| " << r.quantity << " | " << cell(r.computed) << " | "
        << cell(r.reference) << " | " << cell(r.rel_error) << " | "
        << cell(r.threshold) << " | " << (r.pass ? "pass" : "FAIL")
        << " |\n";
  }
  out << "\noverall: " << (report.passed() ? "pass" : "FAIL") << "\n";
  return out.str();
}

/// CSV rendering with the same columns as the markdown table.
inline std::string render_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "quantity,computed,reference,rel_error,threshold,status\n";
  auto cell = [](double v) {
    if (!std::isfinite(v)) return std::string("");
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
  };
  for (const auto& r : report.rows) {
    std::string q = r.quantity;
    for (auto& ch : q) {
      if (ch == ',') ch = ';';
    }
    out << q << ',' << cell(r.computed) << ',' << cell(r.reference) << ','
        << cell(r.rel_error) << ',' << cell(r.threshold) << ','
        << (r.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace kgeom
