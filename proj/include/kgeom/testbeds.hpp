#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "kgeom/cloud.hpp"
#include "kgeom/errors.hpp"
#include "kgeom/rng.hpp"

namespace kgeom {

// ---------------------------------------------------------------------------
// Analytic surfaces and curves used by the experiments.

struct Sphere {
  double r = 1.0;
};

struct Torus {
  double R1 = 2.0;  // ring radius, must exceed the tube radius
  double R2 = 0.5;  // tube radius
};

struct Ellipsoid {
  double a = 2.0, b = 0.5, c = 1.0;
};

/// Graph patch z = (a/2) x^2 - (b/2) y^2 over a centered square.
struct QuadraticPatch {
  double a = 1.0, b = 2.0;
  double half_extent = 0.5;
};

struct Ellipse {
  double a = 1.0, b = 0.5;
};

/// (sin t, sin^3 t + 0.5 cos t), a closed curve with two inflection points.
struct CubicClosedCurve {};

struct Triangle {
  std::vector<Eigen::Vector2d> vertices = {
      {0.0, 0.0}, {1.0, 0.0}, {0.5, 0.9}};
};

struct Square {
  double side = 2.0;
};

struct SemiEllipse {
  double a = 1.0, b = 0.5;
};

using AnalyticSurface =
    std::variant<Sphere, Torus, Ellipsoid, QuadraticPatch, Ellipse,
                 CubicClosedCurve, Triangle, Square, SemiEllipse>;

inline void validate_surface(const AnalyticSurface& surface) {
  auto positive = [](std::initializer_list<double> vs) {
    for (double v : vs) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("surface parameters must be positive");
      }
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          positive({s.r});
        } else if constexpr (std::is_same_v<T, Torus>) {
          positive({s.R1, s.R2});
          if (!(s.R1 > s.R2)) {
            throw std::invalid_argument(
                "ring torus requires R1 > R2 (got R1 <= R2)");
          }
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          positive({s.a, s.b, s.c});
        } else if constexpr (std::is_same_v<T, QuadraticPatch>) {
          positive({s.a, s.b, s.half_extent});
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          positive({s.a, s.b});
        } else if constexpr (std::is_same_v<T, Triangle>) {
          if (s.vertices.size() != 3) {
            throw std::invalid_argument("triangle needs exactly 3 vertices");
          }
        } else if constexpr (std::is_same_v<T, Square>) {
          positive({s.side});
        } else if constexpr (std::is_same_v<T, SemiEllipse>) {
          positive({s.a, s.b});
        }
      },
      surface);
}

/// Analytically derived per-point reference values; never produced by a
/// fitted model. For curves (d = 2) there is a single curvature and the
/// Gauss curvature equals it.
struct GroundTruth {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
  Eigen::VectorXd principal_curvatures;  // sorted by value
  double mean_curvature = 0.0;
  double gauss_curvature = 0.0;
};

// ---------------------------------------------------------------------------
// Samplers.

namespace detail {

// Golden ratio conjugate (sqrt(5)-1)/2, the lattice increment.
inline constexpr double kGoldenConjugate = 0.6180339887498948482;

inline double frac(double x) { return x - std::floor(x); }

}  // namespace detail

/// Fibonacci lattice on the unit sphere:
///   z_k = 1 - (2k+1)/m, phi_k = 2 pi k (sqrt(5)-1)/2,
///   p_k = (sqrt(1-z^2) cos phi, sqrt(1-z^2) sin phi, z), renormalized.
/// Deterministic.
inline PointCloud fibonacci_sphere(int m) {
  if (m < 1) throw std::invalid_argument("fibonacci_sphere: m >= 1 required");
  Eigen::MatrixXd pts(m, 3);
  for (int k = 0; k < m; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / m;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi =
        2.0 * std::numbers::pi * detail::frac(k * detail::kGoldenConjugate);
    Eigen::Vector3d p(rho * std::cos(phi), rho * std::sin(phi), z);
    pts.row(k) = (p / p.norm()).transpose();
  }
  return PointCloud(std::move(pts));
}

inline Eigen::Vector3d torus_point(const Torus& t, double u, double v) {
  const double w = t.R1 + t.R2 * std::cos(v);
  return {w * std::cos(u), w * std::sin(u), t.R2 * std::sin(v)};
}

/// Fibonacci lattice on the torus:
///   u_k = 2 pi frac(k (sqrt(5)-1)/2), v_k = 2 pi (k + 1/2)/m.
inline PointCloud fibonacci_torus(int m, double R1, double R2) {
  const Torus t{R1, R2};
  validate_surface(AnalyticSurface{t});
  if (m < 1) throw std::invalid_argument("fibonacci_torus: m >= 1 required");
  Eigen::MatrixXd pts(m, 3);
  for (int k = 0; k < m; ++k) {
    const double u =
        2.0 * std::numbers::pi * detail::frac(k * detail::kGoldenConjugate);
    const double v = 2.0 * std::numbers::pi * (k + 0.5) / m;
    pts.row(k) = torus_point(t, u, v).transpose();
  }
  return PointCloud(std::move(pts));
}

/// Area-weighted random torus sample: (u, v) uniform on [0, 2pi)^2,
/// accepted with probability (R1 + R2 cos v)/(R1 + R2). Per attempt the
/// stream consumes three uniform01 draws (u, v, accept).
inline PointCloud torus_rejection_sample(int m, double R1, double R2,
                                         std::uint64_t seed) {
  const Torus t{R1, R2};
  validate_surface(AnalyticSurface{t});
  if (m < 1) {
    throw std::invalid_argument("torus_rejection_sample: m >= 1 required");
  }
  Rng rng(seed);
  Eigen::MatrixXd pts(m, 3);
  int accepted = 0;
  while (accepted < m) {
    const double u = 2.0 * std::numbers::pi * rng.uniform01();
    const double v = 2.0 * std::numbers::pi * rng.uniform01();
    const double p = (R1 + R2 * std::cos(v)) / (R1 + R2);
    if (rng.uniform01() <= p) {
      pts.row(accepted++) = torus_point(t, u, v).transpose();
    }
  }
  return PointCloud(std::move(pts));
}

/// Random ellipsoid sample: standard normal in R^3, normalized to the
/// sphere, then scaled componentwise by (a, b, c).
inline PointCloud ellipsoid_sample(int m, double a, double b, double c,
                                   std::uint64_t seed) {
  validate_surface(AnalyticSurface{Ellipsoid{a, b, c}});
  if (m < 1) throw std::invalid_argument("ellipsoid_sample: m >= 1 required");
  Rng rng(seed);
  Eigen::MatrixXd pts(m, 3);
  for (int k = 0; k < m; ++k) {
    const Eigen::VectorXd n = rng.unit_vector(3);
    pts(k, 0) = a * n[0];
    pts(k, 1) = b * n[1];
    pts(k, 2) = c * n[2];
  }
  return PointCloud(std::move(pts));
}

/// Fibonacci sphere lattice scaled to the ellipsoid axes.
inline PointCloud ellipsoid_fibonacci(int m, double a, double b, double c) {
  validate_surface(AnalyticSurface{Ellipsoid{a, b, c}});
  Eigen::MatrixXd pts = fibonacci_sphere(m).points();
  pts.col(0) *= a;
  pts.col(1) *= b;
  pts.col(2) *= c;
  return PointCloud(std::move(pts));
}

/// Displace every point by r * theta with theta uniform on the unit
/// sphere and r uniform on [0, max_dist]. Per point the stream consumes
/// one unit_vector draw then one radius draw.
inline PointCloud perturb(const PointCloud& X, double max_dist,
                          std::uint64_t seed) {
  if (!(max_dist >= 0.0)) {
    throw std::invalid_argument("perturb: max_dist >= 0 required");
  }
  if (max_dist == 0.0) return X;
  Rng rng(seed);
  Eigen::MatrixXd pts = X.points();
  for (Eigen::Index k = 0; k < pts.rows(); ++k) {
    const Eigen::VectorXd dir = rng.unit_vector(X.dim());
    const double r = max_dist * rng.uniform01();
    pts.row(k) += r * dir.transpose();
  }
  return PointCloud(std::move(pts));
}

/// n x n regular grid over [-h, h]^2 lifted onto the quadratic patch.
inline PointCloud quadratic_patch_grid(double a, double b, double half_extent,
                                       int n) {
  validate_surface(AnalyticSurface{QuadraticPatch{a, b, half_extent}});
  if (n < 2) throw std::invalid_argument("quadratic_patch_grid: n >= 2");
  Eigen::MatrixXd pts(n * n, 3);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -half_extent + 2.0 * half_extent * i / (n - 1);
      const double y = -half_extent + 2.0 * half_extent * j / (n - 1);
      pts.row(row++) = Eigen::Vector3d(
          x, y, 0.5 * a * x * x - 0.5 * b * y * y).transpose();
    }
  }
  return PointCloud(std::move(pts));
}

/// Uniform random (x, y) on the patch square, lifted onto the surface.
inline PointCloud quadratic_patch_random(double a, double b,
                                         double half_extent, int m,
                                         std::uint64_t seed) {
  validate_surface(AnalyticSurface{QuadraticPatch{a, b, half_extent}});
  if (m < 1) throw std::invalid_argument("quadratic_patch_random: m >= 1");
  Rng rng(seed);
  Eigen::MatrixXd pts(m, 3);
  for (int k = 0; k < m; ++k) {
    const double x = rng.uniform(-half_extent, half_extent);
    const double y = rng.uniform(-half_extent, half_extent);
    pts.row(k) = Eigen::Vector3d(
        x, y, 0.5 * a * x * x - 0.5 * b * y * y).transpose();
  }
  return PointCloud(std::move(pts));
}

// ---------------------------------------------------------------------------
// Curve sampling (d = 2).

enum class CurveSampleMode { EquispacedParameter, Subset };

struct CurveSampleOptions {
  CurveSampleMode mode = CurveSampleMode::EquispacedParameter;
  /// Subset mode on parametric curves: fraction of the parameter range kept.
  double subset_fraction = 0.375;
  /// Subset mode on polygons: corner to remove and the arc-length radius
  /// (as a fraction of the perimeter) of deleted samples around it.
  int corner_index = 0;
  double corner_radius_fraction = 0.1;
};

namespace detail {

inline Eigen::MatrixXd polygon_sample(
    const std::vector<Eigen::Vector2d>& vertices, int m) {
  const int ne = static_cast<int>(vertices.size());
  std::vector<double> lengths(ne);
  double total = 0.0;
  for (int e = 0; e < ne; ++e) {
    lengths[e] = (vertices[(e + 1) % ne] - vertices[e]).norm();
    total += lengths[e];
  }
  // Largest-remainder allocation of m samples across edges; each edge
  // carries its start vertex, so all vertices are always included.
  std::vector<int> counts(ne, 1);
  int assigned = ne;
  if (m < ne) throw std::invalid_argument("polygon sample: m >= #vertices");
  std::vector<double> want(ne);
  for (int e = 0; e < ne; ++e) {
    want[e] = static_cast<double>(m) * lengths[e] / total;
    const int extra = std::max(0, static_cast<int>(std::floor(want[e])) - 1);
    counts[e] += extra;
    assigned += extra;
  }
  while (assigned < m) {
    int best = 0;
    double best_gap = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < ne; ++e) {
      const double gap = want[e] - counts[e];
      if (gap > best_gap) {
        best_gap = gap;
        best = e;
      }
    }
    ++counts[best];
    ++assigned;
  }
  Eigen::MatrixXd pts(m, 2);
  int row = 0;
  for (int e = 0; e < ne; ++e) {
    const Eigen::Vector2d a = vertices[e];
    const Eigen::Vector2d b = vertices[(e + 1) % ne];
    for (int k = 0; k < counts[e]; ++k) {
      const double t = static_cast<double>(k) / counts[e];
      pts.row(row++) = ((1.0 - t) * a + t * b).transpose();
    }
  }
  return pts;
}

inline Eigen::MatrixXd remove_near_vertex(
    const Eigen::MatrixXd& pts, const Eigen::Vector2d& vertex,
    double radius) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    if ((pts.row(i).transpose() - vertex).norm() > radius) keep.push_back(i);
  }
  Eigen::MatrixXd out(keep.size(), 2);
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(i) = pts.row(keep[i]);
  return out;
}

}  // namespace detail

/// Deterministic curve samples. Parametric curves are sampled at
/// equispaced parameter values; polygons by uniform arc length with
/// vertices always included. Subset mode keeps the leading fraction of
/// the parameter range (curves) or removes samples around a corner
/// (square/triangle).
inline PointCloud curve_sample(const AnalyticSurface& surface, int m,
                               const CurveSampleOptions& options = {}) {
  validate_surface(surface);
  if (m < 3) throw std::invalid_argument("curve_sample: m >= 3 required");
  const bool subset = options.mode == CurveSampleMode::Subset;

  auto parametric = [&](auto&& gamma, double t_end,
                        bool closed) -> Eigen::MatrixXd {
    const double range = subset && closed ? t_end * options.subset_fraction
                                          : t_end;
    Eigen::MatrixXd pts(m, 2);
    for (int k = 0; k < m; ++k) {
      // Closed curves exclude the duplicate endpoint, open ones keep it.
      const double t = closed ? range * k / m : range * k / (m - 1);
      pts.row(k) = gamma(t).transpose();
    }
    return pts;
  };

  Eigen::MatrixXd pts;
  if (const auto* e = std::get_if<Ellipse>(&surface)) {
    pts = parametric(
        [&](double t) {
          return Eigen::Vector2d(e->a * std::cos(t), e->b * std::sin(t));
        },
        2.0 * std::numbers::pi, true);
  } else if (std::get_if<CubicClosedCurve>(&surface)) {
    pts = parametric(
        [](double t) {
          const double s = std::sin(t);
          return Eigen::Vector2d(s, s * s * s + 0.5 * std::cos(t));
        },
        2.0 * std::numbers::pi, true);
  } else if (const auto* se = std::get_if<SemiEllipse>(&surface)) {
    pts = parametric(
        [&](double t) {
          return Eigen::Vector2d(se->a * std::cos(t), se->b * std::sin(t));
        },
        std::numbers::pi, false);
  } else if (const auto* tri = std::get_if<Triangle>(&surface)) {
    pts = detail::polygon_sample(tri->vertices, m);
    if (subset) {
      const double perimeter =
          (tri->vertices[1] - tri->vertices[0]).norm() +
          (tri->vertices[2] - tri->vertices[1]).norm() +
          (tri->vertices[0] - tri->vertices[2]).norm();
      pts = detail::remove_near_vertex(
          pts, tri->vertices[options.corner_index % 3],
          options.corner_radius_fraction * perimeter);
    }
  } else if (const auto* sq = std::get_if<Square>(&surface)) {
    const double h = sq->side / 2.0;
    const std::vector<Eigen::Vector2d> corners = {
        {-h, -h}, {h, -h}, {h, h}, {-h, h}};
    pts = detail::polygon_sample(corners, m);
    if (subset) {
      pts = detail::remove_near_vertex(
          pts, corners[options.corner_index % 4],
          options.corner_radius_fraction * 4.0 * sq->side);
    }
  } else {
    throw std::invalid_argument("curve_sample: surface is not a curve");
  }
  return PointCloud(std::move(pts));
}

// ---------------------------------------------------------------------------
// Ground truth.

namespace detail {

inline void require_on_surface(double residual, double tol = 1e-9) {
  if (std::abs(residual) > tol) {
    throw OffSurfacePoint("point is off the surface (residual " +
                          std::to_string(residual) + ")");
  }
}

}  // namespace detail

/// Implicit residual of a point for the given surface (0 on it).
inline double surface_residual(const AnalyticSurface& surface,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (const auto* s = std::get_if<Sphere>(&surface)) {
    return x.norm() - s->r;
  }
  if (const auto* t = std::get_if<Torus>(&surface)) {
    const double rho = std::hypot(x[0], x[1]);
    const double q = rho - t->R1;
    return q * q + x[2] * x[2] - t->R2 * t->R2;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&surface)) {
    return x[0] * x[0] / (e->a * e->a) + x[1] * x[1] / (e->b * e->b) +
           x[2] * x[2] / (e->c * e->c) - 1.0;
  }
  if (const auto* q = std::get_if<QuadraticPatch>(&surface)) {
    return x[2] - 0.5 * q->a * x[0] * x[0] + 0.5 * q->b * x[1] * x[1];
  }
  if (const auto* e = std::get_if<Ellipse>(&surface)) {
    return x[0] * x[0] / (e->a * e->a) + x[1] * x[1] / (e->b * e->b) - 1.0;
  }
  throw std::invalid_argument("no implicit form for this surface");
}

/// Exact frame at a surface point. Conventions:
///  - sphere/ellipse/ellipsoid: outward normal, curvatures positive on
///    the sphere (1/r);
///  - torus: tube curvature -1/R2 and ring curvature
///    cos v / (R1 + R2 cos v), as reported alongside size-ordered
///    comparisons (the pair's signs follow the published formulas);
///  - quadratic patch: upward normal at the origin, curvatures (a, -b).
inline GroundTruth analytic_frame(const AnalyticSurface& surface,
                                  const Eigen::Ref<const Eigen::VectorXd>& x) {
  validate_surface(surface);
  GroundTruth gt;
  gt.point = x;

  if (const auto* s = std::get_if<Sphere>(&surface)) {
    detail::require_on_surface(surface_residual(surface, x));
    gt.normal = x / x.norm();
    gt.principal_curvatures = Eigen::Vector2d(1.0 / s->r, 1.0 / s->r);
    gt.mean_curvature = 1.0 / s->r;
    gt.gauss_curvature = 1.0 / (s->r * s->r);
    return gt;
  }

  if (const auto* t = std::get_if<Torus>(&surface)) {
    detail::require_on_surface(surface_residual(surface, x));
    const double rho = std::hypot(x[0], x[1]);
    const double cos_v = (rho - t->R1) / t->R2;
    Eigen::Vector3d n(x[0] / rho * cos_v, x[1] / rho * cos_v,
                      x[2] / t->R2);
    gt.normal = n / n.norm();
    const double tube = -1.0 / t->R2;
    const double ring = cos_v / (t->R1 + t->R2 * cos_v);
    gt.principal_curvatures = tube < ring ? Eigen::Vector2d(tube, ring)
                                          : Eigen::Vector2d(ring, tube);
    gt.mean_curvature = 0.5 * (tube + ring);
    gt.gauss_curvature = tube * ring;
    return gt;
  }

  if (const auto* e = std::get_if<Ellipsoid>(&surface)) {
    detail::require_on_surface(surface_residual(surface, x));
    Eigen::Vector3d g(2.0 * x[0] / (e->a * e->a), 2.0 * x[1] / (e->b * e->b),
                      2.0 * x[2] / (e->c * e->c));
    gt.normal = g / g.norm();
    const double s = x[0] * x[0] / std::pow(e->a, 4) +
                     x[1] * x[1] / std::pow(e->b, 4) +
                     x[2] * x[2] / std::pow(e->c, 4);
    gt.gauss_curvature =
        1.0 / (e->a * e->a * e->b * e->b * e->c * e->c * s * s);
    // Principal curvatures via the exact implicit shape operator.
    const Eigen::Matrix3d H =
        Eigen::Vector3d(2.0 / (e->a * e->a), 2.0 / (e->b * e->b),
                        2.0 / (e->c * e->c))
            .asDiagonal();
    const Eigen::Matrix3d P =
        Eigen::Matrix3d::Identity() - gt.normal * gt.normal.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(P * H * P / g.norm());
    int discard = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double a = std::abs(eig.eigenvectors().col(i).dot(gt.normal));
      if (a > best) {
        best = a;
        discard = i;
      }
    }
    gt.principal_curvatures.resize(2);
    int out = 0;
    for (int i = 0; i < 3; ++i) {
      if (i != discard) gt.principal_curvatures[out++] = eig.eigenvalues()[i];
    }
    std::sort(gt.principal_curvatures.begin(), gt.principal_curvatures.end());
    gt.mean_curvature = gt.principal_curvatures.mean();
    return gt;
  }

  if (const auto* q = std::get_if<QuadraticPatch>(&surface)) {
    detail::require_on_surface(surface_residual(surface, x));
    Eigen::Vector3d g(-q->a * x[0], q->b * x[1], 1.0);
    gt.normal = g / g.norm();
    if (x.head(2).norm() == 0.0) {
      gt.principal_curvatures = Eigen::Vector2d(-q->b, q->a);
      gt.mean_curvature = 0.5 * (q->a - q->b);
      gt.gauss_curvature = -q->a * q->b;
      return gt;
    }
    throw std::invalid_argument(
        "quadratic patch ground truth is defined at the origin only");
  }

  if (const auto* e = std::get_if<Ellipse>(&surface)) {
    detail::require_on_surface(surface_residual(surface, x));
    Eigen::Vector2d g(2.0 * x[0] / (e->a * e->a), 2.0 * x[1] / (e->b * e->b));
    gt.normal = g / g.norm();
    // kappa = a b / (a^2 sin^2 t + b^2 cos^2 t)^(3/2), outward convention.
    const double cos_t = x[0] / e->a;
    const double sin_t = x[1] / e->b;
    const double w = e->a * e->a * sin_t * sin_t + e->b * e->b * cos_t * cos_t;
    gt.principal_curvatures.resize(1);
    gt.principal_curvatures[0] = e->a * e->b / std::pow(w, 1.5);
    gt.mean_curvature = gt.principal_curvatures[0];
    gt.gauss_curvature = gt.principal_curvatures[0];
    return gt;
  }

  throw std::invalid_argument("no analytic frame for this surface");
}

// ---------------------------------------------------------------------------
// Sphere test field.

/// f, its surface gradient, and its Laplace-Beltrami on the unit sphere:
///   f(x)  = sin(pi (1 + 2 x3))
///   grad  = 2 pi cos(pi (1 + 2 x3)) (e3 - x3 x)
///   lb    = 4 pi^2 (x3^2 - 1) sin(pi (1 + 2 x3))
///           - 4 pi x3 cos(pi (1 + 2 x3))
struct SphereFieldSample {
  double f = 0.0;
  Eigen::Vector3d surface_gradient = Eigen::Vector3d::Zero();
  double laplace_beltrami = 0.0;
};

inline SphereFieldSample sphere_test_function(
    const Eigen::Ref<const Eigen::VectorXd>& x) {
  detail::require_on_surface(x.norm() - 1.0);
  const double pi = std::numbers::pi;
  const double t = x[2];
  const double arg = pi * (1.0 + 2.0 * t);
  SphereFieldSample s;
  s.f = std::sin(arg);
  s.surface_gradient =
      2.0 * pi * std::cos(arg) *
      (Eigen::Vector3d::UnitZ() - t * Eigen::Vector3d(x[0], x[1], x[2]));
  s.laplace_beltrami = 4.0 * pi * pi * (t * t - 1.0) * std::sin(arg) -
                       4.0 * pi * t * std::cos(arg);
  return s;
}

// ---------------------------------------------------------------------------
// Diagnostics.

/// Fill distance of X relative to a dense reference sampling:
///   h = max over reference of the distance to the nearest point of X.
inline double fill_distance(const PointCloud& X, const PointCloud& reference) {
  if (reference.size() < 1) {
    throw std::invalid_argument("fill_distance: reference must be nonempty");
  }
  if (reference.dim() != X.dim()) {
    throw std::invalid_argument("fill_distance: dimension mismatch");
  }
  double h = 0.0;
  for (Eigen::Index r = 0; r < reference.size(); ++r) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < X.size(); ++k) {
      nearest = std::min(
          nearest, (reference.points().row(r) - X.points().row(k)).norm());
    }
    h = std::max(h, nearest);
  }
  return h;
}

}  // namespace kgeom
