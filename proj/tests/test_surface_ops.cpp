#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kgeom/geometry.hpp"
#include "kgeom/rng.hpp"
#include "kgeom/surface_ops.hpp"
#include "kgeom/testbeds.hpp"

using namespace kgeom;
using Catch::Approx;

namespace {

// Path-consistency checks run at alpha = 1e-4: both routes share the
// factorization, and this conditioning keeps two different application
// orders of it within the 1e-10 budget.
constexpr double kPathAlpha = 1e-4;

struct SphereSetup {
  PointCloud X;
  Eigen::VectorXd Y;
  Model sig;
  Model f_model;
};

SphereSetup sphere_setup(int m, double alpha) {
  const PointCloud X = fibonacci_sphere(m);
  Eigen::VectorXd Y(X.size());
  for (Eigen::Index j = 0; j < X.size(); ++j) {
    Y[j] = sphere_test_function(X.point(j)).f;
  }
  const auto spec = KernelSpec::regularized_laplace(1.0);
  Model sig = signature_model(spec, X, alpha);
  Model f_model = fit(spec, X, Y, alpha).first;
  return {X, Y, std::move(sig), std::move(f_model)};
}

}  // namespace

TEST_CASE("surface gradient basics") {
  auto setup = sphere_setup(128, 1e-10);
  Rng rng(3);

  SECTION("constant data has zero surface gradient") {
    const double c = 2.5;
    const Model const_model =
        fit(setup.sig.spec, setup.X, c * Eigen::VectorXd::Ones(setup.X.size()),
            1e-10)
            .first;
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Vector3d x = rng.unit_vector(3);
      const auto n = implied_normal(setup.sig, x);
      const Eigen::VectorXd g = surface_gradient(setup.sig, const_model, x);
      CHECK(g.norm() <= 1e-10 * std::abs(c) * n.grad_norm);
    }
  }

  SECTION("tangency: output orthogonal to the implied normal") {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Vector3d x = rng.unit_vector(3);
      const auto n = implied_normal(setup.sig, x);
      const Eigen::VectorXd gf =
          evaluate_jet(setup.f_model, x, 1).gradient;
      const Eigen::VectorXd g = surface_gradient(setup.sig, setup.f_model, x);
      CHECK(std::abs(g.dot(n.normal)) <= 1e-12 * gf.norm());
    }
  }

  SECTION("accuracy against the analytic tangential projection, m=256") {
    auto fine = sphere_setup(256, 1e-10);
    Rng eval_rng(17);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < 32; ++j) {
      const Eigen::Vector3d x = eval_rng.unit_vector(3);
      const Eigen::VectorXd g = surface_gradient(fine.sig, fine.f_model, x);
      const auto ref = sphere_test_function(x);
      num = std::max(num, (g - ref.surface_gradient).norm());
      den = std::max(den, ref.surface_gradient.norm());
    }
    CHECK(num / den <= 1e-3);
  }

  SECTION("mismatched centers are rejected") {
    auto other = sphere_setup(64, 1e-10);
    CHECK_THROWS_AS(surface_gradient(setup.sig, other.f_model,
                                     Eigen::Vector3d(1.0, 0.0, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("laplace-beltrami pointwise") {
  SECTION("accuracy on the sphere, m=256") {
    auto fine = sphere_setup(256, 1e-10);
    Rng eval_rng(19);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < 32; ++j) {
      const Eigen::Vector3d x = eval_rng.unit_vector(3);
      const double lb = laplace_beltrami(fine.sig, fine.f_model, x);
      const auto ref = sphere_test_function(x);
      num = std::max(num, std::abs(lb - ref.laplace_beltrami));
      den = std::max(den, std::abs(ref.laplace_beltrami));
    }
    CHECK(num / den <= 1e-3);
  }

  SECTION("linearity in the data") {
    const PointCloud X = fibonacci_sphere(96);
    const auto spec = KernelSpec::regularized_laplace(1.0);
    const Model sig = signature_model(spec, X, kPathAlpha);
    Rng rng(23);
    Eigen::VectorXd y1(X.size()), y2(X.size());
    for (Eigen::Index i = 0; i < X.size(); ++i) {
      y1[i] = rng.uniform(-1.0, 1.0);
      y2[i] = rng.uniform(-1.0, 1.0);
    }
    const double a = 1.7, b = -0.6;
    const Model m1 = fit(spec, X, y1, kPathAlpha).first;
    const Model m2 = fit(spec, X, y2, kPathAlpha).first;
    const Model m12 = fit(spec, X, (a * y1 + b * y2).eval(), kPathAlpha).first;
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Vector3d x = rng.unit_vector(3);
      const double lhs = laplace_beltrami(sig, m12, x);
      const double rhs = a * laplace_beltrami(sig, m1, x) +
                         b * laplace_beltrami(sig, m2, x);
      CHECK(lhs == Approx(rhs).epsilon(1e-9).margin(1e-9));
    }
  }
}

TEST_CASE("operator assembly") {
  const PointCloud X = fibonacci_sphere(128);
  const auto spec = KernelSpec::regularized_laplace(1.0);
  Rng rng(29);

  SECTION("square LB matrix reproduces the pointwise operator") {
    const auto op = assemble_operator(spec, X, kPathAlpha, X,
                                      OperatorKind::LaplaceBeltrami);
    REQUIRE(op.matrix.rows() == 128);
    REQUIRE(op.matrix.cols() == 128);
    const Model sig = signature_model(spec, X, kPathAlpha);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd y(X.size());
      for (Eigen::Index i = 0; i < X.size(); ++i) y[i] = rng.uniform(-1, 1);
      const Model f_model = fit(spec, X, y, kPathAlpha).first;
      const Eigen::VectorXd via_matrix = op.matrix * y;
      Eigen::VectorXd via_pointwise(X.size());
      for (Eigen::Index r = 0; r < X.size(); ++r) {
        via_pointwise[r] = laplace_beltrami(sig, f_model, X.point(r));
      }
      CHECK((via_matrix - via_pointwise).norm() <=
            1e-10 * via_pointwise.norm());
    }
  }

  SECTION("stacked gradient components reproduce surface_gradient") {
    Eigen::MatrixXd eval_pts(16, 3);
    for (int r = 0; r < 16; ++r) {
      eval_pts.row(r) = rng.unit_vector(3).transpose();
    }
    const PointCloud eval(eval_pts);
    std::vector<OperatorMatrix> comps;
    for (int c = 0; c < 3; ++c) {
      comps.push_back(assemble_operator(
          spec, X, kPathAlpha, eval,
          OperatorKind::SurfaceGradientComponent, c));
    }
    const Model sig = signature_model(spec, X, kPathAlpha);
    Eigen::VectorXd y(X.size());
    for (Eigen::Index i = 0; i < X.size(); ++i) y[i] = rng.uniform(-1, 1);
    const Model f_model = fit(spec, X, y, kPathAlpha).first;
    Eigen::MatrixXd pointwise(eval.size(), 3), via_matrix(eval.size(), 3);
    for (Eigen::Index r = 0; r < eval.size(); ++r) {
      pointwise.row(r) =
          surface_gradient(sig, f_model, eval.point(r)).transpose();
    }
    for (int c = 0; c < 3; ++c) via_matrix.col(c) = comps[c].matrix * y;
    CHECK((via_matrix - pointwise).norm() <= 1e-10 * pointwise.norm());
  }

  SECTION("assembled matrices are linear to machine precision") {
    Eigen::MatrixXd eval_pts(8, 3);
    for (int r = 0; r < 8; ++r) {
      eval_pts.row(r) = rng.unit_vector(3).transpose();
    }
    const auto op = assemble_operator(spec, X, kPathAlpha,
                                      PointCloud(eval_pts),
                                      OperatorKind::LaplaceBeltrami);
    Eigen::VectorXd y1(X.size()), y2(X.size());
    for (Eigen::Index i = 0; i < X.size(); ++i) {
      y1[i] = rng.uniform(-1, 1);
      y2[i] = rng.uniform(-1, 1);
    }
    const double a = 0.3, b = -1.9;
    const Eigen::VectorXd lhs = op.matrix * (a * y1 + b * y2);
    const Eigen::VectorXd rhs = a * (op.matrix * y1) + b * (op.matrix * y2);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }

  SECTION("non-square shapes and degenerate-point reporting") {
    Eigen::MatrixXd eval_pts(4, 3);
    for (int r = 0; r < 4; ++r) {
      eval_pts.row(r) = rng.unit_vector(3).transpose();
    }
    const auto op = assemble_operator(spec, X, kPathAlpha,
                                      PointCloud(eval_pts),
                                      OperatorKind::LaplaceBeltrami);
    CHECK(op.matrix.rows() == 4);
    CHECK(op.matrix.cols() == 128);
    CHECK(op.num_centers == 128);

    // A symmetric 2-d ring makes its center degenerate; the failure
    // must name the evaluation point index.
    const PointCloud ring =
        curve_sample(AnalyticSurface{Ellipse{1.0, 1.0}}, 12);
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 0.0, 0.0, 0.0;
    try {
      assemble_operator(KernelSpec::regularized_laplace(1.0), ring, 0.0,
                        PointCloud(bad), OperatorKind::LaplaceBeltrami);
      FAIL("expected DegenerateGradient");
    } catch (const DegenerateGradient& e) {
      CHECK(std::string(e.what()).find("point 1") != std::string::npos);
    }
  }
}
