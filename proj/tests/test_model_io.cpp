#include <catch2/catch_amalgamated.hpp>

#include "kgeom/interpolant.hpp"
#include "kgeom/model_io.hpp"
#include "kgeom/rng.hpp"

using namespace kgeom;

namespace {

Model fitted_example() {
  Rng rng(101);
  Eigen::MatrixXd pts(12, 3);
  for (int r = 0; r < 12; ++r) {
    pts.row(r) = rng.unit_vector(3).transpose();
  }
  Eigen::VectorXd y(12);
  for (int r = 0; r < 12; ++r) y[r] = rng.uniform(-2.0, 2.0);
  return fit(KernelSpec::regularized_laplace(0.7), PointCloud(pts), y, 0.025)
      .first;
}

}  // namespace

TEST_CASE("model round trip is bit exact") {
  const Model model = fitted_example();
  const Model loaded = deserialize_model(serialize_model(model));

  CHECK(loaded.spec.family == model.spec.family);
  CHECK(loaded.spec.epsilon == model.spec.epsilon);
  CHECK(loaded.alpha == model.alpha);
  CHECK(loaded.centers == model.centers);
  CHECK(loaded.coefficients == model.coefficients);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = rng.uniform(0.0, 2.0) * rng.unit_vector(3);
    const double a = evaluate_jet(model, x, 0).value;
    const double b = evaluate_jet(loaded, x, 0).value;
    CHECK(a == b);
  }
}

TEST_CASE("malformed model documents are rejected") {
  const Model model = fitted_example();
  const std::string good = serialize_model(model);

  SECTION("truncated file") {
    CHECK_THROWS_AS(deserialize_model(good.substr(0, good.size() / 2)),
                    MalformedModelFile);
  }

  SECTION("dimension mismatch") {
    auto j = model_to_json(model);
    j["dim"] = 2;
    CHECK_THROWS_AS(model_from_json(j), MalformedModelFile);
  }

  SECTION("coefficient count mismatch") {
    auto j = model_to_json(model);
    j["coefficients"].push_back(0.5);
    CHECK_THROWS_AS(model_from_json(j), MalformedModelFile);
  }

  SECTION("unknown version") {
    auto j = model_to_json(model);
    j["version"] = 99;
    CHECK_THROWS_AS(model_from_json(j), MalformedModelFile);
  }

  SECTION("unknown kernel family") {
    auto j = model_to_json(model);
    j["kernel"]["family"] = "matern";
    CHECK_THROWS_AS(model_from_json(j), MalformedModelFile);
  }

  SECTION("missing field") {
    auto j = model_to_json(model);
    j.erase("alpha");
    CHECK_THROWS_AS(model_from_json(j), MalformedModelFile);
  }
}
