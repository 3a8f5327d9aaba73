// End-to-end checks of the command-line tool: exit codes, file formats,
// and byte-level determinism. Each test shells out to the built binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kgeom/csv.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = KGEOM_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "kgeom_cli_stdout.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "kgeom_cli_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("sample: valid surfaces, determinism, bad descriptors") {
  const fs::path dir = temp_dir();

  SECTION("fibonacci sphere sample has unit rows") {
    const fs::path out = dir / "sphere.csv";
    const auto r = run("sample sphere:r=1 --m 64 --sampler fibonacci --out " +
                       out.string());
    REQUIRE(r.exit_code == 0);
    const auto data = kgeom::read_cloud_csv_file(out.string());
    REQUIRE(data.points.rows() == 64);
    for (int i = 0; i < 64; ++i) {
      CHECK(std::abs(data.points.row(i).norm() - 1.0) <= 1e-12);
    }
  }

  SECTION("seeded rejection sampling is byte identical") {
    const fs::path a = dir / "torus_a.csv";
    const fs::path b = dir / "torus_b.csv";
    REQUIRE(run("sample torus:R1=2,R2=0.5 --m 256 --sampler rejection "
                "--seed 7 --out " + a.string()).exit_code == 0);
    REQUIRE(run("sample torus:R1=2,R2=0.5 --m 256 --sampler rejection "
                "--seed 7 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
  }

  SECTION("invalid torus radii exit 2 and name the constraint") {
    const auto r = run("sample torus:R1=0.5,R2=2 --m 16");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("R1 > R2") != std::string::npos);
  }

  SECTION("unknown surface exits 2") {
    CHECK(run("sample klein-bottle --m 16").exit_code == 2);
  }

  SECTION("unwritable output path exits 3") {
    CHECK(run("sample sphere:r=1 --m 8 --out /nonexistent-dir/x.csv")
              .exit_code == 3);
  }
}

TEST_CASE("fit: signature models, exit codes, reports") {
  const fs::path dir = temp_dir();
  const fs::path cloud = dir / "circle.csv";
  REQUIRE(run("sample ellipse:a=1,b=1 --m 64 --out " + cloud.string())
              .exit_code == 0);

  SECTION("--ones fit interpolates and reports levels") {
    const fs::path model = dir / "circle_model.json";
    const auto r = run("fit " + cloud.string() +
                       " --ones --kernel laplace:eps=1 --alpha 0 --out " +
                       model.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("residual=") != std::string::npos);
    CHECK(r.output.find("mean=1") != std::string::npos);
    CHECK(fs::exists(model));
  }

  SECTION("regression reports a mean level strictly inside (0, 1)") {
    const fs::path noisy = dir / "noisy.csv";
    REQUIRE(run("sample ellipse:a=1,b=0.5 --m 32 --out " + noisy.string())
                .exit_code == 0);
    const fs::path model = dir / "noisy_model.json";
    const auto r = run("fit " + noisy.string() +
                       " --ones --kernel laplace:eps=1 --alpha 0.1 --out " +
                       model.string());
    REQUIRE(r.exit_code == 0);
    const auto pos = r.output.find("mean=");
    REQUIRE(pos != std::string::npos);
    const double mean = std::stod(r.output.substr(pos + 5));
    CHECK(mean > 0.0);
    CHECK(mean < 1.0);
  }

  SECTION("row-count mismatch in the values file exits 2") {
    const fs::path values = dir / "bad_values.csv";
    {
      std::ofstream out(values);
      out << "x1,x2,y\n0,0,1\n";
    }
    const auto r = run("fit " + cloud.string() + " --values " +
                       values.string() + " --out " +
                       (dir / "never.json").string());
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("geometry: frame tables and degenerate flags") {
  const fs::path dir = temp_dir();
  const fs::path cloud = dir / "patch.csv";
  const fs::path model = dir / "patch_model.json";
  REQUIRE(run("sample quad:a=1,b=1,h=0.5,n=16 --sampler grid --out " +
              cloud.string()).exit_code == 0);
  // alpha keeps the solver's symmetry-breaking noise below tau-grad, so
  // the analytically flat origin is actually flagged
  REQUIRE(run("fit " + cloud.string() +
              " --ones --kernel laplace:eps=1 --alpha 1e-6 --out " +
              model.string()).exit_code == 0);

  SECTION("degenerate origin is flagged, batch continues") {
    const fs::path queries = dir / "queries.csv";
    {
      std::ofstream out(queries);
      out << "x1,x2,x3\n0,0,0\n0.25,0.125,0.0234375\n";
    }
    const fs::path table = dir / "frames.csv";
    const auto r = run("geometry " + model.string() + " " + queries.string() +
                       " --out " + table.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(table);
    CHECK(text.find("DEGENERATE") != std::string::npos);
    CHECK(text.find("OK") != std::string::npos);
  }

  SECTION("pure laplace model refuses curvature queries with exit 4") {
    const fs::path lap_model = dir / "lap_model.json";
    REQUIRE(run("fit " + cloud.string() +
                " --ones --kernel laplace --alpha 1e-6 --out " +
                lap_model.string()).exit_code == 0);
    const fs::path queries = dir / "q1.csv";
    {
      std::ofstream out(queries);
      out << "x1,x2,x3\n0.25,0.125,0.0234375\n";
    }
    CHECK(run("geometry " + lap_model.string() + " " + queries.string())
              .exit_code == 4);
  }
}

TEST_CASE("operator: apply vs assemble consistency") {
  const fs::path dir = temp_dir();
  const fs::path cloud = dir / "sphere64.csv";
  REQUIRE(run("sample sphere:r=1 --m 64 --out " + cloud.string())
              .exit_code == 0);

  // values f = x3 on the sample, written as a values-on-cloud file
  const auto data = kgeom::read_cloud_csv_file(cloud.string());
  const fs::path values = dir / "values.csv";
  {
    Eigen::VectorXd y = data.points.col(2);
    std::ofstream out(values);
    kgeom::write_cloud_csv(out, data.points, &y);
  }

  const fs::path applied = dir / "applied.csv";
  REQUIRE(run("operator " + cloud.string() + " --values " + values.string() +
              " --kernel laplace:eps=1 --alpha 1e-4 --kind lb --apply "
              "--out " + applied.string()).exit_code == 0);

  const fs::path matrix = dir / "matrix.csv";
  REQUIRE(run("operator " + cloud.string() + " --values " + values.string() +
              " --kernel laplace:eps=1 --alpha 1e-4 --kind lb --assemble "
              "--out " + matrix.string()).exit_code == 0);

  // offline multiply of the assembled matrix reproduces --apply
  std::ifstream in(matrix);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("kind=lb") != std::string::npos);
  Eigen::MatrixXd M(64, 64);
  for (int r = 0; r < 64; ++r) {
    std::string line;
    REQUIRE(std::getline(in, line));
    std::istringstream ss(line);
    std::string field;
    for (int c = 0; c < 64; ++c) {
      REQUIRE(std::getline(ss, field, ','));
      M(r, c) = std::stod(field);
    }
  }
  const Eigen::VectorXd via_matrix = M * data.points.col(2);
  const auto applied_data = kgeom::read_cloud_csv_file(applied.string());
  REQUIRE(applied_data.values.has_value());
  CHECK((via_matrix - *applied_data.values).norm() <=
        1e-10 * via_matrix.norm());

  SECTION("constant values give zero surface gradient rows") {
    const fs::path grad_out = dir / "grad.csv";
    REQUIRE(run("operator " + cloud.string() +
                " --ones --kernel laplace:eps=1 --alpha 1e-4 --kind grad "
                "--apply --out " + grad_out.string()).exit_code == 0);
    std::ifstream gin(grad_out);
    std::string line;
    std::getline(gin, line);  // header
    while (std::getline(gin, line)) {
      std::istringstream ss(line);
      std::string field;
      double maxg = 0.0;
      for (int c = 0; c < 6; ++c) {
        REQUIRE(std::getline(ss, field, ','));
        if (c >= 3) maxg = std::max(maxg, std::abs(std::stod(field)));
      }
      CHECK(maxg <= 1e-8);
    }
  }
}

TEST_CASE("contour: grids and polylines") {
  const fs::path dir = temp_dir();
  const fs::path cloud = dir / "ellipse.csv";
  const fs::path model = dir / "ellipse_model.json";
  REQUIRE(run("sample ellipse:a=1,b=0.5 --m 32 --out " + cloud.string())
              .exit_code == 0);
  REQUIRE(run("fit " + cloud.string() +
              " --ones --kernel laplace:eps=1 --alpha 0 --out " +
              model.string()).exit_code == 0);

  SECTION("grid export has res^2 rows") {
    const fs::path grid = dir / "grid.csv";
    REQUIRE(run("contour " + model.string() + " --res 32 --grid-out " +
                grid.string() + " --out " + (dir / "poly.csv").string())
                .exit_code == 0);
    std::ifstream in(grid);
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 32 * 32);
  }

  SECTION("level 1 polyline is closed") {
    const fs::path poly = dir / "poly1.csv";
    REQUIRE(run("contour " + model.string() + " --level 1 --res 96 --out " +
                poly.string()).exit_code == 0);
    const std::string text = slurp(poly);
    CHECK(text.find("components=") != std::string::npos);
    // first and last vertex of component 0 coincide
    std::istringstream in(text);
    std::string line, first, last;
    std::getline(in, line);  // comment
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.rfind("0,", 0) == 0) {
        if (first.empty()) first = line;
        last = line;
      }
    }
    CHECK(first.substr(2) == last.substr(2));
  }

  SECTION("malformed box exits 2") {
    CHECK(run("contour " + model.string() + " --box 0,1").exit_code == 2);
    CHECK(run("contour " + model.string() + " --box 1,0,0,1").exit_code == 2);
  }
}

TEST_CASE("experiment: reports and exit codes") {
  const auto r = run("experiment noisy-ellipse");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("| quantity |") != std::string::npos);
  CHECK(r.output.find("overall: pass") != std::string::npos);

  CHECK(run("experiment no-such-experiment").exit_code == 2);
}
