// Command-line front end: sampling, fitting, geometry queries, operator
// assembly/application, contour export, and the reference experiments.
//
// Exit codes: 0 success, 2 usage/input error, 3 I/O failure,
// 4 numerical failure, 5 experiment acceptance failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgeom/kgeom.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitAcceptance = 5;

struct SurfaceDescriptor {
  kgeom::AnalyticSurface surface;
  int grid_n = 16;  // quad grid resolution, from the descriptor
};

std::map<std::string, double> parse_kv(const std::string& args,
                                       const std::string& descriptor) {
  std::map<std::string, double> kv;
  if (args.empty()) return kv;
  std::istringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad surface descriptor '" + descriptor +
                                  "': expected key=value near '" + item + "'");
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size() - eq - 1) {
      throw std::invalid_argument("bad surface descriptor '" + descriptor +
                                  "': cannot parse value in '" + item + "'");
    }
    kv[item.substr(0, eq)] = value;
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key,
            double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const double v = it->second;
  kv.erase(it);
  return v;
}

SurfaceDescriptor parse_surface(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string name = descriptor.substr(0, colon);
  auto kv = parse_kv(
      colon == std::string::npos ? "" : descriptor.substr(colon + 1),
      descriptor);

  SurfaceDescriptor out;
  if (name == "sphere") {
    out.surface = kgeom::Sphere{take(kv, "r", 1.0)};
  } else if (name == "torus") {
    out.surface = kgeom::Torus{take(kv, "R1", 2.0), take(kv, "R2", 0.5)};
  } else if (name == "ellipsoid") {
    out.surface = kgeom::Ellipsoid{take(kv, "a", 2.0), take(kv, "b", 0.5),
                                   take(kv, "c", 1.0)};
  } else if (name == "quad") {
    out.surface = kgeom::QuadraticPatch{take(kv, "a", 1.0), take(kv, "b", 2.0),
                                        take(kv, "h", 0.5)};
    out.grid_n = static_cast<int>(take(kv, "n", 16.0));
  } else if (name == "ellipse") {
    out.surface = kgeom::Ellipse{take(kv, "a", 1.0), take(kv, "b", 0.5)};
  } else if (name == "cubic-curve") {
    out.surface = kgeom::CubicClosedCurve{};
  } else if (name == "triangle") {
    out.surface = kgeom::Triangle{};
  } else if (name == "square") {
    out.surface = kgeom::Square{take(kv, "side", 2.0)};
  } else if (name == "semi-ellipse") {
    out.surface = kgeom::SemiEllipse{take(kv, "a", 1.0), take(kv, "b", 0.5)};
  } else {
    throw std::invalid_argument("unknown surface '" + name + "'");
  }
  if (!kv.empty()) {
    throw std::invalid_argument("bad surface descriptor '" + descriptor +
                                "': unknown key '" + kv.begin()->first + "'");
  }
  kgeom::validate_surface(out.surface);
  return out;
}

Eigen::MatrixXd sample_surface(const SurfaceDescriptor& desc, int m,
                               std::string sampler, std::uint64_t seed) {
  using namespace kgeom;
  const AnalyticSurface& s = desc.surface;

  if (sampler.empty()) {
    if (std::holds_alternative<Sphere>(s) || std::holds_alternative<Torus>(s) ||
        std::holds_alternative<Ellipsoid>(s)) {
      sampler = "fibonacci";
    } else if (std::holds_alternative<QuadraticPatch>(s)) {
      sampler = "grid";
    } else {
      sampler = "equispaced";
    }
  }

  if (const auto* sphere = std::get_if<Sphere>(&s)) {
    if (sampler != "fibonacci") {
      throw std::invalid_argument("sphere supports --sampler fibonacci");
    }
    return sphere->r * fibonacci_sphere(m).points();
  }
  if (const auto* torus = std::get_if<Torus>(&s)) {
    if (sampler == "fibonacci") {
      return fibonacci_torus(m, torus->R1, torus->R2).points();
    }
    if (sampler == "rejection") {
      return torus_rejection_sample(m, torus->R1, torus->R2, seed).points();
    }
    throw std::invalid_argument(
        "torus supports --sampler fibonacci or rejection");
  }
  if (const auto* e = std::get_if<Ellipsoid>(&s)) {
    if (sampler == "fibonacci") {
      return ellipsoid_fibonacci(m, e->a, e->b, e->c).points();
    }
    if (sampler == "random") {
      return ellipsoid_sample(m, e->a, e->b, e->c, seed).points();
    }
    throw std::invalid_argument(
        "ellipsoid supports --sampler fibonacci or random");
  }
  if (const auto* q = std::get_if<QuadraticPatch>(&s)) {
    if (sampler == "grid") {
      return quadratic_patch_grid(q->a, q->b, q->half_extent, desc.grid_n)
          .points();
    }
    if (sampler == "random") {
      return quadratic_patch_random(q->a, q->b, q->half_extent, m, seed)
          .points();
    }
    throw std::invalid_argument("quad supports --sampler grid or random");
  }
  // Remaining variants are curves.
  CurveSampleOptions options;
  if (sampler == "subset") {
    options.mode = CurveSampleMode::Subset;
  } else if (sampler != "equispaced") {
    throw std::invalid_argument(
        "curves support --sampler equispaced or subset");
  }
  return curve_sample(s, m, options).points();
}

/// Output sink: stdout by default, a file when --out was given.
class Output {
public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw std::ios_base::failure("cannot open '" + path_ + "'");
    }
  }

  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

  void finish() {
    if (!path_.empty() && !file_) {
      throw std::ios_base::failure("write to '" + path_ + "' failed");
    }
  }

private:
  std::string path_;
  std::ofstream file_;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

Eigen::VectorXd values_from(const kgeom::CloudData& cloud,
                            const std::string& values_path, bool ones) {
  if (ones) return Eigen::VectorXd::Ones(cloud.points.rows());
  if (!values_path.empty()) {
    const auto data = kgeom::read_cloud_csv_file(values_path);
    if (!data.values) {
      throw kgeom::CsvFormatError("values file '" + values_path +
                                  "' has no y column");
    }
    if (data.values->size() != cloud.points.rows()) {
      throw kgeom::CsvFormatError(
          "values file row count " + std::to_string(data.values->size()) +
          " does not match point count " +
          std::to_string(cloud.points.rows()));
    }
    return *data.values;
  }
  if (cloud.values) return *cloud.values;
  throw kgeom::CsvFormatError(
      "no values: pass --ones, --values <file>, or a cloud with a y column");
}

int run(int argc, char** argv) {
  CLI::App app{
      "kernel interpolation/regression on point clouds, implicit-surface "
      "geometry, and meshfree surface operators"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string kernel_text = "laplace:eps=1";
  double alpha = 0.0;
  std::uint64_t seed = 1;
  double tau_grad = kgeom::kDefaultGradTol;
  std::string out_path;
  app.add_option("--kernel", kernel_text,
                 "kernel spec: gauss[:l=<l>], laplace, laplace:eps=<e>");
  app.add_option("--alpha", alpha, "regularization weight (>= 0)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--tau-grad", tau_grad, "degenerate-gradient threshold");
  app.add_option("--out", out_path, "output path (default: stdout)");

  // --- sample ---------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "sample an analytic surface");
  std::string surface_text;
  int sample_m = 64;
  std::string sampler;
  sample->add_option("surface", surface_text, "surface descriptor")
      ->required();
  sample->add_option("--m", sample_m, "number of points");
  sample->add_option("--sampler", sampler,
                     "fibonacci | rejection | random | grid | equispaced | "
                     "subset (default depends on the surface)");

  // --- fit ------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "fit an interpolant/regressor");
  std::string fit_cloud_path;
  std::string fit_values_path;
  bool fit_ones = false;
  fit_cmd->add_option("cloud", fit_cloud_path, "point cloud CSV")->required();
  fit_cmd->add_option("--values", fit_values_path, "values-on-cloud CSV");
  fit_cmd->add_flag("--ones", fit_ones,
                    "fit the all-ones data (signature function)");

  // --- geometry -------------------------------------------------------
  auto* geometry = app.add_subcommand(
      "geometry", "per-point frames (normal, curvatures) of a fitted model");
  std::string geo_model_path;
  std::string geo_query_path;
  geometry->add_option("model", geo_model_path, "model JSON file")->required();
  geometry->add_option("queries", geo_query_path, "query points CSV")
      ->required();

  // --- operator -------------------------------------------------------
  auto* op_cmd = app.add_subcommand(
      "operator", "surface gradient / Laplace-Beltrami of cloud data");
  std::string op_cloud_path, op_values_path, op_eval_path, op_kind = "lb";
  std::string sig_kernel_text;
  bool op_apply = false, op_assemble = false, op_ones = false;
  op_cmd->add_option("cloud", op_cloud_path, "point cloud CSV")->required();
  op_cmd->add_option("--values", op_values_path, "values-on-cloud CSV");
  op_cmd->add_flag("--ones", op_ones, "use all-ones values");
  op_cmd->add_option("--eval", op_eval_path,
                     "evaluation points CSV (default: the cloud)");
  op_cmd->add_option("--kind", op_kind, "lb | grad | grad<i>");
  op_cmd->add_option("--sig-kernel", sig_kernel_text,
                     "separate kernel for the signature function");
  op_cmd->add_flag("--apply", op_apply, "write operator values (default)");
  op_cmd->add_flag("--assemble", op_assemble, "write the dense matrix");

  // --- contour --------------------------------------------------------
  auto* contour = app.add_subcommand(
      "contour", "grid export and level-set polylines of a model (d = 2)");
  std::string contour_model_path, level_text = "1", box_text, grid_out;
  int resolution = 128;
  contour->add_option("model", contour_model_path, "model JSON file")
      ->required();
  contour->add_option("--level", level_text, "level value or 'mean'");
  contour->add_option("--box", box_text,
                      "lo1,hi1,lo2,hi2,... (default: cloud bbox +25%)");
  contour->add_option("--res", resolution, "grid resolution per axis");
  contour->add_option("--grid-out", grid_out, "also write the value grid CSV");

  // --- experiment -----------------------------------------------------
  auto* experiment = app.add_subcommand(
      "experiment", "run a reference experiment and check its thresholds");
  std::string experiment_name;
  int experiment_m = 0;
  experiment
      ->add_option("name", experiment_name,
                   "quad-curvatures | quad-degenerate | sphere-lb | "
                   "torus-random | torus-fibonacci | ellipsoid-gauss | "
                   "noisy-ellipse")
      ->required();
  experiment->add_option("--m", experiment_m, "single discretization level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // -------------------------------------------------------------------
  if (sample->parsed()) {
    const auto desc = parse_surface(surface_text);
    const Eigen::MatrixXd pts = sample_surface(desc, sample_m, sampler, seed);
    Output out(out_path);
    kgeom::write_cloud_csv(out.stream(), pts);
    out.finish();
    return kExitOk;
  }

  if (fit_cmd->parsed()) {
    const auto cloud = kgeom::read_cloud_csv_file(fit_cloud_path);
    const Eigen::VectorXd Y = values_from(cloud, fit_values_path, fit_ones);
    const auto spec = kgeom::parse_kernel_spec(kernel_text);
    kgeom::PointCloud X(cloud.points);
    const auto [model, report] = kgeom::fit(spec, X, Y, alpha);
    if (out_path.empty()) {
      throw std::invalid_argument("fit requires --out <model.json>");
    }
    kgeom::save_model(model, out_path);
    std::cout << "solve: residual=" << report.residual_norm
              << " jitter=" << report.jitter_added
              << " attempts=" << report.cholesky_attempts << "\n";
    if (fit_ones) {
      const auto stats = kgeom::level_stats(model, X);
      std::cout << "levels: mean=" << stats.mean_level
                << " min=" << stats.min_level << " max=" << stats.max_level
                << " residual_rms=" << stats.residual_rms << "\n";
    }
    std::cout << "model written to " << out_path << "\n";
    return kExitOk;
  }

  if (geometry->parsed()) {
    const kgeom::Model model = kgeom::load_model(geo_model_path);
    const auto queries = kgeom::read_cloud_csv_file(geo_query_path);
    if (queries.points.cols() != model.dim()) {
      throw std::invalid_argument("query dimension does not match the model");
    }
    const int d = model.dim();
    Output out(out_path);
    auto& os = out.stream();
    for (int c = 0; c < d; ++c) os << "x" << (c + 1) << ",";
    os << "status,";
    for (int c = 0; c < d; ++c) os << "nu" << (c + 1) << ",";
    os << "grad_norm,";
    for (int c = 0; c + 1 < d; ++c) os << "kappa" << (c + 1) << ",";
    os << "H,K_gauss\n";
    for (Eigen::Index r = 0; r < queries.points.rows(); ++r) {
      const Eigen::VectorXd x = queries.points.row(r).transpose();
      for (int c = 0; c < d; ++c) os << format_double(x[c]) << ",";
      try {
        const auto frame = kgeom::curvatures(model, x, tau_grad);
        os << "OK,";
        for (int c = 0; c < d; ++c) os << format_double(frame.normal[c]) << ",";
        os << format_double(frame.grad_norm) << ",";
        for (int c = 0; c + 1 < d; ++c) {
          os << format_double(frame.principal_curvatures[c]) << ",";
        }
        os << format_double(frame.mean_curvature) << ","
           << format_double(frame.gauss_curvature) << "\n";
      } catch (const kgeom::DegenerateGradient& e) {
        os << "DEGENERATE,";
        for (int c = 0; c < d; ++c) os << "nan,";
        os << format_double(e.grad_norm()) << ",";
        for (int c = 0; c + 1 < d; ++c) os << "nan,";
        os << "nan,nan\n";
      }
    }
    out.finish();
    return kExitOk;
  }

  if (op_cmd->parsed()) {
    using kgeom::OperatorKind;
    const auto cloud = kgeom::read_cloud_csv_file(op_cloud_path);
    kgeom::PointCloud X(cloud.points);
    const int d = X.dim();
    const auto spec = kgeom::parse_kernel_spec(kernel_text);
    const auto sig_spec = sig_kernel_text.empty()
                              ? spec
                              : kgeom::parse_kernel_spec(sig_kernel_text);
    const kgeom::PointCloud eval_points =
        op_eval_path.empty()
            ? X
            : kgeom::PointCloud(kgeom::read_cloud_csv_file(op_eval_path).points);
    if (eval_points.dim() != d) {
      throw std::invalid_argument("evaluation points dimension mismatch");
    }

    if (op_assemble && op_apply) {
      throw std::invalid_argument("choose one of --apply / --assemble");
    }

    if (op_assemble) {
      OperatorKind kind = OperatorKind::LaplaceBeltrami;
      int component = -1;
      if (op_kind != "lb") {
        if (op_kind.rfind("grad", 0) != 0 || op_kind.size() != 5) {
          throw std::invalid_argument(
              "--assemble supports --kind lb or grad<i>");
        }
        kind = OperatorKind::SurfaceGradientComponent;
        component = op_kind[4] - '1';
      }
      const auto op = kgeom::assemble_operator(
          spec, X, alpha, eval_points, kind, component, tau_grad,
          sig_kernel_text.empty() ? std::nullopt
                                  : std::make_optional(sig_spec));
      Output out(out_path);
      kgeom::write_operator_csv(out.stream(), op);
      out.finish();
      return kExitOk;
    }

    // --apply (the default)
    const Eigen::VectorXd Y = values_from(cloud, op_values_path, op_ones);
    const kgeom::Model sig = kgeom::signature_model(sig_spec, X, alpha);
    const kgeom::Model f_model = kgeom::fit(spec, X, Y, alpha).first;
    Output out(out_path);
    auto& os = out.stream();
    const bool full_grad = op_kind == "grad";
    int component = -1;
    if (!full_grad && op_kind != "lb") {
      if (op_kind.rfind("grad", 0) != 0 || op_kind.size() != 5) {
        throw std::invalid_argument("--kind must be lb, grad, or grad<i>");
      }
      component = op_kind[4] - '1';
      if (component < 0 || component >= d) {
        throw std::invalid_argument("gradient component out of range");
      }
    }
    for (int c = 0; c < d; ++c) os << "x" << (c + 1) << ",";
    if (full_grad) {
      for (int c = 0; c < d; ++c) os << "g" << (c + 1) << (c + 1 < d ? "," : "");
      os << "\n";
    } else {
      // scalar operator values go in the standard y column
      os << "y\n";
    }
    for (Eigen::Index r = 0; r < eval_points.size(); ++r) {
      const Eigen::VectorXd x = eval_points.point(r);
      for (int c = 0; c < d; ++c) os << format_double(x[c]) << ",";
      try {
        if (op_kind == "lb") {
          os << format_double(
                    kgeom::laplace_beltrami(sig, f_model, x, tau_grad))
             << "\n";
        } else {
          const Eigen::VectorXd g =
              kgeom::surface_gradient(sig, f_model, x, tau_grad);
          if (full_grad) {
            for (int c = 0; c < d; ++c) {
              os << format_double(g[c]) << (c + 1 < d ? "," : "");
            }
            os << "\n";
          } else {
            os << format_double(g[component]) << "\n";
          }
        }
      } catch (const kgeom::DegenerateGradient& e) {
        throw kgeom::DegenerateGradient(
            "evaluation point " + std::to_string(r) + ": " + e.what(),
            e.grad_norm());
      }
    }
    out.finish();
    return kExitOk;
  }

  if (contour->parsed()) {
    const kgeom::Model model = kgeom::load_model(contour_model_path);
    const int d = model.dim();
    kgeom::Box box;
    if (box_text.empty()) {
      box = kgeom::default_box(model.centers);
    } else {
      const auto fields = kgeom::detail::split_csv_line(box_text);
      if (static_cast<int>(fields.size()) != 2 * d) {
        throw std::invalid_argument("--box needs " + std::to_string(2 * d) +
                                    " comma-separated numbers");
      }
      box.lo.resize(d);
      box.hi.resize(d);
      for (int i = 0; i < d; ++i) {
        try {
          box.lo[i] = std::stod(fields[2 * i]);
          box.hi[i] = std::stod(fields[2 * i + 1]);
        } catch (const std::exception&) {
          throw std::invalid_argument("--box: cannot parse '" +
                                      fields[2 * i] + "'");
        }
      }
      box.validate();
    }
    if (resolution < 2) throw std::invalid_argument("--res must be >= 2");

    double level = 1.0;
    if (level_text == "mean") {
      level = kgeom::level_stats(model, model.centers).mean_level;
    } else {
      try {
        level = std::stod(level_text);
      } catch (const std::exception&) {
        throw std::invalid_argument("--level must be a number or 'mean'");
      }
    }

    if (!grid_out.empty() || d != 2) {
      // Grid export for any dimension: res^d rows of x1..xd,u.
      Output gout(d == 2 ? grid_out : (grid_out.empty() ? out_path : grid_out));
      auto& os = gout.stream();
      for (int c = 0; c < d; ++c) os << "x" << (c + 1) << ",";
      os << "u\n";
      std::vector<int> idx(d, 0);
      Eigen::VectorXd x(d);
      while (true) {
        for (int c = 0; c < d; ++c) {
          x[c] = box.lo[c] +
                 (box.hi[c] - box.lo[c]) * idx[c] / (resolution - 1);
        }
        for (int c = 0; c < d; ++c) os << format_double(x[c]) << ",";
        os << format_double(kgeom::evaluate_jet(model, x, 0).value) << "\n";
        int c = d - 1;
        while (c >= 0 && ++idx[c] == resolution) idx[c--] = 0;
        if (c < 0) break;
      }
      gout.finish();
      if (d != 2) return kExitOk;
    }

    // d = 2: extract polylines of the chosen level.
    const auto grid = kgeom::sample_grid2d(model, box, resolution);
    const auto polylines = kgeom::extract_level_polylines(grid, level);
    Output out(out_path);
    auto& os = out.stream();
    os << "# level=" << format_double(level) << " components="
       << polylines.size() << "\n";
    os << "component,x1,x2\n";
    for (std::size_t c = 0; c < polylines.size(); ++c) {
      for (const auto& p : polylines[c]) {
        os << c << "," << format_double(p.x()) << "," << format_double(p.y())
           << "\n";
      }
    }
    out.finish();
    return kExitOk;
  }

  if (experiment->parsed()) {
    kgeom::ExperimentOptions opt;
    if (experiment_m > 0) opt.m = experiment_m;
    if (app.count("--alpha") > 0) opt.alpha = alpha;
    if (app.count("--kernel") > 0) {
      opt.kernel = kgeom::parse_kernel_spec(kernel_text);
    }
    opt.seed = seed;
    opt.grad_tol = tau_grad;
    const auto report = kgeom::run_experiment(experiment_name, opt);
    std::cout << kgeom::render_markdown(report);
    if (!out_path.empty()) {
      std::ofstream md(out_path + "/" + report.name + ".md");
      std::ofstream csv(out_path + "/" + report.name + ".csv");
      if (!md || !csv) {
        throw std::ios_base::failure("cannot write report under '" +
                                     out_path + "'");
      }
      md << kgeom::render_markdown(report);
      csv << kgeom::render_csv(report);
    }
    return report.passed() ? kExitOk : kExitAcceptance;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const kgeom::IllConditioned& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kgeom::NonDifferentiableKernel& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kgeom::DegenerateGradient& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const kgeom::CsvFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgeom::MalformedModelFile& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgeom::DuplicatePoints& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
