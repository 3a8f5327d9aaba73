#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kgeom/errors.hpp"
#include "kgeom/interpolant.hpp"

namespace kgeom {

/// Versioned JSON model document:
///   {version, kernel:{family,...}, alpha, dim, centers, coefficients}
/// Numbers are emitted with shortest round-trip precision, so a
/// save/load cycle reproduces every double bit-exactly.
inline nlohmann::json model_to_json(const Model& model) {
  nlohmann::json j;
  j["version"] = 1;
  nlohmann::json kernel;
  switch (model.spec.family) {
    case KernelFamily::Gauss:
      kernel["family"] = "gauss";
      kernel["length_scale"] = model.spec.length_scale;
      break;
    case KernelFamily::Laplace:
      kernel["family"] = "laplace";
      break;
    case KernelFamily::RegularizedLaplace:
      kernel["family"] = "regularized_laplace";
      kernel["epsilon"] = model.spec.epsilon;
      break;
  }
  j["kernel"] = kernel;
  j["alpha"] = model.alpha;
  j["dim"] = model.dim();
  auto centers = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.size(); ++i) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < model.dim(); ++c) row.push_back(model.centers.points()(i, c));
    centers.push_back(std::move(row));
  }
  j["centers"] = std::move(centers);
  auto coeffs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.coefficients.size(); ++i) {
    coeffs.push_back(model.coefficients[i]);
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || j.at("version").get<int>() != 1) {
      throw MalformedModelFile("unsupported model file version");
    }
    const auto& kj = j.at("kernel");
    const std::string family = kj.at("family").get<std::string>();
    KernelSpec spec;
    if (family == "gauss") {
      spec = KernelSpec::gauss(kj.at("length_scale").get<double>());
    } else if (family == "laplace") {
      spec = KernelSpec::laplace();
    } else if (family == "regularized_laplace") {
      spec = KernelSpec::regularized_laplace(kj.at("epsilon").get<double>());
    } else {
      throw MalformedModelFile("unknown kernel family '" + family + "'");
    }

    const int dim = j.at("dim").get<int>();
    const auto& centers = j.at("centers");
    if (!centers.is_array() || centers.empty()) {
      throw MalformedModelFile("model file has no centers");
    }
    Eigen::MatrixXd pts(centers.size(), dim);
    for (std::size_t r = 0; r < centers.size(); ++r) {
      const auto& row = centers[r];
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw MalformedModelFile(
            "center row " + std::to_string(r) +
            " does not match the declared dimension " + std::to_string(dim));
      }
      for (int c = 0; c < dim; ++c) pts(r, c) = row[c].get<double>();
    }

    const auto& coeffs = j.at("coefficients");
    if (!coeffs.is_array() || coeffs.size() != centers.size()) {
      throw MalformedModelFile("coefficient count does not match centers");
    }
    Eigen::VectorXd lambda(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      lambda[i] = coeffs[i].get<double>();
    }

    const double alpha = j.at("alpha").get<double>();
    if (!(alpha >= 0.0)) throw MalformedModelFile("alpha must be >= 0");

    return Model{spec, PointCloud(std::move(pts)), std::move(lambda), alpha};
  } catch (const MalformedModelFile&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedModelFile(std::string("invalid model document: ") +
                             e.what());
  }
}

inline std::string serialize_model(const Model& model) {
  return model_to_json(model).dump(2);
}

inline Model deserialize_model(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw MalformedModelFile("model file is not valid JSON");
  }
  return model_from_json(j);
}

inline void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "'");
  out << serialize_model(model) << '\n';
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace kgeom
