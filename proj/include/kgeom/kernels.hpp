#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "kgeom/errors.hpp"

namespace kgeom {

enum class KernelFamily { Gauss, Laplace, RegularizedLaplace };

/// Radial kernel description. All kernels are functions of the
/// displacement x and depend on it only through |x|:
///
///   Gauss               G(x)   = exp(-|x|^2 / (2 l^2))
///   Laplace             L(x)   = exp(-|x|)
///   RegularizedLaplace  L_e(x) = exp(-sqrt(|x|^2 + eps))
///
/// Gauss and the regularized Laplace are smooth; the pure Laplace kernel
/// has a gradient away from the origin only and never a Hessian.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gauss;
  double epsilon = 0.0;       // smoothing, RegularizedLaplace only
  double length_scale = 1.0;  // Gauss only

  static KernelSpec gauss(double length_scale = 1.0) {
    KernelSpec s{KernelFamily::Gauss, 0.0, length_scale};
    s.validate();
    return s;
  }

  static KernelSpec laplace() {
    return KernelSpec{KernelFamily::Laplace, 0.0, 1.0};
  }

  static KernelSpec regularized_laplace(double epsilon) {
    KernelSpec s{KernelFamily::RegularizedLaplace, epsilon, 1.0};
    s.validate();
    return s;
  }

  void validate() const {
    if (family == KernelFamily::Gauss &&
        !(length_scale > 0.0 && std::isfinite(length_scale))) {
      throw std::invalid_argument("gauss kernel requires length_scale > 0");
    }
    if (family == KernelFamily::RegularizedLaplace &&
        !(epsilon > 0.0 && std::isfinite(epsilon))) {
      throw std::invalid_argument(
          "regularized laplace kernel requires epsilon > 0");
    }
  }

  bool twice_differentiable() const {
    return family != KernelFamily::Laplace;
  }
};

/// Value, gradient, and Hessian of x -> K(x) at a displacement.
/// gradient/hessian are empty when not requested.
struct KernelJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

namespace detail {

// Radial profile phi(s), s = |x|^2, and its first two s-derivatives.
struct RadialProfile {
  double phi;
  double dphi;
  double d2phi;
};

inline RadialProfile radial_profile(const KernelSpec& spec, double s,
                                    int order) {
  RadialProfile p{0.0, 0.0, 0.0};
  switch (spec.family) {
    case KernelFamily::Gauss: {
      const double c = 1.0 / (2.0 * spec.length_scale * spec.length_scale);
      p.phi = std::exp(-c * s);
      if (order >= 1) p.dphi = -c * p.phi;
      if (order >= 2) p.d2phi = c * c * p.phi;
      break;
    }
    case KernelFamily::Laplace:
    case KernelFamily::RegularizedLaplace: {
      const double r = std::sqrt(s + spec.epsilon);
      p.phi = std::exp(-r);
      if (order >= 1) {
        if (r == 0.0) {
          throw NonDifferentiableKernel(
              "laplace kernel has no gradient at the center");
        }
        p.dphi = -p.phi / (2.0 * r);
      }
      if (order >= 2) p.d2phi = p.phi * (r + 1.0) / (4.0 * r * r * r);
      break;
    }
  }
  return p;
}

}  // namespace detail

/// K(dx). Total on finite inputs; radially symmetric by construction.
inline double kernel_value(const KernelSpec& spec,
                           const Eigen::Ref<const Eigen::VectorXd>& dx) {
  return detail::radial_profile(spec, dx.squaredNorm(), 0).phi;
}

/// Exact derivatives of x -> K(x) at dx, via the chain rule on the
/// radial profile: grad = 2 phi'(s) x, hess = 2 phi'(s) I + 4 phi''(s) x x^T.
/// The Hessian is symmetric by construction.
///
/// Throws NonDifferentiableKernel for the pure Laplace kernel when
/// order >= 2, or when order >= 1 at dx = 0.
inline KernelJet kernel_jet(const KernelSpec& spec,
                            const Eigen::Ref<const Eigen::VectorXd>& dx,
                            int order = 2) {
  if (order >= 2 && spec.family == KernelFamily::Laplace) {
    throw NonDifferentiableKernel(
        "laplace kernel is not twice differentiable; use laplace:eps=<e>");
  }
  const double s = dx.squaredNorm();
  const auto p = detail::radial_profile(spec, s, order);

  KernelJet jet;
  jet.value = p.phi;
  if (order >= 1) jet.gradient = 2.0 * p.dphi * dx;
  if (order >= 2) {
    // evaluate the outer product first so the scalar multiplies bitwise
    // identical (i,j)/(j,i) entries: the Hessian comes out exactly
    // symmetric
    const Eigen::MatrixXd outer = dx * dx.transpose();
    jet.hessian = (4.0 * p.d2phi) * outer;
    jet.hessian.diagonal().array() += 2.0 * p.dphi;
  }
  return jet;
}

/// Parse the CLI/config encoding: `gauss[:l=<l>]`, `laplace`,
/// `laplace:eps=<e>`. Throws std::invalid_argument on anything else.
inline KernelSpec parse_kernel_spec(const std::string& text) {
  auto bad = [&text]() -> KernelSpec {
    throw std::invalid_argument("unrecognized kernel spec '" + text +
                                "' (expected gauss[:l=<l>], laplace, or "
                                "laplace:eps=<e>)");
  };
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : text.substr(colon + 1);

  auto parse_param = [&](const std::string& key) -> double {
    if (args.rfind(key + "=", 0) != 0) bad();
    const std::string num = args.substr(key.size() + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != num.size()) bad();
    return v;
  };

  if (name == "gauss") {
    return args.empty() ? KernelSpec::gauss()
                        : KernelSpec::gauss(parse_param("l"));
  }
  if (name == "laplace") {
    return args.empty() ? KernelSpec::laplace()
                        : KernelSpec::regularized_laplace(parse_param("eps"));
  }
  return bad();
}

/// Canonical text encoding, inverse of parse_kernel_spec.
inline std::string to_string(const KernelSpec& spec) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  switch (spec.family) {
    case KernelFamily::Gauss:
      return "gauss:l=" + num(spec.length_scale);
    case KernelFamily::Laplace:
      return "laplace";
    case KernelFamily::RegularizedLaplace:
      return "laplace:eps=" + num(spec.epsilon);
  }
  return "";
}

}  // namespace kgeom
