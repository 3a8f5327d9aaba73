#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "kgeom/errors.hpp"
#include "kgeom/interpolant.hpp"

namespace kgeom {

/// Below this gradient norm no normal direction is reported; the point
/// is treated as analytically flat (symmetric-sample failure mode).
inline constexpr double kDefaultGradTol = 1e-10;

/// Per-point geometry of the implicit level set of a fitted model.
/// principal_curvatures holds the d-1 eigenvalues of the symmetric
/// tangential operator P D2u P / |grad u|, sorted by value; weingarten
/// is (D2u - D2u nu nu^T)/|grad u|.
struct SurfaceFrame {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
  double grad_norm = 0.0;
  Eigen::MatrixXd weingarten;
  Eigen::VectorXd principal_curvatures;
  double mean_curvature = 0.0;
  double gauss_curvature = 0.0;
};

/// Summary of the signature function over a cloud: mean/min/max of u(X)
/// and the RMS of u(X) - 1.
struct LevelStats {
  double mean_level = 0.0;
  double min_level = 0.0;
  double max_level = 0.0;
  double residual_rms = 0.0;
};

/// Interpolant/regressor of the all-ones data on X; its level set near 1
/// is the implicit representation of the sampled hypersurface.
inline Model signature_model(const KernelSpec& spec, const PointCloud& X,
                             double alpha) {
  return fit(spec, X, Eigen::VectorXd::Ones(X.size()), alpha).first;
}

struct ImpliedNormal {
  Eigen::VectorXd normal;
  double grad_norm = 0.0;
};

inline ImpliedNormal implied_normal(const Model& model,
                                    const Eigen::Ref<const Eigen::VectorXd>& x,
                                    double grad_tol = kDefaultGradTol) {
  const Jet jet = evaluate_jet(model, x, 1);
  const double gn = jet.gradient.norm();
  if (gn < grad_tol) {
    throw DegenerateGradient("gradient norm " + std::to_string(gn) +
                                 " below threshold; normal undefined",
                             gn);
  }
  return {jet.gradient / gn, gn};
}

namespace detail {

struct FrameWork {
  Eigen::VectorXd normal;
  double grad_norm;
  Eigen::MatrixXd hessian;
};

inline FrameWork frame_work(const Model& model,
                            const Eigen::Ref<const Eigen::VectorXd>& x,
                            double grad_tol) {
  const Jet jet = evaluate_jet(model, x, 2);
  const double gn = jet.gradient.norm();
  if (gn < grad_tol) {
    throw DegenerateGradient("gradient norm " + std::to_string(gn) +
                                 " below threshold; normal undefined",
                             gn);
  }
  return {jet.gradient / gn, gn, jet.hessian};
}

}  // namespace detail

/// Derivative of the implied normal field as printed:
///   D nu = (D2u - D2u nu nu^T) / |grad u|.
/// nu is a right null vector of the result.
inline Eigen::MatrixXd weingarten(const Model& model,
                                  const Eigen::Ref<const Eigen::VectorXd>& x,
                                  double grad_tol = kDefaultGradTol) {
  const auto w = detail::frame_work(model, x, grad_tol);
  return (w.hessian - (w.hessian * w.normal) * w.normal.transpose()) /
         w.grad_norm;
}

/// Full frame: normal, Weingarten map, and curvatures.
///
/// Principal curvatures are the eigenvalues of the symmetric projected
/// operator S = P D2u P / |grad u| (P = I - nu nu^T) after discarding
/// the eigenvalue whose eigenvector is most aligned with nu; S and the
/// printed D nu share their trace, which gives H.
inline SurfaceFrame curvatures(const Model& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               double grad_tol = kDefaultGradTol) {
  const int d = model.dim();
  const auto w = detail::frame_work(model, x, grad_tol);

  SurfaceFrame frame;
  frame.point = x;
  frame.normal = w.normal;
  frame.grad_norm = w.grad_norm;
  frame.weingarten =
      (w.hessian - (w.hessian * w.normal) * w.normal.transpose()) /
      w.grad_norm;
  frame.mean_curvature =
      frame.weingarten.trace() / static_cast<double>(d - 1);

  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(d, d) - w.normal * w.normal.transpose();
  const Eigen::MatrixXd S = P * w.hessian * P / w.grad_norm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
  if (eig.info() != Eigen::Success) {
    throw IllConditioned("eigendecomposition of the shape operator failed");
  }

  // Discard by alignment with nu, not by magnitude: the surface may have
  // a genuinely tiny principal curvature.
  int discard = 0;
  double best = -1.0;
  for (int i = 0; i < d; ++i) {
    const double a = std::abs(eig.eigenvectors().col(i).dot(w.normal));
    if (a > best) {
      best = a;
      discard = i;
    }
  }
  frame.principal_curvatures.resize(d - 1);
  int out = 0;
  for (int i = 0; i < d; ++i) {
    if (i != discard) frame.principal_curvatures[out++] = eig.eigenvalues()[i];
  }
  std::sort(frame.principal_curvatures.begin(),
            frame.principal_curvatures.end());
  frame.gauss_curvature = frame.principal_curvatures.prod();
  return frame;
}

inline LevelStats level_stats(const Model& model, const PointCloud& X) {
  const Eigen::VectorXd u = evaluate(model, X);
  LevelStats s;
  s.mean_level = u.mean();
  s.min_level = u.minCoeff();
  s.max_level = u.maxCoeff();
  s.residual_rms = std::sqrt(
      (u.array() - 1.0).square().sum() / static_cast<double>(u.size()));
  return s;
}

/// Canonicalize the sign ambiguity of nu: flip the frame so that
/// nu . reference >= 0. Flipping negates the Weingarten map, every
/// principal curvature, H, and multiplies the Gauss curvature by
/// (-1)^(d-1).
inline SurfaceFrame orient_frame(const SurfaceFrame& frame,
                                 const Eigen::Ref<const Eigen::VectorXd>&
                                     reference) {
  if (reference.norm() == 0.0) {
    throw ZeroReference("orientation reference vector is zero");
  }
  if (frame.normal.dot(reference) >= 0.0) return frame;
  SurfaceFrame out = frame;
  out.normal = -frame.normal;
  out.weingarten = -frame.weingarten;
  out.mean_curvature = -frame.mean_curvature;
  out.principal_curvatures = -frame.principal_curvatures;
  std::sort(out.principal_curvatures.begin(), out.principal_curvatures.end());
  const int d = static_cast<int>(frame.normal.size());
  out.gauss_curvature = (d % 2 == 0 ? -1.0 : 1.0) * frame.gauss_curvature;
  return out;
}

}  // namespace kgeom
