#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "kgeom/cloud.hpp"
#include "kgeom/errors.hpp"
#include "kgeom/kernels.hpp"

namespace kgeom {

/// Fitted kernel interpolant/regressor u(x) = sum_k lambda_k K(x - x_k).
/// alpha is the regularization weight of the fit (equals the GPR noise
/// variance sigma^2); alpha = 0 means exact interpolation.
struct Model {
  KernelSpec spec;
  PointCloud centers;
  Eigen::VectorXd coefficients;
  double alpha = 0.0;

  int dim() const { return centers.dim(); }
  Eigen::Index size() const { return centers.size(); }
};

/// Diagnostics of the regularized SPD solve. jitter_added is 0 on the
/// first-attempt success path; residual_norm is relative to |Y| and
/// measured against the matrix actually factored (including jitter).
struct SolveReport {
  double jitter_added = 0.0;
  int cholesky_attempts = 0;
  double residual_norm = 0.0;
};

/// Gram matrix K(X, X), entry (j,k) = K(x_j - x_k). Exactly symmetric;
/// constant diagonal K(0).
inline Eigen::MatrixXd gram(const KernelSpec& spec, const PointCloud& X) {
  spec.validate();
  const Eigen::Index m = X.size();
  if (m < 1) throw std::invalid_argument("gram: empty cloud");
  Eigen::MatrixXd K(m, m);
  const double diag = kernel_value(spec, Eigen::VectorXd::Zero(X.dim()));
  for (Eigen::Index j = 0; j < m; ++j) {
    K(j, j) = diag;
    for (Eigen::Index k = j + 1; k < m; ++k) {
      const double v =
          kernel_value(spec, (X.points().row(j) - X.points().row(k))
                                 .transpose());
      K(j, k) = v;
      K(k, j) = v;
    }
  }
  return K;
}

namespace detail {

/// Cholesky of alpha I + K(X,X) with the jitter escalation ladder:
/// on failure, retry with delta in {1e-14, 1e-12, 1e-10} * tr(K)/m added
/// to the diagonal; IllConditioned after the last attempt. Both fit()
/// and operator assembly use this, so the two paths factor the exact
/// same matrix.
struct FactoredGram {
  Eigen::MatrixXd matrix;  // the matrix actually factored
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  int attempts = 0;
};

inline FactoredGram factor_regularized_gram(const KernelSpec& spec,
                                            const PointCloud& X,
                                            double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a finite nonnegative real");
  }
  FactoredGram f;
  const Eigen::MatrixXd K = gram(spec, X);
  const double scale = K.trace() / static_cast<double>(X.size());
  const std::array<double, 4> deltas = {0.0, 1e-14 * scale, 1e-12 * scale,
                                        1e-10 * scale};
  for (double delta : deltas) {
    f.matrix = K;
    f.matrix.diagonal().array() += alpha + delta;
    f.llt.compute(f.matrix);
    ++f.attempts;
    if (f.llt.info() == Eigen::Success) {
      f.jitter = delta;
      return f;
    }
  }
  throw IllConditioned(
      "Cholesky of alpha I + K failed after jitter escalation; increase "
      "alpha or use a less smooth kernel");
}

/// Solve with one round of iterative refinement when the first residual
/// is not already at roundoff.
inline Eigen::VectorXd solve_refined(const FactoredGram& f,
                                     const Eigen::VectorXd& rhs,
                                     double* rel_residual = nullptr) {
  Eigen::VectorXd x = f.llt.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double floor = rhs_norm > 0.0 ? rhs_norm : 1.0;
  Eigen::VectorXd r = rhs - f.matrix * x;
  if (r.norm() > 1e-13 * floor) {
    x += f.llt.solve(r);
    r = rhs - f.matrix * x;
  }
  if (rel_residual) *rel_residual = r.norm() / floor;
  return x;
}

}  // namespace detail

/// Solve (alpha I + K(X,X)) Lambda = Y and package the result as a Model.
inline std::pair<Model, SolveReport> fit(const KernelSpec& spec,
                                         const PointCloud& X,
                                         const Eigen::VectorXd& Y,
                                         double alpha) {
  if (Y.size() != X.size()) {
    throw std::invalid_argument("fit: value count does not match point count");
  }
  auto f = detail::factor_regularized_gram(spec, X, alpha);
  SolveReport report;
  report.jitter_added = f.jitter;
  report.cholesky_attempts = f.attempts;
  Eigen::VectorXd lambda =
      detail::solve_refined(f, Y, &report.residual_norm);
  return {Model{spec, X, std::move(lambda), alpha}, report};
}

/// Value and exact derivatives of the fitted function at x.
/// gradient/hessian are empty unless requested by order.
struct Jet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

inline Jet evaluate_jet(const Model& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x,
                        int order = 0) {
  if (x.size() != model.dim()) {
    throw std::invalid_argument("evaluate_jet: dimension mismatch");
  }
  const int d = model.dim();
  Jet jet;
  if (order >= 1) jet.gradient = Eigen::VectorXd::Zero(d);
  if (order >= 2) jet.hessian = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k < model.size(); ++k) {
    const Eigen::VectorXd dx = x - model.centers.point(k);
    const KernelJet kj = kernel_jet(model.spec, dx, order);
    const double lam = model.coefficients[k];
    jet.value += lam * kj.value;
    if (order >= 1) jet.gradient += lam * kj.gradient;
    if (order >= 2) jet.hessian += lam * kj.hessian;
  }
  return jet;
}

/// Values of the fitted function on a whole cloud.
inline Eigen::VectorXd evaluate(const Model& model, const PointCloud& X) {
  Eigen::VectorXd out(X.size());
  for (Eigen::Index j = 0; j < X.size(); ++j) {
    out[j] = evaluate_jet(model, X.point(j), 0).value;
  }
  return out;
}

/// Squared RKHS norm Lambda^T K(X,X) Lambda of the fitted function.
inline double rkhs_norm_sq(const Model& model) {
  const Eigen::MatrixXd K = gram(model.spec, model.centers);
  const double v = model.coefficients.dot(K * model.coefficients);
  return v > 0.0 ? v : 0.0;
}

struct ObjectiveValue {
  double e_alpha = 0.0;  // 1/2 ( |u|^2 + misfit / alpha )
  double misfit = 0.0;   // |u(X) - Y|^2, squared Euclidean, no averaging
};

inline ObjectiveValue objective(const Model& model, const PointCloud& X,
                                const Eigen::VectorXd& Y, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("objective requires alpha > 0");
  }
  if (Y.size() != X.size()) {
    throw std::invalid_argument("objective: value count mismatch");
  }
  ObjectiveValue obj;
  obj.misfit = (evaluate(model, X) - Y).squaredNorm();
  obj.e_alpha = 0.5 * (rkhs_norm_sq(model) + obj.misfit / alpha);
  return obj;
}

/// GPR posterior variance at x:
///   K(x,x) + sigma^2 - K(x,X) [sigma^2 I + K(X,X)]^{-1} K(X,x).
/// X may be empty, in which case this is the prior variance
/// K(0) + sigma^2. Small negative roundoff (> -1e-12) is clamped to 0.
inline double gpr_variance(const KernelSpec& spec, const PointCloud& X,
                           const Eigen::Ref<const Eigen::VectorXd>& x,
                           double sigma2) {
  spec.validate();
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("sigma2 must be a finite nonnegative real");
  }
  const double prior = kernel_value(spec, Eigen::VectorXd::Zero(x.size()));
  if (X.size() == 0) return prior + sigma2;
  if (x.size() != X.dim()) {
    throw std::invalid_argument("gpr_variance: dimension mismatch");
  }

  Eigen::VectorXd kx(X.size());
  for (Eigen::Index j = 0; j < X.size(); ++j) {
    kx[j] = kernel_value(spec, (x - X.point(j)).eval());
  }
  Eigen::MatrixXd A = gram(spec, X);
  A.diagonal().array() += sigma2;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw IllConditioned("gpr_variance: sigma^2 I + K is not numerically PD");
  }
  const double v = prior + sigma2 - kx.dot(llt.solve(kx));
  if (v < -1e-12) {
    throw IllConditioned("gpr_variance: negative beyond roundoff tolerance");
  }
  return v > 0.0 ? v : 0.0;
}

}  // namespace kgeom
