#pragma once

// Test-side oracles, independent of the implementation paths they check:
// central finite differences for derivatives and dense factorizations
// for linear solves.

#include <Eigen/Core>
#include <Eigen/QR>
#include <functional>

namespace kgeom::testing {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

inline Eigen::VectorXd fd_gradient(const ScalarField& f,
                                   const Eigen::VectorXd& x,
                                   double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const ScalarField& f,
                                  const Eigen::VectorXd& x,
                                  double h = 1e-5) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd H(d, d);
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      if (i == j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        H(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (h * h);
      } else {
        Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[i] += h;
        xpp[j] += h;
        xpm[i] += h;
        xpm[j] -= h;
        xmp[i] -= h;
        xmp[j] += h;
        xmm[i] -= h;
        xmm[j] -= h;
        H(i, j) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
        H(j, i) = H(i, j);
      }
    }
  }
  return H;
}

using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Hessian as the central-difference Jacobian of a gradient field. Each
/// derivative order is checked against the one below it, which keeps the
/// finite-difference noise at the eps/h level instead of eps/h^2.
inline Eigen::MatrixXd fd_jacobian(const VectorField& g,
                                   const Eigen::VectorXd& x,
                                   double h = 1e-5) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd J(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (g(xp) - g(xm)) / (2.0 * h);
  }
  return J;
}

/// Reference dense solve along a different factorization route than the
/// implementation's Cholesky.
inline Eigen::VectorXd qr_solve(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b) {
  return A.colPivHouseholderQr().solve(b);
}

}  // namespace kgeom::testing
