// Fit the signature function of a sampled unit circle and print the
// implied normals and curvature at a few sample points.

#include <iostream>

#include "kgeom/kgeom.hpp"

int main() {
  using namespace kgeom;

  const PointCloud X = curve_sample(AnalyticSurface{Ellipse{1.0, 1.0}}, 64);
  const Model sig =
      signature_model(KernelSpec::regularized_laplace(1.0), X, 0.0);

  std::cout << "point -> implied normal, curvature (exact: 1)\n";
  for (Eigen::Index j = 0; j < X.size(); j += 8) {
    const Eigen::VectorXd x = X.point(j);
    const SurfaceFrame frame = orient_frame(curvatures(sig, x), x);
    std::cout << "(" << x[0] << ", " << x[1] << ") -> (" << frame.normal[0]
              << ", " << frame.normal[1] << "), "
              << frame.principal_curvatures[0] << "\n";
  }
  return 0;
}
