#ifndef BDCA_TESTS_SUPPORT_HPP
#define BDCA_TESTS_SUPPORT_HPP

#include "bdca/manifold.hpp"

#include <vector>

namespace bdca::support {

inline std::vector<Manifold> all_geometries() {
  return {Manifold::euclidean(5), Manifold::dikin(3), Manifold::hyperbolic(2),
          Manifold::hyperbolic(5), Manifold::hyperbolic(3, 2.5), Manifold::spd(3)};
}

/// |grad - fd| / (1 + |fd|), the relative gradient error used throughout.
inline double grad_error(const Manifold& m, const ScalarField& f, const Tangent& grad,
                         const Point& p) {
  const Tangent fd = fd_riemannian_grad(m, f, p);
  return norm(m, grad - fd) / (1.0 + norm(m, fd));
}

inline Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.normal_matrix(n, n));
  return qr.householderQ();
}

} // namespace bdca::support

#endif
