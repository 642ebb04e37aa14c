#ifndef BDCA_SPD_HPP
#define BDCA_SPD_HPP

// Kernels for P(n), the symmetric positive definite matrices with the
// affine-invariant metric <U,V>_Y = tr(Y^{-1} U Y^{-1} V). Every matrix
// function goes through a symmetric eigendecomposition and every product
// chain is symmetrized on exit.

#include "bdca/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace bdca::spd {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
Mat<typename Derived::Scalar> symmetrize(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.transpose()) / typename Derived::Scalar(2);
}

template <typename Scalar> struct SymEig {
  Vec<Scalar> values; ///< ascending
  Mat<Scalar> vectors; ///< orthogonal, columns match values
};

template <typename Derived>
SymEig<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(symmetrize(a));
  if (es.info() != Eigen::Success)
    throw Error("sym_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Lower Cholesky factor with positive diagonal.
template <typename Derived>
Mat<typename Derived::Scalar> chol(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::LLT<Mat<Scalar>> llt(symmetrize(a));
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("chol: matrix is not positive definite");
  return llt.matrixL();
}

/// U f(Lambda) U^T.
template <typename Scalar, typename F>
Mat<Scalar> apply_spectral(const SymEig<Scalar>& eig, F&& f) {
  Vec<Scalar> fv(eig.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i)
    fv(i) = f(eig.values(i));
  return symmetrize(eig.vectors * fv.asDiagonal() * eig.vectors.transpose());
}

template <typename Scalar> void require_positive(const SymEig<Scalar>& eig, const char* what) {
  if (!(eig.values.size() == 0 || eig.values(0) > Scalar(0)))
    throw DefinitenessError(std::string(what) + ": matrix is not positive definite");
}

enum class MatrixFunction { exp, log, sqrt, inv_sqrt };

template <typename Derived>
Mat<typename Derived::Scalar> spd_fun(const Eigen::MatrixBase<Derived>& a, MatrixFunction f) {
  using Scalar = typename Derived::Scalar;
  using std::exp;
  using std::log;
  using std::sqrt;
  const SymEig<Scalar> eig = sym_eig(a);
  switch (f) {
  case MatrixFunction::exp:
    return apply_spectral(eig, [](Scalar x) { return exp(x); });
  case MatrixFunction::log:
    require_positive(eig, "spd_fun(log)");
    return apply_spectral(eig, [](Scalar x) { return log(x); });
  case MatrixFunction::sqrt:
    require_positive(eig, "spd_fun(sqrt)");
    return apply_spectral(eig, [](Scalar x) { return sqrt(x); });
  case MatrixFunction::inv_sqrt:
    require_positive(eig, "spd_fun(inv_sqrt)");
    return apply_spectral(eig, [](Scalar x) { return Scalar(1) / sqrt(x); });
  }
  throw Error("spd_fun: unknown function");
}

template <typename Derived> Mat<typename Derived::Scalar> mat_exp(const Eigen::MatrixBase<Derived>& a) {
  return spd_fun(a, MatrixFunction::exp);
}
template <typename Derived> Mat<typename Derived::Scalar> mat_log(const Eigen::MatrixBase<Derived>& a) {
  return spd_fun(a, MatrixFunction::log);
}

/// Y^{1/2} and Y^{-1/2} from one eigendecomposition.
template <typename Scalar> struct SqrtPair {
  Mat<Scalar> sqrt;
  Mat<Scalar> inv_sqrt;
};

template <typename Derived>
SqrtPair<typename Derived::Scalar> sqrt_pair(const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const SymEig<Scalar> eig = sym_eig(y);
  require_positive(eig, "sqrt_pair");
  return {apply_spectral(eig, [](Scalar x) { return sqrt(x); }),
          apply_spectral(eig, [](Scalar x) { return Scalar(1) / sqrt(x); })};
}

/// tr(Y^{-1} U Y^{-1} V), evaluated as <L^{-1} U L^{-T}, L^{-1} V L^{-T}>_F.
template <typename DY, typename DU, typename DV>
typename DY::Scalar inner(const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DU>& u,
                          const Eigen::MatrixBase<DV>& v) {
  using Scalar = typename DY::Scalar;
  const Mat<Scalar> l = chol(y);
  const auto tri = l.template triangularView<Eigen::Lower>();
  const Mat<Scalar> lu = tri.solve(tri.solve(Mat<Scalar>(u)).transpose());
  const Mat<Scalar> lv = tri.solve(tri.solve(Mat<Scalar>(v)).transpose());
  return lu.cwiseProduct(lv).sum();
}

/// Eigenvalues of the congruence Y^{-1/2} X Y^{-1/2} (equal to those of
/// L^{-1} X L^{-T} for Y = L L^T).
template <typename DX, typename DY>
Vec<typename DX::Scalar> relative_spectrum(const Eigen::MatrixBase<DX>& x,
                                           const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DX::Scalar;
  const Mat<Scalar> l = chol(y);
  const auto tri = l.template triangularView<Eigen::Lower>();
  const Mat<Scalar> c = tri.solve(tri.solve(Mat<Scalar>(x)).transpose());
  return sym_eig(c).values;
}

/// d(X,Y) = ||Log(Y^{-1/2} X Y^{-1/2})||_F.
template <typename DX, typename DY>
typename DX::Scalar dist(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DX::Scalar;
  using std::log;
  using std::sqrt;
  const Vec<Scalar> mu = relative_spectrum(x, y);
  Scalar s(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!(mu(i) > Scalar(0)))
      throw DefinitenessError("spd dist: argument is not positive definite");
    const Scalar l = log(mu(i));
    s += l * l;
  }
  return sqrt(s);
}

/// exp_Y(V) = Y^{1/2} Exp(Y^{-1/2} V Y^{-1/2}) Y^{1/2}.
template <typename Scalar, typename DV>
Mat<Scalar> exp(const SqrtPair<Scalar>& y, const Eigen::MatrixBase<DV>& v) {
  const Mat<Scalar> inner_arg = symmetrize(y.inv_sqrt * v * y.inv_sqrt);
  return symmetrize(y.sqrt * mat_exp(inner_arg) * y.sqrt);
}

template <typename DY, typename DV>
Mat<typename DY::Scalar> exp(const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DV>& v) {
  return exp(sqrt_pair(y), v);
}

/// log_X(Y) = X^{1/2} Log(X^{-1/2} Y X^{-1/2}) X^{1/2}.
template <typename Scalar, typename DY>
Mat<Scalar> log(const SqrtPair<Scalar>& x, const Eigen::MatrixBase<DY>& y) {
  const Mat<Scalar> inner_arg = symmetrize(x.inv_sqrt * y * x.inv_sqrt);
  return symmetrize(x.sqrt * mat_log(inner_arg) * x.sqrt);
}

template <typename DX, typename DY>
Mat<typename DX::Scalar> log(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  return log(sqrt_pair(x), y);
}

/// grad f(X) = X f'(X) X.
template <typename DX, typename DG>
Mat<typename DX::Scalar> egrad_to_rgrad(const Eigen::MatrixBase<DX>& x,
                                        const Eigen::MatrixBase<DG>& egrad) {
  return symmetrize(x * symmetrize(egrad) * x);
}

/// Distinct eigenvalues (ascending) of Y^{-1/2} V Y^{-1/2}, their
/// multiplicities, the orthogonal factor and block boundaries alpha_i.
template <typename Scalar> struct SpectralSplit {
  std::vector<Scalar> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<int> boundaries; ///< alpha_0 = 0, alpha_i = n_1 + ... + n_i
  Mat<Scalar> orthogonal;
  /// Per-column eigenvalue after grouping (the diagonal of D).
  Vec<Scalar> diagonal;
  /// ||D|| = (sum n_i lambda_i^2)^{1/2}.
  Scalar norm;
};

inline constexpr double kDefaultGroupingTol = 1e-10;

template <typename Scalar>
SpectralSplit<Scalar> group_spectrum(const SymEig<Scalar>& eig, Scalar grouping_tol) {
  using std::abs;
  using std::max;
  using std::sqrt;
  const Eigen::Index n = eig.values.size();
  Scalar scale(0);
  for (Eigen::Index i = 0; i < n; ++i)
    scale = max(scale, abs(eig.values(i)));
  const Scalar tol = grouping_tol * max(Scalar(1), scale);

  SpectralSplit<Scalar> out;
  out.orthogonal = eig.vectors;
  out.diagonal.resize(n);
  out.boundaries.push_back(0);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eig.values(end) - eig.values(end - 1) <= tol)
      ++end;
    const Scalar mean = eig.values.segment(start, end - start).sum() / Scalar(end - start);
    out.eigenvalues.push_back(mean);
    out.multiplicities.push_back(static_cast<int>(end - start));
    out.boundaries.push_back(static_cast<int>(end));
    out.diagonal.segment(start, end - start).setConstant(mean);
    start = end;
  }
  Scalar s(0);
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i)
    s += Scalar(out.multiplicities[i]) * out.eigenvalues[i] * out.eigenvalues[i];
  out.norm = sqrt(s);
  return out;
}

template <typename Scalar, typename DV>
SpectralSplit<Scalar> spectral_split(const SqrtPair<Scalar>& y, const Eigen::MatrixBase<DV>& v,
                                     Scalar grouping_tol = Scalar(kDefaultGroupingTol)) {
  const SpectralSplit<Scalar> split =
      group_spectrum(sym_eig(symmetrize(y.inv_sqrt * v * y.inv_sqrt)), grouping_tol);
  if (!(split.norm > Scalar(0)))
    throw ZeroDirectionError("spectral_split: direction is zero");
  return split;
}

/// Busemann ray on P(n) with the base square roots and the spectral split
/// of the normalized direction cached for repeated evaluation.
template <typename Scalar> struct PreparedRay {
  Mat<Scalar> base;
  SqrtPair<Scalar> base_roots;
  SpectralSplit<Scalar> split;
  bool zero_direction = false;
  /// Y^{-1/2} U, applied to X on both sides before the Cholesky step.
  Mat<Scalar> whitening;
};

template <typename DY, typename DV>
PreparedRay<typename DY::Scalar> prepare_ray(const Eigen::MatrixBase<DY>& y,
                                             const Eigen::MatrixBase<DV>& v,
                                             typename DY::Scalar grouping_tol =
                                                 typename DY::Scalar(kDefaultGroupingTol)) {
  using Scalar = typename DY::Scalar;
  PreparedRay<Scalar> ray;
  ray.base = y;
  ray.base_roots = sqrt_pair(y);
  if (v.isZero(0)) {
    ray.zero_direction = true;
    return ray;
  }
  ray.split = spectral_split(ray.base_roots, v, grouping_tol);
  ray.whitening = ray.base_roots.inv_sqrt * ray.split.orthogonal;
  return ray;
}

/// Cholesky factor of U^T Y^{-1/2} X Y^{-1/2} U.
template <typename Scalar, typename DX>
Mat<Scalar> ray_cholesky(const PreparedRay<Scalar>& ray, const Eigen::MatrixBase<DX>& x) {
  return chol(symmetrize(ray.whitening.transpose() * x * ray.whitening));
}

/// B_{Y,V}(X) = -2 ||D||^{-1} sum_i sum_{j in block i} lambda_i ln L_jj;
/// d(Y,X) for a zero direction.
template <typename Scalar, typename DX>
Scalar busemann(const PreparedRay<Scalar>& ray, const Eigen::MatrixBase<DX>& x) {
  using std::log;
  if (ray.zero_direction)
    return dist(ray.base, x);
  const Mat<Scalar> l = ray_cholesky(ray, x);
  Scalar s(0);
  for (std::size_t i = 0; i < ray.split.eigenvalues.size(); ++i) {
    Scalar block(0);
    for (int j = ray.split.boundaries[i]; j < ray.split.boundaries[i + 1]; ++j)
      block += log(l(j, j));
    s += ray.split.eigenvalues[i] * block;
  }
  return Scalar(-2) * s / ray.split.norm;
}

/// grad B_{Y,V}(X) = -||D||^{-1} Y^{1/2} U L D L^T U^T Y^{1/2}.
template <typename Scalar, typename DX>
Mat<Scalar> busemann_grad(const PreparedRay<Scalar>& ray, const Eigen::MatrixBase<DX>& x) {
  if (ray.zero_direction)
    throw ZeroDirectionError("spd busemann_grad: zero direction");
  const Mat<Scalar> l = ray_cholesky(ray, x);
  const Mat<Scalar> a = ray.base_roots.sqrt * ray.split.orthogonal * l;
  return symmetrize(-(a * ray.split.diagonal.asDiagonal() * a.transpose()) / ray.split.norm);
}

/// (ln a - ln b)/(a - b), via ln(a/b) = 2 atanh((a-b)/(a+b)).
template <typename Scalar> Scalar log_divided_difference(Scalar a, Scalar b) {
  using std::atanh;
  if (a == b)
    return Scalar(1) / a;
  return Scalar(2) * atanh((a - b) / (a + b)) / (a - b);
}

/// D Log(A)[E] by the Daleckii-Krein formula in the eigenbasis of A.
template <typename DA, typename DE>
Mat<typename DA::Scalar> frechet_log(const Eigen::MatrixBase<DA>& a,
                                     const Eigen::MatrixBase<DE>& e) {
  using Scalar = typename DA::Scalar;
  const SymEig<Scalar> eig = sym_eig(a);
  require_positive(eig, "frechet_log");
  Mat<Scalar> rotated = eig.vectors.transpose() * symmetrize(e) * eig.vectors;
  const Eigen::Index n = rotated.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      rotated(i, j) *= log_divided_difference(eig.values(i), eig.values(j));
  return symmetrize(eig.vectors * rotated * eig.vectors.transpose());
}

} // namespace bdca::spd

#endif // BDCA_SPD_HPP
