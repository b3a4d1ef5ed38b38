#include "nht/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace nht {

MetricOperator::MetricOperator(ComplexMatrix d, double eps_pd_rel) : d_(std::move(d)) {
  check_matrix(d_);
  const double scale = std::max(d_.norm(), 1e-300);
  if ((d_ - d_.adjoint()).norm() > 1e-10 * scale) {
    throw NotPositiveDefinite("metric candidate is not Hermitian");
  }
  d_ = 0.5 * (d_ + d_.adjoint().eval());  // remove roundoff skew
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(d_);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver failed on metric");
  }
  min_eigenvalue_ = solver.eigenvalues().minCoeff();
  if (min_eigenvalue_ <= eps_pd_rel * scale) {
    throw NotPositiveDefinite("metric min eigenvalue " +
                              std::to_string(min_eigenvalue_));
  }
  const auto& u = solver.eigenvectors();
  sqrt_ = u * solver.eigenvalues().cwiseSqrt().asDiagonal() * u.adjoint();
  inv_sqrt_ = u * solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
              u.adjoint();
}

MetricOperator MetricOperator::identity(int n) {
  return MetricOperator(ComplexMatrix::Identity(n, n));
}

MetricOperator build_metric(const BiorthogonalEigensystem& e, double eps_pd_rel) {
  ComplexMatrix d = e.left_vectors() * e.left_vectors().adjoint();
  return MetricOperator(std::move(d), eps_pd_rel);
}

double pseudo_hermiticity_residual(const MetricOperator& d,
                                   const ComplexMatrix& x) {
  check_matrix(x);
  if (x.rows() != d.dim()) {
    throw InvalidParameter("dimension mismatch in pseudo_hermiticity_residual");
  }
  const ComplexMatrix dx = d.matrix() * x;
  const double num = (dx - dx.adjoint()).norm();
  return num / std::max(1.0, d.matrix().norm() * x.norm());
}

ComplexMatrix to_hermitian(const MetricOperator& d, const ComplexMatrix& x,
                           double tol) {
  if (pseudo_hermiticity_residual(d, x) > tol) {
    throw NotDHermitian("operator is not D-Hermitian within tolerance");
  }
  return d.sqrt() * x * d.inv_sqrt();
}

std::complex<double> d_inner(const MetricOperator& d, const ComplexVector& phi,
                             const ComplexVector& psi) {
  if (phi.size() != d.dim() || psi.size() != d.dim()) {
    throw InvalidParameter("dimension mismatch in d_inner");
  }
  return (d.matrix() * phi).dot(psi);
}

ComplexMatrix random_d_hermitian_density(const MetricOperator& d,
                                         std::uint64_t seed) {
  const int n = d.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  ComplexMatrix sigma = g * g.adjoint();
  sigma /= sigma.trace().real();
  // Similarity keeps trace and spectrum; sigma Hermitian PSD gives a state
  // D-Hermitian and D-positive-semidefinite.
  return d.inv_sqrt() * sigma * d.sqrt();
}

}  // namespace nht
