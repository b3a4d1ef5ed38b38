#pragma once

#include <cstdint>

#include "nht/linalg.hpp"

namespace nht {

// Positive-definite Hermitian metric D with cached square root and inverse
// square root. Satisfies D psi_k = tilde_k for the generating eigensystem.
class MetricOperator {
 public:
  /// Builds from an explicit Hermitian positive-definite matrix.
  explicit MetricOperator(ComplexMatrix d, double eps_pd_rel = 1e-12);

  static MetricOperator identity(int n);

  int dim() const { return static_cast<int>(d_.rows()); }
  const ComplexMatrix& matrix() const { return d_; }
  const ComplexMatrix& sqrt() const { return sqrt_; }
  const ComplexMatrix& inv_sqrt() const { return inv_sqrt_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  ComplexMatrix d_;
  ComplexMatrix sqrt_;
  ComplexMatrix inv_sqrt_;
  double min_eigenvalue_ = 0.0;
};

/// D = Sum_k tilde_k tilde_k^dag, the metric that maps right eigenvectors to
/// their left partners.
MetricOperator build_metric(const BiorthogonalEigensystem& e,
                            double eps_pd_rel = 1e-12);

/// ||D X - X^dag D||_F / max(1, ||D||_F ||X||_F); zero iff X is D-Hermitian.
double pseudo_hermiticity_residual(const MetricOperator& d,
                                   const ComplexMatrix& x);

/// Similarity transform D^{1/2} X D^{-1/2}; Hermitian when X is D-Hermitian.
ComplexMatrix to_hermitian(const MetricOperator& d, const ComplexMatrix& x,
                           double tol = 1e-8);

/// <D phi, psi>, the physical inner product.
std::complex<double> d_inner(const MetricOperator& d, const ComplexVector& phi,
                             const ComplexVector& psi);

/// Seeded random density matrix that is Hermitian and positive semidefinite
/// with respect to the D-inner product, with unit trace.
ComplexMatrix random_d_hermitian_density(const MetricOperator& d,
                                         std::uint64_t seed);

}  // namespace nht
