#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "nht/errors.hpp"

namespace nht {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws InvalidParameter if the matrix is empty, non-square or carries
/// NaN/Inf entries.
void check_matrix(const ComplexMatrix& a);

struct Eigenpair {
  std::complex<double> value;
  ComplexVector vector;  // unit norm in the standard inner product
};

/// General (non-Hermitian) eigendecomposition. Eigenvectors are unit-norm;
/// each pair satisfies ||A psi - lambda psi|| <= eps * ||A||_F.
std::vector<Eigenpair> eig_general(const ComplexMatrix& a);

struct BiorthOptions {
  double eps_bio = 1e-9;       // biorthonormality residual bound
  double eps_real_rel = 1e-8;  // |Im lambda| <= eps_real_rel * ||H||_F
  double eps_gap_rel = 1e-8;   // eigenvalue gaps >= eps_gap_rel * ||H||_F
};

// Right/left eigenvector pairs of a matrix with real simple spectrum,
// normalized to <psi_k, tilde_l> = delta_kl. Immutable once built.
class BiorthogonalEigensystem {
 public:
  BiorthogonalEigensystem(RealVector eigenvalues, ComplexMatrix right,
                          ComplexMatrix left, double source_residual,
                          BiorthOptions options);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  // Column k is psi_k (right) / tilde_k (left).
  const ComplexMatrix& right_vectors() const { return right_; }
  const ComplexMatrix& left_vectors() const { return left_; }
  double source_residual() const { return source_residual_; }

  double biorthogonality_residual() const;
  double completeness_residual() const;

 private:
  RealVector eigenvalues_;
  ComplexMatrix right_;
  ComplexMatrix left_;
  double source_residual_;
};

/// Diagonalizes H, pairs right eigenvectors with eigenvectors of H^dag by
/// nearest eigenvalue, and rescales the left vectors so <psi_k, tilde_k> = 1.
/// Eigenvalues are returned ascending.
BiorthogonalEigensystem biorthogonalize(const ComplexMatrix& h,
                                        const BiorthOptions& opt = {});

/// Sum_k f(lambda_k) psi_k tilde_k^dag.
ComplexMatrix spectral_apply(const BiorthogonalEigensystem& e,
                             const std::function<double(double)>& f);

/// A (+) B = A x I + I x B on the tensor-product space.
ComplexMatrix kron_sum(const ComplexMatrix& a, const ComplexMatrix& b,
                       int dim_cap = 4096);

}  // namespace nht
