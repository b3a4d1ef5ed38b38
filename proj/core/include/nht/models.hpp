#pragma once

#include <functional>

#include "nht/gibbs.hpp"

namespace nht {

/// The 4x4 benchmark pair: non-Hermitian tridiagonal H with spectrum
/// {1 + 2 sqrt(3) cos(k pi / 5)} and conserved charge K = H^2 / 3.
ObservablePair example1();

// Tridiagonal Toeplitz family: diagonal 2, superdiagonal 1-d, subdiagonal
// 1+d, non-Hermitian for d != 0, real spectrum for |d| < 1.
struct ToeplitzModel {
  int n = 0;
  double d = 0.0;
  RealVector analytic_eigenvalues;  // 2 - 2 sqrt(1-d^2) cos(k pi/(n+1))
};

ToeplitzModel toeplitz_model(int n, double d);

ComplexMatrix toeplitz_matrix(const ToeplitzModel& m);

/// Diagonal metric candidate with ratio (1-d)/(1+d) between consecutive
/// entries; intertwines the Toeplitz matrix with its adjoint.
ComplexMatrix toeplitz_diagonal_metric(const ToeplitzModel& m);

/// Single-charge pair (K = H) for the one-parameter sweeps.
ObservablePair toeplitz_pair(const ToeplitzModel& m);

/// Two-charge pair with second charge H^2 / 4 for two-dimensional inference.
ObservablePair toeplitz_pair_two_charge(const ToeplitzModel& m);

/// Modified Bessel function of the first kind, order zero, by power series.
double bessel_i0(double h);

struct PartitionApproximation {
  double exact = 0.0;               // Sum_k e^{-beta lambda_k}
  double approx = 0.0;              // Bessel integral minus endpoint halves
  double endpoint_corrected = 0.0;  // plus the first-derivative term
};

/// Euler-Maclaurin approximation of the Toeplitz partition sum.
PartitionApproximation euler_maclaurin_partition(const ToeplitzModel& m,
                                                 double beta);

/// Remainder R_n = -(1/2n) Int_{1/n}^1 B2({nx}) f''(x) dx of the summation
/// formula, by composite quadrature resolving each 1/n period. When d2f is
/// null the second derivative is taken by central differences.
double euler_maclaurin_remainder(const std::function<double(double)>& f, int n,
                                 const std::function<double(double)>* d2f = nullptr);

}  // namespace nht
