#include "nht/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace nht {

void check_matrix(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw InvalidParameter("matrix must be square with dim >= 1");
  }
  if (!a.allFinite()) {
    throw InvalidParameter("matrix has non-finite entries");
  }
}

std::vector<Eigenpair> eig_general(const ComplexMatrix& a) {
  check_matrix(a);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("complex eigensolver did not converge");
  }
  const int n = static_cast<int>(a.rows());
  std::vector<Eigenpair> pairs(n);
  for (int k = 0; k < n; ++k) {
    pairs[k].value = solver.eigenvalues()(k);
    pairs[k].vector = solver.eigenvectors().col(k).normalized();
  }
  return pairs;
}

BiorthogonalEigensystem::BiorthogonalEigensystem(RealVector eigenvalues,
                                                 ComplexMatrix right,
                                                 ComplexMatrix left,
                                                 double source_residual,
                                                 BiorthOptions options)
    : eigenvalues_(std::move(eigenvalues)),
      right_(std::move(right)),
      left_(std::move(left)),
      source_residual_(source_residual) {
  const int n = dim();
  for (int k = 1; k < n; ++k) {
    if (!(eigenvalues_(k) > eigenvalues_(k - 1))) {
      throw DegenerateSpectrum("eigenvalues not strictly increasing");
    }
  }
  if (biorthogonality_residual() > options.eps_bio) {
    throw ConvergenceFailure("biorthonormality residual exceeds tolerance");
  }
  if (completeness_residual() > n * options.eps_bio) {
    throw ConvergenceFailure("completeness residual exceeds tolerance");
  }
}

double BiorthogonalEigensystem::biorthogonality_residual() const {
  ComplexMatrix gram = right_.adjoint() * left_;
  gram -= ComplexMatrix::Identity(dim(), dim());
  return gram.cwiseAbs().maxCoeff();
}

double BiorthogonalEigensystem::completeness_residual() const {
  ComplexMatrix p = right_ * left_.adjoint();
  p -= ComplexMatrix::Identity(dim(), dim());
  return p.norm();
}

BiorthogonalEigensystem biorthogonalize(const ComplexMatrix& h,
                                        const BiorthOptions& opt) {
  check_matrix(h);
  const int n = static_cast<int>(h.rows());
  const double scale = std::max(h.norm(), 1e-300);

  auto right_pairs = eig_general(h);
  for (const auto& p : right_pairs) {
    if (std::abs(p.value.imag()) > opt.eps_real_rel * scale) {
      throw ComplexSpectrum("eigenvalue with |Im| = " +
                            std::to_string(std::abs(p.value.imag())));
    }
  }
  std::sort(right_pairs.begin(), right_pairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) {
              return a.value.real() < b.value.real();
            });
  for (int k = 1; k < n; ++k) {
    const double gap =
        right_pairs[k].value.real() - right_pairs[k - 1].value.real();
    if (gap < opt.eps_gap_rel * scale) {
      throw DegenerateSpectrum("eigenvalue gap " + std::to_string(gap) +
                               " below tolerance");
    }
  }

  auto left_pairs = eig_general(h.adjoint());
  std::sort(left_pairs.begin(), left_pairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) {
              return a.value.real() < b.value.real();
            });

  RealVector eigenvalues(n);
  ComplexMatrix right(n, n), left(n, n);
  double residual = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lambda = right_pairs[k].value.real();
    eigenvalues(k) = lambda;
    right.col(k) = right_pairs[k].vector;
    // Left eigenvalues are conjugates of the right ones; after the reality
    // check the sorted order matches one-to-one.
    ComplexVector tilde = left_pairs[k].vector;
    const std::complex<double> overlap = right.col(k).dot(tilde);
    if (std::abs(overlap) < 1e-14) {
      throw ConvergenceFailure("vanishing left/right overlap (near-defective)");
    }
    left.col(k) = tilde / overlap;
    residual = std::max(residual,
                        (h * right.col(k) - lambda * right.col(k)).norm());
    residual = std::max(residual, (h.adjoint() * tilde - lambda * tilde).norm());
  }
  return BiorthogonalEigensystem(std::move(eigenvalues), std::move(right),
                                 std::move(left), residual, opt);
}

ComplexMatrix spectral_apply(const BiorthogonalEigensystem& e,
                             const std::function<double(double)>& f) {
  const int n = e.dim();
  RealVector values(n);
  for (int k = 0; k < n; ++k) {
    const double fx = f(e.eigenvalues()(k));
    if (!std::isfinite(fx)) {
      throw InvalidParameter("f is not finite on eigenvalue " +
                             std::to_string(e.eigenvalues()(k)));
    }
    values(k) = fx;
  }
  return e.right_vectors() * values.asDiagonal() * e.left_vectors().adjoint();
}

ComplexMatrix kron_sum(const ComplexMatrix& a, const ComplexMatrix& b,
                       int dim_cap) {
  check_matrix(a);
  check_matrix(b);
  const long na = a.rows(), nb = b.rows();
  if (na * nb > dim_cap) {
    throw DimensionOverflow("kron_sum dimension " + std::to_string(na * nb) +
                            " exceeds cap " + std::to_string(dim_cap));
  }
  ComplexMatrix out = ComplexMatrix::Zero(na * nb, na * nb);
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) +=
          a(i, j) * ComplexMatrix::Identity(nb, nb);
    }
    out.block(i * nb, i * nb, nb, nb) += b;
  }
  return out;
}

}  // namespace nht
