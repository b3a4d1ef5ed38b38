#include "nht/gibbs.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace nht {

namespace {

constexpr double kZeroEigenvalue = 1e-14;  // 0 log 0 threshold

// Gibbs weights p_k = e^{-beta lambda_k - zeta mu_k} / Z with max-shift.
struct Weights {
  RealVector p;
  double log_z;
};

Weights weights_of(const ObservablePair& pair, double beta, double zeta) {
  if (!std::isfinite(beta) || !std::isfinite(zeta)) {
    throw InvalidParameter("beta and zeta must be finite");
  }
  const RealVector a = -beta * pair.energies() - zeta * pair.charges();
  const double shift = a.maxCoeff();
  RealVector p = (a.array() - shift).exp();
  const double sum = p.sum();
  p /= sum;
  return {std::move(p), shift + std::log(sum)};
}

// Real spectrum of a D-Hermitian state via its Hermitian similar
// sigma = D^{1/2} rho D^{-1/2}; validates trace and positivity.
RealVector state_spectrum(const ObservablePair& pair, const ComplexMatrix& rho) {
  check_matrix(rho);
  if (rho.rows() != pair.dim()) {
    throw InvalidParameter("state dimension mismatch");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10) {
    throw InvalidState("Tr rho != 1");
  }
  const MetricOperator& d = pair.metric();
  ComplexMatrix sigma = d.sqrt() * rho * d.inv_sqrt();
  sigma = 0.5 * (sigma + sigma.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sigma);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigensolver failed on state spectrum");
  }
  RealVector eta = solver.eigenvalues();
  if (eta.minCoeff() < -1e-10) {
    throw InvalidState("state has eigenvalue " + std::to_string(eta.minCoeff()));
  }
  return eta;
}

double entropy_of_spectrum(const RealVector& eta) {
  double s = 0.0;
  for (int k = 0; k < eta.size(); ++k) {
    if (eta(k) > kZeroEigenvalue) s -= eta(k) * std::log(eta(k));
  }
  return s;
}

double real_trace_product(const ComplexMatrix& x, const ComplexMatrix& rho) {
  const std::complex<double> t = (x * rho).trace();
  const double scale = std::max(1.0, x.norm() * rho.norm());
  if (std::abs(t.imag()) > 1e-9 * scale) {
    throw InvalidState("Tr(X rho) has imaginary part " +
                       std::to_string(t.imag()));
  }
  return t.real();
}

}  // namespace

ObservablePair ObservablePair::build(ComplexMatrix h, ComplexMatrix k,
                                     const PairOptions& opt) {
  check_matrix(h);
  check_matrix(k);
  if (h.rows() != k.rows()) {
    throw InvalidParameter("H and K dimensions differ");
  }
  const double h_scale = std::max(h.norm(), 1e-300);
  const double k_scale = std::max(k.norm(), 1e-300);
  if ((h * k - k * h).norm() > opt.eps_comm * h_scale * k_scale) {
    throw IncompatibleObservables("[H, K] != 0 within tolerance");
  }

  BiorthogonalEigensystem e = biorthogonalize(h, opt.biorth);
  MetricOperator d = build_metric(e);
  if (pseudo_hermiticity_residual(d, k) > opt.eps_pseudo) {
    throw NotDHermitian("K is not D-Hermitian for the metric of H");
  }

  const int n = e.dim();
  RealVector charges(n);
  for (int idx = 0; idx < n; ++idx) {
    const ComplexVector psi = e.right_vectors().col(idx);
    const std::complex<double> mu = e.left_vectors().col(idx).dot(k * psi);
    if (std::abs(mu.imag()) > opt.eps_charge_rel * k_scale) {
      throw IncompatibleObservables("complex charge eigenvalue");
    }
    if ((k * psi - mu.real() * psi).norm() > opt.eps_charge_rel * k_scale) {
      throw IncompatibleObservables(
          "K does not act diagonally on the energy eigenbasis");
    }
    charges(idx) = mu.real();
  }
  RealVector energies = e.eigenvalues();
  return ObservablePair(std::move(h), std::move(k), std::move(e), std::move(d),
                        std::move(energies), std::move(charges));
}

ObservablePair ObservablePair::build_with_metric(ComplexMatrix h,
                                                 ComplexMatrix k,
                                                 MetricOperator metric,
                                                 const PairOptions& opt) {
  check_matrix(h);
  check_matrix(k);
  if (h.rows() != k.rows() || h.rows() != metric.dim()) {
    throw InvalidParameter("H, K and metric dimensions differ");
  }
  const double h_scale = std::max(h.norm(), 1e-300);
  const double k_scale = std::max(k.norm(), 1e-300);
  if ((h * k - k * h).norm() > opt.eps_comm * h_scale * k_scale) {
    throw IncompatibleObservables("[H, K] != 0 within tolerance");
  }

  // The similarity is exactly Hermitian for a correct metric; symmetrizing
  // removes roundoff before the self-adjoint solve.
  ComplexMatrix a = metric.sqrt() * h * metric.inv_sqrt();
  if ((a - a.adjoint()).norm() > opt.eps_pseudo * std::max(1.0, a.norm())) {
    throw NotDHermitian("H is not Hermitian for the supplied metric");
  }
  a = 0.5 * (a + a.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver failed");
  }
  RealVector energies = solver.eigenvalues();
  const int n = static_cast<int>(h.rows());
  for (int idx = 1; idx < n; ++idx) {
    if (energies(idx) - energies(idx - 1) <
        opt.biorth.eps_gap_rel * h_scale) {
      throw DegenerateSpectrum("eigenvalue gap below tolerance");
    }
  }
  const ComplexMatrix& u = solver.eigenvectors();
  ComplexMatrix right = metric.inv_sqrt() * u;
  ComplexMatrix left = metric.sqrt() * u;

  // Charges in the symmetrized basis, where all norms stay O(||K||).
  ComplexMatrix b = metric.sqrt() * k * metric.inv_sqrt();
  if ((b - b.adjoint()).norm() > opt.eps_pseudo * std::max(1.0, b.norm())) {
    throw NotDHermitian("K is not Hermitian for the supplied metric");
  }
  b = 0.5 * (b + b.adjoint().eval());
  const ComplexMatrix c = u.adjoint() * b * u;
  RealVector charges(n);
  for (int idx = 0; idx < n; ++idx) {
    ComplexVector column = c.col(idx);
    charges(idx) = column(idx).real();
    column(idx) = 0.0;
    if (column.norm() > opt.eps_charge_rel * k_scale) {
      throw IncompatibleObservables(
          "K does not act diagonally on the energy eigenbasis");
    }
  }

  const double residual = (a * u - u * energies.asDiagonal()).norm();

  // Biorthonormality and completeness are exact up to the unitarity defect
  // of u, so enforce that defect directly; measured in the original basis
  // the same defect is amplified by the metric condition number, which the
  // relaxed tolerance below accounts for.
  const double defect =
      std::max((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(),
               (u * u.adjoint() - ComplexMatrix::Identity(n, n)).norm());
  if (defect > n * opt.biorth.eps_bio) {
    throw ConvergenceFailure("eigenbasis unitarity defect exceeds tolerance");
  }
  BiorthOptions relaxed = opt.biorth;
  const double metric_cond =
      metric.matrix().norm() / std::max(metric.min_eigenvalue(), 1e-300);
  relaxed.eps_bio *= std::max(1.0, metric_cond);
  BiorthogonalEigensystem e(std::move(energies), std::move(right),
                            std::move(left), residual, relaxed);
  RealVector energies_copy = e.eigenvalues();
  return ObservablePair(std::move(h), std::move(k), std::move(e),
                        std::move(metric), std::move(energies_copy),
                        std::move(charges));
}

double log_partition(const ObservablePair& p, double beta, double zeta) {
  return weights_of(p, beta, zeta).log_z;
}

GibbsScalars gibbs_scalars(const ObservablePair& p, double beta, double zeta) {
  const auto [w, log_z] = weights_of(p, beta, zeta);
  GibbsScalars out;
  out.beta = beta;
  out.zeta = zeta;
  out.log_z = log_z;
  out.mean_h = w.dot(p.energies());
  out.mean_k = w.dot(p.charges());
  // log p_k = -beta lambda_k - zeta mu_k - log Z, so the entropy reduces to
  // the Legendre form log Z + beta <H> + zeta <K>.
  out.entropy = log_z + beta * out.mean_h + zeta * out.mean_k;
  const RealVector dl = p.energies().array() - out.mean_h;
  const RealVector dm = p.charges().array() - out.mean_k;
  out.covariance(0, 0) = w.dot(dl.cwiseProduct(dl));
  out.covariance(1, 1) = w.dot(dm.cwiseProduct(dm));
  out.covariance(0, 1) = out.covariance(1, 0) = w.dot(dl.cwiseProduct(dm));
  return out;
}

GibbsState gibbs_state(const ObservablePair& p, double beta, double zeta) {
  GibbsState state;
  static_cast<GibbsScalars&>(state) = gibbs_scalars(p, beta, zeta);
  const auto [w, log_z] = weights_of(p, beta, zeta);
  state.rho = p.eigensystem().right_vectors() * w.asDiagonal() *
              p.eigensystem().left_vectors().adjoint();
  return state;
}

double entropy_of_state(const ObservablePair& p, const ComplexMatrix& rho) {
  return entropy_of_spectrum(state_spectrum(p, rho));
}

double free_energy(const ObservablePair& p, const ComplexMatrix& rho) {
  const RealVector eta = state_spectrum(p, rho);
  return real_trace_product(p.h(), rho) - entropy_of_spectrum(eta);
}

double theorem1_gap(const ObservablePair& p, const ComplexMatrix& rho,
                    double beta, double zeta) {
  const RealVector eta = state_spectrum(p, rho);
  double tr_rho_log_rho = 0.0;
  for (int k = 0; k < eta.size(); ++k) {
    if (eta(k) > kZeroEigenvalue) tr_rho_log_rho += eta(k) * std::log(eta(k));
  }
  return beta * real_trace_product(p.h(), rho) +
         zeta * real_trace_product(p.k(), rho) + tr_rho_log_rho +
         log_partition(p, beta, zeta);
}

Eigen::Matrix2d covariance_hessian(const ObservablePair& p, double beta,
                                   double zeta) {
  return gibbs_scalars(p, beta, zeta).covariance;
}

ScalingReport compose_n(const ObservablePair& p, int copies, double beta,
                        double zeta, int dim_cap) {
  if (copies < 1) throw InvalidParameter("copies must be >= 1");
  const GibbsScalars single = gibbs_scalars(p, beta, zeta);

  ScalingReport report;
  report.copies = copies;
  report.log_z = copies * single.log_z;
  report.mean_h = copies * single.mean_h;
  report.entropy = copies * single.entropy;
  report.var_h = copies * single.covariance(0, 0);
  report.relative_error_ratio = 1.0 / std::sqrt(static_cast<double>(copies));

  const long n2 = static_cast<long>(p.dim()) * p.dim();
  if (copies == 2 && zeta == 0.0 && n2 <= dim_cap) {
    // Explicit route: eigenvalues of H (+) H give the composed weights.
    const ComplexMatrix hc = kron_sum(p.h(), p.h(), dim_cap);
    auto pairs = eig_general(hc);
    RealVector nu(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      nu(static_cast<int>(k)) = pairs[k].value.real();
    }
    const RealVector a = -beta * nu;
    const double shift = a.maxCoeff();
    RealVector q = (a.array() - shift).exp();
    const double sum = q.sum();
    q /= sum;
    const double log_z = shift + std::log(sum);
    const double mean = q.dot(nu);
    const double entropy = log_z + beta * mean;
    const double var = q.dot((nu.array() - mean).square().matrix());

    auto rel = [](double got, double want) {
      return std::abs(got - want) / std::max(1.0, std::abs(want));
    };
    report.explicit_check = true;
    report.max_relative_deviation =
        std::max({rel(log_z, report.log_z), rel(mean, report.mean_h),
                  rel(entropy, report.entropy), rel(var, report.var_h)});
  }
  return report;
}

}  // namespace nht
