#pragma once

#include <utility>

#include "nht/linalg.hpp"
#include "nht/metric.hpp"

namespace nht {

struct PairOptions {
  BiorthOptions biorth = {};
  double eps_comm = 1e-9;      // ||[H,K]|| <= eps_comm ||H|| ||K||
  double eps_pseudo = 1e-8;    // pseudo-hermiticity residual bound for K
  double eps_charge_rel = 1e-8;  // ||K psi - mu psi|| <= eps * ||K||_F
};

// A commuting pair of D-Hermitian observables (H, K) sharing the eigenbasis
// of H, with the joint spectrum {(lambda_k, mu_k)}.
class ObservablePair {
 public:
  static ObservablePair build(ComplexMatrix h, ComplexMatrix k,
                              const PairOptions& opt = {});

  /// Variant for models whose metric is known in closed form. Diagonalizes
  /// the Hermitian similar D^{1/2} H D^{-1/2}, which stays well conditioned
  /// even when the eigenbasis of H itself is nearly defective.
  static ObservablePair build_with_metric(ComplexMatrix h, ComplexMatrix k,
                                          MetricOperator metric,
                                          const PairOptions& opt = {});

  int dim() const { return eigensystem_.dim(); }
  const ComplexMatrix& h() const { return h_; }
  const ComplexMatrix& k() const { return k_; }
  const BiorthogonalEigensystem& eigensystem() const { return eigensystem_; }
  const MetricOperator& metric() const { return metric_; }
  const RealVector& energies() const { return energies_; }
  const RealVector& charges() const { return charges_; }

 private:
  ObservablePair(ComplexMatrix h, ComplexMatrix k,
                 BiorthogonalEigensystem eigensystem, MetricOperator metric,
                 RealVector energies, RealVector charges)
      : h_(std::move(h)),
        k_(std::move(k)),
        eigensystem_(std::move(eigensystem)),
        metric_(std::move(metric)),
        energies_(std::move(energies)),
        charges_(std::move(charges)) {}

  ComplexMatrix h_;
  ComplexMatrix k_;
  BiorthogonalEigensystem eigensystem_;
  MetricOperator metric_;
  RealVector energies_;
  RealVector charges_;
};

// Scalar content of a two-charge Gibbs state; covariance is the Hessian of
// log Z at (beta, zeta).
struct GibbsScalars {
  double beta = 0.0;
  double zeta = 0.0;
  double log_z = 0.0;
  double mean_h = 0.0;
  double mean_k = 0.0;
  double entropy = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
};

struct GibbsState : GibbsScalars {
  ComplexMatrix rho;
};

/// log Tr e^{-beta H - zeta K}, evaluated with max-shift stabilization.
double log_partition(const ObservablePair& p, double beta, double zeta);

/// Scalar observables of the Gibbs state without forming rho.
GibbsScalars gibbs_scalars(const ObservablePair& p, double beta, double zeta);

/// Full Gibbs state rho = e^{-beta H - zeta K} / Z.
GibbsState gibbs_state(const ObservablePair& p, double beta, double zeta);

/// Von Neumann entropy -Tr rho log rho of a D-Hermitian density matrix,
/// with the 0 log 0 = 0 convention.
double entropy_of_state(const ObservablePair& p, const ComplexMatrix& rho);

/// Tr(H rho) - S_rho (beta = 1 convention); equals -log Z(1, 0) at the
/// equilibrium state.
double free_energy(const ObservablePair& p, const ComplexMatrix& rho);

/// Tr rho (beta H + zeta K + log rho) + log Z. Non-negative for admissible
/// states; zero exactly at the Gibbs state.
double theorem1_gap(const ObservablePair& p, const ComplexMatrix& rho,
                    double beta, double zeta);

/// Covariance of (lambda, mu) under the Gibbs weights = Hessian of log Z.
Eigen::Matrix2d covariance_hessian(const ObservablePair& p, double beta,
                                   double zeta);

struct ScalingReport {
  int copies = 1;
  bool explicit_check = false;    // true when verified via kron_sum matrices
  double log_z = 0.0;
  double mean_h = 0.0;
  double entropy = 0.0;
  double var_h = 0.0;
  double max_relative_deviation = 0.0;  // composed vs N x single-system values
  double relative_error_ratio = 1.0;    // stat. error relative to one copy
};

/// Extensivity report for N identical non-interacting copies. N = 2 with
/// zeta = 0 is checked explicitly through kron_sum; otherwise analytic.
ScalingReport compose_n(const ObservablePair& p, int copies, double beta,
                        double zeta, int dim_cap = 4096);

}  // namespace nht
