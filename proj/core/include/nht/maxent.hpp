#pragma once

#include <span>
#include <vector>

#include "nht/geometry.hpp"
#include "nht/gibbs.hpp"

namespace nht {

struct ThermalTarget {
  double h = 0.0;
  double k = 0.0;
};

struct CurveSample {
  double beta0 = 0.0;
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
  double entropy = 0.0;
};

struct SolverConfig {
  double tol = 1e-10;            // Newton residual, in hull-diameter units
  double tol_geo = 1e-8;         // intersection residual, same units
  double boundary_margin = 1e-8;  // required interior margin, same units
  int max_iterations = 200;
  int theta_resolution = 512;
  double beta0_cap = 1e4;
};

struct InferenceResult {
  double beta = 0.0;
  double zeta = 0.0;
  GibbsState state;
  int iterations = 0;
  std::vector<double> residual_history;
  bool charge_redundant = false;  // set when the joint hull is a segment
};

/// (beta, zeta) -> (<H>, <K>), the negative gradient of log Z.
std::pair<double, double> forward_map(const ObservablePair& p, double beta,
                                      double zeta);

/// Recovers the Lagrange multipliers matching the target expectations by
/// damped Newton descent from (0, 0), with the covariance Hessian as the
/// Jacobian.
InferenceResult infer(const ObservablePair& p, const ThermalTarget& target,
                      const SolverConfig& cfg = {});

/// Expectation-value curve at fixed radius beta0 in multiplier space,
/// beta = beta0 cos(theta), zeta = beta0 sin(theta).
std::vector<CurveSample> gamma_beta0(const ObservablePair& p, double beta0,
                                     std::span<const double> thetas);

/// Expectation-value curve at fixed angle theta for increasing beta0.
std::vector<CurveSample> gamma_theta(const ObservablePair& p, double theta,
                                     std::span<const double> beta0s);

struct PolarSolution {
  double beta0 = 0.0;
  double theta = 0.0;
};

/// The curve-intersection solver: bisection over beta0 on the nested
/// expectation regions, followed by one-dimensional search in theta.
/// Canonicalizes to beta0 >= 0, theta in [-pi, pi).
PolarSolution infer_by_intersection(const ObservablePair& p,
                                    const ThermalTarget& target,
                                    const SolverConfig& cfg = {});

}  // namespace nht
