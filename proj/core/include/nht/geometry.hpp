#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nht/gibbs.hpp"

namespace nht {

// Convex hull of the joint spectrum, counterclockwise, collinear-redundant
// vertices removed. A segment or single point is flagged degenerate.
struct HullPolygon {
  std::vector<Eigen::Vector2d> vertices;
  double diameter = 0.0;
  bool degenerate = false;
};

/// Monotone-chain hull of arbitrary points.
HullPolygon convex_hull(std::span<const Eigen::Vector2d> points,
                        double eps_collinear = 1e-10);

/// Hull of the joint eigenvalue pairs {(lambda_k, mu_k)}; the closure of the
/// image of the exponential family.
HullPolygon joint_hull(const ObservablePair& p);

/// Boundary support points of the field of values W(A): for each theta the
/// top eigenvector of the Hermitian part of e^{-i theta} A evaluated on A.
std::vector<std::complex<double>> numerical_range_boundary(
    const ComplexMatrix& a, std::span<const double> thetas);

/// Field-of-values boundary of D^{1/2}(H + iK)D^{-1/2}; coincides with the
/// joint-hull boundary for commuting D-Hermitian pairs.
std::vector<std::complex<double>> metric_numerical_range_boundary(
    const ObservablePair& p, int resolution = 512);

struct Membership {
  enum class Kind { Interior, Boundary, Exterior };
  Kind kind = Kind::Exterior;
  double margin = 0.0;    // distance to the boundary (Interior)
  double distance = 0.0;  // distance to the hull (Exterior)
  int facet = -1;         // nearest edge index (Boundary)
};

/// Classifies a point against a hull with deterministic tie handling at
/// 1e-10 * diameter.
Membership hull_membership(const HullPolygon& hull, const Eigen::Vector2d& pt);

}  // namespace nht
