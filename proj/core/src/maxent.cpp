#include "nht/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nht {

namespace {

Eigen::Vector2d forward_vec(const ObservablePair& p, double beta, double zeta) {
  const GibbsScalars s = gibbs_scalars(p, beta, zeta);
  return {s.mean_h, s.mean_k};
}

// Validates the target location against the hull; throws for exterior,
// boundary and too-thin-margin targets. Returns the hull.
HullPolygon validate_target(const ObservablePair& p, const ThermalTarget& t,
                            const SolverConfig& cfg, bool& segment_case) {
  HullPolygon hull = joint_hull(p);
  const Eigen::Vector2d pt(t.h, t.k);
  const Membership mem = hull_membership(hull, pt);
  segment_case = false;

  if (hull.degenerate) {
    if (hull.vertices.size() < 2) {
      if (mem.kind == Membership::Kind::Boundary) {
        throw TargetOnBoundary("joint spectrum is a single point");
      }
      throw TargetOutsideHull("target off the single-point hull");
    }
    // Segment hull: admit only the relative interior, where a one-parameter
    // inference remains well-posed.
    if (mem.kind != Membership::Kind::Boundary) {
      throw TargetOutsideHull("target off the degenerate segment hull");
    }
    const double margin =
        std::min((pt - hull.vertices.front()).norm(),
                 (pt - hull.vertices.back()).norm());
    if (margin <= cfg.boundary_margin * hull.diameter) {
      throw TargetOnBoundary("target at a segment endpoint");
    }
    segment_case = true;
    return hull;
  }

  if (mem.kind == Membership::Kind::Exterior) {
    throw TargetOutsideHull("target outside the joint hull, distance " +
                            std::to_string(mem.distance));
  }
  if (mem.kind == Membership::Kind::Boundary ||
      mem.margin < cfg.boundary_margin * hull.diameter) {
    throw TargetOnBoundary("target on hull facet " + std::to_string(mem.facet));
  }
  return hull;
}

// One-dimensional Newton on <H> with zeta = 0, for segment-degenerate hulls.
InferenceResult infer_segment(const ObservablePair& p, const ThermalTarget& t,
                              const SolverConfig& cfg, double diameter) {
  double beta = 0.0;
  InferenceResult result;
  result.charge_redundant = true;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const GibbsScalars s = gibbs_scalars(p, beta, 0.0);
    const double r = s.mean_h - t.h;
    result.residual_history.push_back(std::abs(r));
    if (std::abs(r) <= cfg.tol * std::max(diameter, 1.0)) {
      result.beta = beta;
      result.zeta = 0.0;
      result.state = gibbs_state(p, beta, 0.0);
      result.iterations = iter;
      return result;
    }
    double step = r / s.covariance(0, 0);
    double alpha = 1.0;
    for (int halving = 0; halving < 40; ++halving) {
      const GibbsScalars trial = gibbs_scalars(p, beta + alpha * step, 0.0);
      if (std::abs(trial.mean_h - t.h) < std::abs(r)) break;
      alpha *= 0.5;
    }
    beta += alpha * step;
  }
  throw MaxIterations("segment inference stalled at beta = " +
                      std::to_string(beta));
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly,
                      const Eigen::Vector2d& pt) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.y() > pt.y()) != (b.y() > pt.y())) {
      const double x_cross =
          a.x() + (pt.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (pt.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

std::pair<double, double> forward_map(const ObservablePair& p, double beta,
                                      double zeta) {
  const Eigen::Vector2d f = forward_vec(p, beta, zeta);
  return {f.x(), f.y()};
}

InferenceResult infer(const ObservablePair& p, const ThermalTarget& target,
                      const SolverConfig& cfg) {
  bool segment_case = false;
  const HullPolygon hull = validate_target(p, target, cfg, segment_case);
  if (segment_case) return infer_segment(p, target, cfg, hull.diameter);

  const Eigen::Vector2d t(target.h, target.k);
  Eigen::Vector2d params = Eigen::Vector2d::Zero();
  InferenceResult result;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const GibbsScalars s = gibbs_scalars(p, params.x(), params.y());
    const Eigen::Vector2d r(s.mean_h - t.x(), s.mean_k - t.y());
    const double rn = r.norm();
    result.residual_history.push_back(rn);
    const Eigen::Vector2d step = s.covariance.fullPivLu().solve(r);
    // The target-space residual alone under-resolves the multipliers where
    // the covariance is nearly singular, so the Newton step must be small
    // too before stopping.
    if (rn <= cfg.tol * hull.diameter &&
        step.norm() <= 1e-8 * std::max(1.0, params.norm())) {
      result.beta = params.x();
      result.zeta = params.y();
      result.state = gibbs_state(p, params.x(), params.y());
      result.iterations = iter;
      return result;
    }
    double alpha = 1.0;
    Eigen::Vector2d next = params + step;
    for (int halving = 0; halving < 40; ++halving) {
      next = params + alpha * step;
      if ((forward_vec(p, next.x(), next.y()) - t).norm() < rn) break;
      alpha *= 0.5;
    }
    params = next;
  }
  throw MaxIterations("Newton inference stalled; best residual " +
                      std::to_string(result.residual_history.back()));
}

std::vector<CurveSample> gamma_beta0(const ObservablePair& p, double beta0,
                                     std::span<const double> thetas) {
  if (beta0 < 0.0) throw InvalidParameter("beta0 must be >= 0");
  std::vector<CurveSample> samples;
  samples.reserve(thetas.size());
  for (double theta : thetas) {
    const GibbsScalars s =
        gibbs_scalars(p, beta0 * std::cos(theta), beta0 * std::sin(theta));
    samples.push_back({beta0, theta, s.mean_h, s.mean_k, s.entropy});
  }
  return samples;
}

std::vector<CurveSample> gamma_theta(const ObservablePair& p, double theta,
                                     std::span<const double> beta0s) {
  std::vector<CurveSample> samples;
  samples.reserve(beta0s.size());
  for (double beta0 : beta0s) {
    const GibbsScalars s =
        gibbs_scalars(p, beta0 * std::cos(theta), beta0 * std::sin(theta));
    samples.push_back({beta0, theta, s.mean_h, s.mean_k, s.entropy});
  }
  return samples;
}

PolarSolution infer_by_intersection(const ObservablePair& p,
                                    const ThermalTarget& target,
                                    const SolverConfig& cfg) {
  bool segment_case = false;
  const HullPolygon hull = validate_target(p, target, cfg, segment_case);
  if (segment_case) {
    const InferenceResult r = infer_segment(p, target, cfg, hull.diameter);
    if (r.beta >= 0.0) return {r.beta, 0.0};
    return {-r.beta, -M_PI};
  }

  const Eigen::Vector2d t(target.h, target.k);
  const Eigen::Vector2d center = forward_vec(p, 0.0, 0.0);
  const double scale = std::max(hull.diameter, 1e-300);
  if ((t - center).norm() <= cfg.tol_geo * scale) {
    return {0.0, 0.0};  // maximal-entropy point; theta is arbitrary
  }

  // The regions enclosed by the Gamma_{beta0} curves are nested in beta0;
  // bisection finds the radius whose curve passes through the target.
  const int res = cfg.theta_resolution;
  auto region_contains = [&](double beta0) {
    std::vector<Eigen::Vector2d> poly;
    poly.reserve(res);
    for (int i = 0; i < res; ++i) {
      const double theta = -M_PI + 2.0 * M_PI * i / res;
      poly.push_back(
          forward_vec(p, beta0 * std::cos(theta), beta0 * std::sin(theta)));
    }
    return point_in_polygon(poly, t);
  };

  double hi = 1.0;
  while (!region_contains(hi)) {
    hi *= 2.0;
    if (hi > cfg.beta0_cap) {
      throw TargetOnBoundary("target requires beta0 beyond cap " +
                             std::to_string(cfg.beta0_cap));
    }
  }
  double lo = 0.0;
  for (int iter = 0; iter < 60 && (hi - lo) > 1e-14 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (region_contains(mid) ? hi : lo) = mid;
  }
  double beta0 = 0.5 * (lo + hi);

  // Coarse theta scan, then golden-section refinement of the distance.
  auto dist_at = [&](double b0, double th) {
    return (forward_vec(p, b0 * std::cos(th), b0 * std::sin(th)) - t).norm();
  };
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < res; ++i) {
    const double th = -M_PI + 2.0 * M_PI * i / res;
    const double d = dist_at(beta0, th);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  const double step = 2.0 * M_PI / res;
  double a = -M_PI + (best - 1) * step;
  double b = -M_PI + (best + 1) * step;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = dist_at(beta0, x1), f2 = dist_at(beta0, x2);
  for (int iter = 0; iter < 80; ++iter) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = dist_at(beta0, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = dist_at(beta0, x2);
    }
  }
  double theta = 0.5 * (a + b);

  // Polish in Cartesian multiplier space with the exact covariance
  // Jacobian: the geometric phase only brackets the solution to the grid
  // resolution, and near-singular covariance regions need the sharper
  // step-based stopping rule to pin the multipliers themselves.
  Eigen::Vector2d params(beta0 * std::cos(theta), beta0 * std::sin(theta));
  bool converged = false;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const GibbsScalars s = gibbs_scalars(p, params.x(), params.y());
    const Eigen::Vector2d r(s.mean_h - t.x(), s.mean_k - t.y());
    const Eigen::Vector2d delta = s.covariance.fullPivLu().solve(r);
    if (r.norm() <= cfg.tol_geo * scale &&
        delta.norm() <= 1e-8 * std::max(1.0, params.norm())) {
      converged = true;
      break;
    }
    // The Jacobian of the forward map is minus the covariance, so the
    // Newton update adds the solved step.
    double alpha = 1.0;
    for (int halving = 0; halving < 40; ++halving) {
      if ((forward_vec(p, params.x() + alpha * delta.x(),
                       params.y() + alpha * delta.y()) -
           t)
              .norm() < r.norm()) {
        break;
      }
      alpha *= 0.5;
    }
    params += alpha * delta;
  }
  if (!converged) {
    throw MaxIterations("intersection solver stalled near beta0 = " +
                        std::to_string(beta0));
  }
  beta0 = params.norm();
  theta = std::atan2(params.y(), params.x());

  if (beta0 < 0.0) {
    beta0 = -beta0;
    theta += M_PI;
  }
  theta = std::remainder(theta, 2.0 * M_PI);
  if (theta >= M_PI) theta -= 2.0 * M_PI;
  if (theta < -M_PI) theta += 2.0 * M_PI;
  return {beta0, theta};
}

}  // namespace nht
