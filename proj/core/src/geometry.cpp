#include "nht/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace nht {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

HullPolygon convex_hull(std::span<const Eigen::Vector2d> points,
                        double eps_collinear) {
  if (points.empty()) throw InvalidParameter("convex_hull of no points");
  std::vector<Eigen::Vector2d> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());

  HullPolygon hull;
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      hull.diameter = std::max(hull.diameter, (a - b).norm());
    }
  }
  const double eps = eps_collinear * std::max(hull.diameter, 1.0);

  if (pts.size() <= 2) {
    hull.vertices = pts;
    hull.degenerate = true;
    return hull;
  }

  // Monotone chain, dropping collinear-redundant vertices.
  auto build = [&](auto begin, auto end) {
    std::vector<Eigen::Vector2d> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             cross2(chain.back() - chain[chain.size() - 2],
                    *it - chain.back()) <= eps) {
        chain.pop_back();
      }
      chain.push_back(*it);
    }
    return chain;
  };
  auto lower = build(pts.begin(), pts.end());
  auto upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  hull.vertices = std::move(lower);
  hull.vertices.insert(hull.vertices.end(), upper.begin(), upper.end());
  if (hull.vertices.size() <= 2) hull.degenerate = true;
  return hull;
}

HullPolygon joint_hull(const ObservablePair& p) {
  std::vector<Eigen::Vector2d> pts(p.dim());
  for (int k = 0; k < p.dim(); ++k) {
    pts[k] = {p.energies()(k), p.charges()(k)};
  }
  return convex_hull(pts);
}

std::vector<std::complex<double>> numerical_range_boundary(
    const ComplexMatrix& a, std::span<const double> thetas) {
  check_matrix(a);
  std::vector<std::complex<double>> boundary;
  boundary.reserve(thetas.size());
  for (double theta : thetas) {
    const std::complex<double> phase(std::cos(theta), -std::sin(theta));
    ComplexMatrix herm = 0.5 * (phase * a + (phase * a).adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceFailure("eigensolver failed on numerical range support");
    }
    const ComplexVector psi = solver.eigenvectors().col(a.rows() - 1);
    boundary.push_back(psi.dot(a * psi));
  }
  return boundary;
}

std::vector<std::complex<double>> metric_numerical_range_boundary(
    const ObservablePair& p, int resolution) {
  const std::complex<double> im(0.0, 1.0);
  const ComplexMatrix a0 =
      p.metric().sqrt() * (p.h() + im * p.k()) * p.metric().inv_sqrt();
  std::vector<double> thetas(resolution);
  for (int i = 0; i < resolution; ++i) {
    thetas[i] = -M_PI + 2.0 * M_PI * i / resolution;
  }
  return numerical_range_boundary(a0, thetas);
}

Membership hull_membership(const HullPolygon& hull, const Eigen::Vector2d& pt) {
  const double eps = 1e-10 * std::max(hull.diameter, 1.0);
  Membership m;

  const auto& v = hull.vertices;
  if (v.size() <= 2 || hull.degenerate) {
    double dist = std::numeric_limits<double>::infinity();
    int facet = -1;
    if (v.size() == 1) {
      dist = (pt - v[0]).norm();
      facet = 0;
    } else {
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = point_segment_distance(pt, v[i], v[i + 1]);
        if (d < dist) {
          dist = d;
          facet = static_cast<int>(i);
        }
      }
    }
    if (dist <= eps) {
      m.kind = Membership::Kind::Boundary;
      m.facet = facet;
    } else {
      m.kind = Membership::Kind::Exterior;
      m.distance = dist;
    }
    return m;
  }

  double min_signed = std::numeric_limits<double>::infinity();
  int min_edge = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector2d& a = v[i];
    const Eigen::Vector2d& b = v[(i + 1) % v.size()];
    const double signed_dist = cross2(b - a, pt - a) / (b - a).norm();
    if (signed_dist < min_signed) {
      min_signed = signed_dist;
      min_edge = static_cast<int>(i);
    }
  }
  if (min_signed > eps) {
    m.kind = Membership::Kind::Interior;
    m.margin = min_signed;
    m.facet = min_edge;
  } else if (min_signed >= -eps) {
    m.kind = Membership::Kind::Boundary;
    m.facet = min_edge;
  } else {
    m.kind = Membership::Kind::Exterior;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d =
          point_segment_distance(pt, v[i], v[(i + 1) % v.size()]);
      if (d < dist) {
        dist = d;
        m.facet = static_cast<int>(i);
      }
      dist = std::min(dist, d);
    }
    m.distance = dist;
  }
  return m;
}

}  // namespace nht
