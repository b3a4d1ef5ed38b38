#include "nht/models.hpp"

#include <cmath>

namespace nht {

ObservablePair example1() {
  ComplexMatrix h(4, 4);
  h << 1, 1, 0, 0,
       3, 1, 1, 0,
       0, 3, 1, 1,
       0, 0, 3, 1;
  const ComplexMatrix k = h * h / 3.0;
  return ObservablePair::build(h, k);
}

ToeplitzModel toeplitz_model(int n, double d) {
  if (n < 2) throw InvalidParameter("Toeplitz model needs n >= 2");
  if (!(std::abs(d) < 1.0)) {
    throw InvalidParameter("|d| < 1 required for a real spectrum");
  }
  ToeplitzModel m;
  m.n = n;
  m.d = d;
  m.analytic_eigenvalues.resize(n);
  const double s = std::sqrt(1.0 - d * d);
  for (int k = 1; k <= n; ++k) {
    m.analytic_eigenvalues(k - 1) = 2.0 - 2.0 * s * std::cos(k * M_PI / (n + 1));
  }
  return m;
}

ComplexMatrix toeplitz_matrix(const ToeplitzModel& m) {
  ComplexMatrix a = ComplexMatrix::Zero(m.n, m.n);
  for (int i = 0; i < m.n; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < m.n) {
      a(i, i + 1) = 1.0 - m.d;
      a(i + 1, i) = 1.0 + m.d;
    }
  }
  return a;
}

ComplexMatrix toeplitz_diagonal_metric(const ToeplitzModel& m) {
  ComplexMatrix d = ComplexMatrix::Zero(m.n, m.n);
  const double ratio = (1.0 - m.d) / (1.0 + m.d);
  double entry = 1.0;
  for (int i = 0; i < m.n; ++i) {
    d(i, i) = entry;
    entry *= ratio;
  }
  return d;
}

namespace {

// The diagonal metric entries span ((1-d)/(1+d))^n, far below any relative
// positivity threshold for large n, yet they are exact positive powers; the
// similarity it induces is a well-conditioned symmetric tridiagonal matrix,
// which is the only numerically sound route to the spectrum at large n.
MetricOperator toeplitz_metric_operator(const ToeplitzModel& m) {
  return MetricOperator(toeplitz_diagonal_metric(m), /*eps_pd_rel=*/0.0);
}

}  // namespace

ObservablePair toeplitz_pair(const ToeplitzModel& m) {
  const ComplexMatrix a = toeplitz_matrix(m);
  return ObservablePair::build_with_metric(a, a, toeplitz_metric_operator(m));
}

ObservablePair toeplitz_pair_two_charge(const ToeplitzModel& m) {
  const ComplexMatrix a = toeplitz_matrix(m);
  return ObservablePair::build_with_metric(a, a * a / 4.0,
                                           toeplitz_metric_operator(m));
}

double bessel_i0(double h) {
  if (!(std::abs(h) <= 800.0)) {
    throw Overflow("bessel_i0 argument beyond overflow guard");
  }
  const double q = h * h / 4.0;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 10000; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

PartitionApproximation euler_maclaurin_partition(const ToeplitzModel& m,
                                                 double beta) {
  if (!std::isfinite(beta)) throw InvalidParameter("beta must be finite");
  const double s = std::sqrt(1.0 - m.d * m.d);
  const double b = 2.0;

  PartitionApproximation out;
  out.exact = (-beta * m.analytic_eigenvalues.array()).exp().sum();

  // f(k) = e^{-beta (b - 2 s cos(k pi/(n+1)))}; the integral over one half
  // period gives the Bessel term, the endpoints sit at b -+ 2s.
  out.approx = std::exp(-beta * b) * (m.n + 1) * bessel_i0(2.0 * beta * s) -
               0.5 * (std::exp(-beta * (b + 2.0 * s)) +
                      std::exp(-beta * (b - 2.0 * s)));

  auto f_prime = [&](double k) {
    const double lambda = b - 2.0 * s * std::cos(k * M_PI / (m.n + 1));
    const double dlambda = 2.0 * s * std::sin(k * M_PI / (m.n + 1)) * M_PI /
                           (m.n + 1);
    return -beta * dlambda * std::exp(-beta * lambda);
  };
  out.endpoint_corrected =
      out.approx + (f_prime(m.n + 1.0) - f_prime(0.0)) / 12.0;
  return out;
}

namespace {

// B2 on the unit interval, evaluated on the fractional part of nx.
double bernoulli2_frac(double t) {
  const double x = t - std::floor(t);
  return x * x - x + 1.0 / 6.0;
}

double remainder_integral(const std::function<double(double)>& d2f, int n,
                          int panels_per_period) {
  // Composite Simpson on each period [k/n, (k+1)/n], where B2({nx}) is a
  // plain quadratic.
  double total = 0.0;
  for (int k = 1; k < n; ++k) {
    const double a = static_cast<double>(k) / n;
    const double b = static_cast<double>(k + 1) / n;
    const double h = (b - a) / panels_per_period;
    double acc = 0.0;
    for (int i = 0; i < panels_per_period; ++i) {
      const double x0 = a + i * h;
      const double x1 = x0 + 0.5 * h;
      const double x2 = x0 + h;
      acc += (h / 6.0) * (bernoulli2_frac(n * x0) * d2f(x0) +
                          4.0 * bernoulli2_frac(n * x1) * d2f(x1) +
                          bernoulli2_frac(n * x2) * d2f(x2));
    }
    total += acc;
  }
  return -total / (2.0 * n);
}

}  // namespace

double euler_maclaurin_remainder(const std::function<double(double)>& f, int n,
                                 const std::function<double(double)>* d2f) {
  if (n < 2) throw InvalidParameter("remainder needs n >= 2");
  std::function<double(double)> second;
  if (d2f != nullptr) {
    second = *d2f;
  } else {
    const double h = 1e-5;
    second = [f, h](double x) {
      const double xc = std::clamp(x, h, 1.0 - h);
      return (f(xc + h) - 2.0 * f(xc) + f(xc - h)) / (h * h);
    };
  }
  double coarse = remainder_integral(second, n, 16);
  for (int panels = 32; panels <= 512; panels *= 2) {
    const double fine = remainder_integral(second, n, panels);
    if (std::abs(fine - coarse) <= 1e-10 * std::max(1.0, std::abs(fine))) {
      return fine;
    }
    coarse = fine;
  }
  throw QuadratureFailure("remainder quadrature did not settle");
}

}  // namespace nht
