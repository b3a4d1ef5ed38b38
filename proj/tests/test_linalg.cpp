#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nht/linalg.hpp"
#include "nht/models.hpp"
#include "test_helpers.hpp"

using namespace nht;

namespace {

ComplexMatrix example1_h() {
  ComplexMatrix h(4, 4);
  h << 1, 1, 0, 0,
       3, 1, 1, 0,
       0, 3, 1, 1,
       0, 0, 3, 1;
  return h;
}

std::vector<double> sorted_real_eigenvalues(const ComplexMatrix& a) {
  std::vector<double> values;
  for (const auto& p : eig_general(a)) values.push_back(p.value.real());
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

TEST_CASE("eig_general on the identity") {
  const auto pairs = eig_general(ComplexMatrix::Identity(3, 3));
  REQUIRE(pairs.size() == 3);
  for (const auto& p : pairs) {
    CHECK(std::abs(p.value - 1.0) < 1e-14);
    CHECK((ComplexMatrix::Identity(3, 3) * p.vector - p.vector).norm() < 1e-14);
  }
}

TEST_CASE("example-1 spectrum matches the characteristic-polynomial oracle") {
  const ComplexMatrix h = example1_h();
  auto roots = testing::poly_roots(testing::char_poly(h));
  std::vector<double> expected;
  for (auto r : roots) {
    CHECK(std::abs(r.imag()) < 1e-10);
    expected.push_back(r.real());
  }
  std::sort(expected.begin(), expected.end());

  const auto values = sorted_real_eigenvalues(h);
  for (int k = 0; k < 4; ++k) {
    CHECK(values[k] == doctest::Approx(expected[k]).epsilon(1e-10));
  }
  // analytic closed form 1 + 2 sqrt(3) cos(k pi / 5), descending in k
  for (int k = 1; k <= 4; ++k) {
    const double lambda = 1.0 + 2.0 * std::sqrt(3.0) * std::cos(k * M_PI / 5.0);
    CHECK(values[4 - k] == doctest::Approx(lambda).epsilon(1e-12));
  }
}

TEST_CASE("Toeplitz n=12 eigenvalues follow 2 - 1.5 cos(k pi/13)") {
  // n is kept moderate here: the eigenvalue condition numbers of this
  // non-normal family grow like ((1+d)/(1-d))^(n/2), so the general dense
  // solver is only meaningful before that blows up. Large n goes through
  // the metric similarity instead (see the model tests).
  const auto m = toeplitz_model(12, std::sqrt(7.0) / 4.0);
  const auto values = sorted_real_eigenvalues(toeplitz_matrix(m));
  for (int k = 1; k <= 12; ++k) {
    const double lambda = 2.0 - 1.5 * std::cos(k * M_PI / 13.0);
    CHECK(std::abs(values[k - 1] - lambda) < 1e-9);
  }
}

TEST_CASE("biorthogonalize reduces to an orthonormal eigensystem for Hermitian input") {
  const ComplexMatrix h = testing::random_hermitian(6, 7);
  const auto e = biorthogonalize(h);
  CHECK((e.left_vectors() - e.right_vectors()).norm() < 1e-8);
  CHECK(e.source_residual() < 1e-12 * std::max(1.0, h.norm()));
}

TEST_CASE("biorthogonalize on example-1") {
  const auto e = biorthogonalize(example1_h());
  CHECK(e.biorthogonality_residual() < 1e-10);
  CHECK(e.completeness_residual() < 4e-9);
  CHECK(e.source_residual() < 1e-12 * example1_h().norm());
}

TEST_CASE("biorthogonalize on K_8 with d = 0.5") {
  const auto m = toeplitz_model(8, 0.5);
  const auto e = biorthogonalize(toeplitz_matrix(m));
  for (int k = 1; k <= 8; ++k) {
    const double lambda =
        2.0 - 2.0 * std::sqrt(0.75) * std::cos(k * M_PI / 9.0);
    CHECK(std::abs(e.eigenvalues()(k - 1) - lambda) < 1e-10);
  }
}

TEST_CASE("complex and degenerate spectra are rejected") {
  ComplexMatrix rot(2, 2);
  rot << 0, -1,
         1, 0;
  CHECK_THROWS_AS((void)biorthogonalize(rot), ComplexSpectrum);

  ComplexMatrix deg = ComplexMatrix::Zero(3, 3);
  deg.diagonal() << 1, 1, 2;
  CHECK_THROWS_AS((void)biorthogonalize(deg), DegenerateSpectrum);
}

TEST_CASE("spectral_apply basics") {
  const auto e = biorthogonalize(example1_h());

  const ComplexMatrix completeness = spectral_apply(e, [](double) { return 1.0; });
  CHECK((completeness - ComplexMatrix::Identity(4, 4)).norm() < 4e-9);

  const ComplexMatrix rebuilt = spectral_apply(e, [](double x) { return x; });
  CHECK((rebuilt - example1_h()).norm() < 1e-9);

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag.diagonal() << 0.0, std::log(2.0);
  const auto ed = biorthogonalize(diag);
  const ComplexMatrix expd = spectral_apply(ed, [](double x) { return std::exp(-x); });
  CHECK(std::abs(expd(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(expd(1, 1).real() - 0.5) < 1e-12);
}

TEST_CASE("functional calculus is a homomorphism on random cubics") {
  const auto e = biorthogonalize(example1_h());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double a[4], b[4];
    for (int i = 0; i < 4; ++i) {
      a[i] = coeff(rng);
      b[i] = coeff(rng);
    }
    auto f = [&](double x) { return a[0] + x * (a[1] + x * (a[2] + x * a[3])); };
    auto g = [&](double x) { return b[0] + x * (b[1] + x * (b[2] + x * b[3])); };
    auto fg = [&](double x) { return f(x) * g(x); };
    const ComplexMatrix lhs = spectral_apply(e, f) * spectral_apply(e, g);
    const ComplexMatrix rhs = spectral_apply(e, fg);
    CHECK((lhs - rhs).norm() < 1e-6 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("kron_sum") {
  ComplexMatrix a(1, 1), b(1, 1);
  a << 2.5;
  b << -1.0;
  CHECK(std::abs(kron_sum(a, b)(0, 0) - 1.5) < 1e-15);

  ComplexMatrix h2 = ComplexMatrix::Zero(2, 2);
  h2.diagonal() << 0.0, 1.0;
  auto values = sorted_real_eigenvalues(kron_sum(h2, h2));
  const double expected[] = {0.0, 1.0, 1.0, 2.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(values[k] - expected[k]) < 1e-12);

  // Z(H (+) H, beta) = Z(H, beta)^2
  const ComplexMatrix h = example1_h();
  const double beta = 0.7;
  double z_single = 0.0;
  for (double lambda : sorted_real_eigenvalues(h)) z_single += std::exp(-beta * lambda);
  double z_double = 0.0;
  for (double lambda : sorted_real_eigenvalues(kron_sum(h, h))) {
    z_double += std::exp(-beta * lambda);
  }
  CHECK(z_double == doctest::Approx(z_single * z_single).epsilon(1e-10));

  CHECK_THROWS_AS((void)kron_sum(ComplexMatrix::Identity(70, 70),
                                 ComplexMatrix::Identity(70, 70)),
                  DimensionOverflow);
}

TEST_CASE("eigen residual invariant holds for both models") {
  for (const ComplexMatrix& h :
       {example1_h(), toeplitz_matrix(toeplitz_model(20, 0.3))}) {
    const auto e = biorthogonalize(h);
    double residual = 0.0;
    for (int k = 0; k < e.dim(); ++k) {
      residual = std::max(residual, (h * e.right_vectors().col(k) -
                                     e.eigenvalues()(k) * e.right_vectors().col(k))
                                        .norm());
    }
    CHECK(residual < 1e-10 * h.norm());
  }
}

TEST_CASE("non-finite matrices are rejected") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)eig_general(bad), InvalidParameter);
  CHECK_THROWS_AS((void)eig_general(ComplexMatrix(2, 3)), InvalidParameter);
}
