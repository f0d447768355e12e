#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "trdf/legendre.hpp"
#include "trdf/sphere.hpp"
#include "trdf/wigner.hpp"

using namespace trdf;
using trdf_test::wigner_3j_exact;

namespace {
constexpr double kFourPi = 12.56637061435917295385;
}

TEST_CASE("wigner 3j pinned values") {
  CHECK(wigner_3j(1, 1, 1, 0, 0, 0) == 0.0);  // odd l-sum
  CHECK(wigner_3j(1, 1, 2, 0, 0, 0) == doctest::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-14));
  // (l l 0; m -m 0) = (-1)^{l-m} / sqrt(2l+1)
  for (int l = 1; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      const double sgn = ((l - m) % 2 == 0) ? 1.0 : -1.0;
      CHECK(wigner_3j(l, l, 0, m, -m, 0) ==
            doctest::Approx(sgn / std::sqrt(2.0 * l + 1.0)).epsilon(1e-13));
    }
  CHECK(wigner_3j(3, 3, 0, 1, -1, 0) == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-14));
}

TEST_CASE("wigner 3j selection rules return zero, bad degrees throw") {
  CHECK(wigner_3j(1, 1, 3, 0, 0, 0) == 0.0);   // triangle
  CHECK(wigner_3j(2, 2, 2, 1, 1, 1) == 0.0);   // m-sum
  CHECK(wigner_3j(2, 2, 2, 3, -3, 0) == 0.0);  // |m| > l
  CHECK_THROWS_AS(wigner_3j(-1, 1, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(wigner_3j(101, 101, 2, 0, 0, 0), std::out_of_range);
}

TEST_CASE("floating path agrees with the exact-rational oracle, l <= 10") {
  double worst = 0.0;
  for (int l1 = 0; l1 <= 10; ++l1)
    for (int l2 = 0; l2 <= 10; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= std::min(10, l1 + l2); ++l3)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const int m3 = -m1 - m2;
            if (std::abs(m3) > l3) continue;
            const double exact = wigner_3j_exact(l1, l2, l3, m1, m2, m3);
            const double fl = wigner_3j(l1, l2, l3, m1, m2, m3);
            // relative for generic values, absolute at exact zeros (the
            // floating sum only cancels to rounding there)
            worst = std::max(worst, std::abs(fl - exact) / std::max(1.0, std::abs(exact)));
          }
  CHECK(worst < 1e-12);
}

TEST_CASE("parity and cyclic symmetry") {
  for (int l1 = 0; l1 <= 6; ++l1)
    for (int l2 = 0; l2 <= 6; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= std::min(6, l1 + l2); ++l3)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const int m3 = -m1 - m2;
            if (std::abs(m3) > l3) continue;
            const double a = wigner_3j(l1, l2, l3, m1, m2, m3);
            const double sgn = ((l1 + l2 + l3) % 2 == 0) ? 1.0 : -1.0;
            CHECK(a == doctest::Approx(sgn * wigner_3j(l1, l2, l3, -m1, -m2, -m3))
                           .epsilon(1e-12));
            CHECK(a == doctest::Approx(wigner_3j(l2, l3, l1, m2, m3, m1)).epsilon(1e-12));
          }
}

TEST_CASE("clebsch-gordan coefficients") {
  CHECK(clebsch_gordan({0, 0, 0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(clebsch_gordan({1, 1, 2, 0, 0, 0}) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan({1, 1, 2, 1, 0, 0}) == 0.0);  // m1 + m2 != m3
}

TEST_CASE("orthogonality sums") {
  CHECK(orthogonality_sum(OrthKind::orth2, {2, 0, 0}) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(orthogonality_sum(OrthKind::orth2, {2, 1, 0}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(orthogonality_sum(OrthKind::orth4, {1, 1, 2}) == doctest::Approx(1.0).epsilon(1e-13));
  for (int L = 1; L <= 5; ++L)
    CHECK(orthogonality_sum(OrthKind::orth1, {2, 3, L, 1, L, 1}) ==
          doctest::Approx(1.0 / (2.0 * L + 1.0)).epsilon(1e-12));
  CHECK(orthogonality_sum(OrthKind::orth1, {2, 3, 2, 1, 3, 1}) ==
        doctest::Approx(0.0).epsilon(1e-13));
  for (int m1 = -2; m1 <= 2; ++m1) {
    CHECK(orthogonality_sum(OrthKind::orth3, {2, 2, m1, 1, m1, 1}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    if (m1 + 1 <= 2)
      CHECK(orthogonality_sum(OrthKind::orth3, {2, 2, m1, 1, m1 + 1, 0}) ==
            doctest::Approx(0.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(orthogonality_sum(OrthKind::orth2, {1}), std::invalid_argument);
}

TEST_CASE("gaunt integrals") {
  // All three harmonics constant: integral of Y_00^3 = 1/(2 sqrt(pi)).
  CHECK(gaunt_integral(0, 0, 0, 0, 0, 0) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(3.14159265358979323846))).epsilon(1e-14));
  CHECK(gaunt_integral(1, 0, 1, 0, 1, 0) == 0.0);  // odd l-sum
  // Pairing against Y_00: the two-harmonic integral with its (-1)^m structure.
  for (int l = 0; l <= 5; ++l)
    for (int m = -l; m <= l; ++m) {
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      CHECK(gaunt_integral(0, 0, l, m, l, -m) ==
            doctest::Approx(sgn / std::sqrt(kFourPi)).epsilon(1e-13));
    }
}

TEST_CASE("gaunt integrals match direct quadrature") {
  const QuadratureGrid grid = build_quadrature(12, 25);
  const int L = 3;
  std::vector<std::vector<std::complex<double>>> table(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    table[k].assign(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m)
        table[k][static_cast<std::size_t>(l) * (l + 1) + m] =
            spherical_harmonic({l, m}, grid.nodes[k].theta, grid.nodes[k].phi);
  }
  auto y = [&](std::size_t k, int l, int m) {
    return table[k][static_cast<std::size_t>(l) * (l + 1) + m];
  };
  for (int l1 = 0; l1 <= L; ++l1)
    for (int l2 = 0; l2 <= L; ++l2)
      for (int l3 = 0; l3 <= L; ++l3)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const int m3 = -m1 - m2;
            if (std::abs(m3) > l3) continue;
            std::complex<double> q = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k)
              q += grid.weights[k] * y(k, l1, m1) * y(k, l2, m2) * y(k, l3, m3);
            CHECK(std::abs(q.imag()) < 1e-12);
            CHECK(std::abs(q.real() - gaunt_integral(l1, m1, l2, m2, l3, m3)) < 1e-9);
          }
}
