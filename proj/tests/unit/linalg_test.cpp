#include <algorithm>

#include "doctest.h"
#include "hofloq/linalg.hpp"
#include "test_support.hpp"

using namespace hofloq;

TEST_CASE("pauli algebra") {
  const Mat2 x = pauli::x(), y = pauli::y(), z = pauli::z();
  CHECK(max_abs(x * y - kI * z) < 1e-15);
  CHECK(max_abs(x * x - pauli::identity()) < 1e-15);
  CHECK(max_abs(y * z + z * y) < 1e-15);
}

TEST_CASE("kron follows the left-outer convention") {
  Mat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Mat k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(0, 1) == cplx(1));
  CHECK(k(0, 3) == cplx(2));
  CHECK(k(3, 0) == cplx(3));
  CHECK(k(2, 3) == cplx(4));
}

TEST_CASE("eigh reconstructs a Hermitian matrix") {
  const Mat h = testing::random_hermitian(24, 7);
  const auto e = eigh(h);
  CHECK(std::is_sorted(e.values.data(), e.values.data() + e.values.size()));
  const Mat back = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
  CHECK(max_abs(back - h) < 1e-12);
  CHECK(unitarity_residual(e.vectors) < 1e-12);
}

TEST_CASE("dense and sparse exponentials agree") {
  const Mat h = testing::random_hermitian(30, 11);
  const Mat dense = expm_i_hermitian(h, 0.7);
  const SparseMat hs = h.sparseView();
  const Mat sparse = expm_i_hermitian_sparse(hs, 0.7);
  CHECK(unitarity_residual(dense) < 1e-12);
  CHECK(max_abs(dense - sparse) < 1e-11);
  // exp(-i theta sigma_x) closed form
  const Mat u = expm_i_hermitian(Mat(pauli::x()), 0.3);
  CHECK(std::abs(u(0, 0) - std::cos(0.3)) < 1e-15);
  CHECK(std::abs(u(0, 1) - cplx(0, -std::sin(0.3))) < 1e-15);
}

TEST_CASE("polynomial roots via companion matrix") {
  // (z - 2)(z + 1/3) z = z^3 - (5/3) z^2 - (2/3) z
  const std::vector<cplx> coeffs{0.0, -2.0 / 3.0, -5.0 / 3.0, 1.0};
  auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(roots[1]) < 1e-12);
  CHECK(std::abs(roots[2] - 2.0) < 1e-12);
  // leading zeros are trimmed: 1 + 2z written with a vanishing z^2 term
  const std::vector<cplx> padded{1.0, 2.0, 1e-17};
  const auto r = polynomial_roots(padded);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] + 0.5) < 1e-14);
  // constant polynomial has no roots
  CHECK(polynomial_roots(std::vector<cplx>{-1.0}).empty());
}

TEST_CASE("phase folding and circle metric") {
  CHECK(fold_phase(kPi) == doctest::Approx(-kPi));
  CHECK(fold_phase(-kPi) == doctest::Approx(-kPi));
  CHECK(fold_phase(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(fold_phase(0.25) == doctest::Approx(0.25));
  CHECK(circle_distance(-kPi, kPi) < 1e-15);
  CHECK(circle_distance(3.1, -3.1) == doctest::Approx(kTwoPi - 6.2));
  CHECK(circle_distance(0.3, 0.0) == doctest::Approx(0.3));
}

TEST_CASE("residual helpers") {
  CHECK(unitarity_residual(testing::random_unitary(12, 3)) < 1e-13);
  CHECK(hermiticity_residual(testing::random_hermitian(12, 3)) == 0.0);
  Mat a = Mat::Identity(3, 3);
  a(0, 1) = 0.5;
  CHECK(hermiticity_residual(a) == doctest::Approx(0.5));
}
