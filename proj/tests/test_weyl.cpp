#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "znlgt/weyl.hpp"

using namespace znlgt;

namespace {
constexpr double tol = 1e-12;
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("shift operator permutes the field basis cyclically") {
  const auto u2 = shift_operator(2);
  CHECK(max_abs(Eigen::MatrixXcd(u2 - (Eigen::MatrixXcd(2, 2) << 0, 1, 1, 0)
                                          .finished())) == 0.0);

  const auto u3 = shift_operator(3);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(3);
    e(k) = 1.0;
    Eigen::VectorXcd mapped = u3 * e;
    CHECK(std::abs(mapped((k + 1) % 3) - 1.0) == 0.0);
    CHECK(mapped.norm() == 1.0);
  }
}

TEST_CASE("shift operator has exact order n") {
  for (int n = 2; n <= 16; ++n) {
    const auto u = shift_operator(n);
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) power = u * power;
    CHECK(max_abs(Eigen::MatrixXcd(power - Eigen::MatrixXcd::Identity(n, n))) ==
          0.0);
    CHECK(unitarity_gap(u) <= tol);
  }
}

TEST_CASE("clock operator is diagonal with nth roots of unity") {
  const auto v2 = clock_operator(2);
  CHECK(std::abs(v2(0, 0) - cplx(1, 0)) <= tol);
  CHECK(std::abs(v2(1, 1) - cplx(-1, 0)) <= tol);

  const auto v4 = clock_operator(4);
  CHECK(std::abs(v4(1, 1) - cplx(0, -1)) <= tol);
  CHECK(std::abs(v4(2, 2) - cplx(-1, 0)) <= tol);
  CHECK(std::abs(v4(3, 3) - cplx(0, 1)) <= tol);

  for (int n = 2; n <= 16; ++n) {
    const auto v = clock_operator(n);
    CHECK(unitarity_gap(v) <= tol);
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) power = v * power;
    CHECK(max_abs(Eigen::MatrixXcd(power - Eigen::MatrixXcd::Identity(n, n))) <=
          16 * 1e-15);
  }
}

TEST_CASE("dimension below two is rejected") {
  CHECK_THROWS_AS(shift_operator(1), std::invalid_argument);
  CHECK_THROWS_AS(clock_operator(0), std::invalid_argument);
  CHECK_THROWS_AS(fourier_eigenbasis(1), std::invalid_argument);
  CHECK_THROWS_AS(field_energy_operator(-3), std::invalid_argument);
}

TEST_CASE("fourier columns diagonalize the shift operator") {
  const auto w2 = fourier_eigenbasis(2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(w2(0, 0) - r) <= tol);
  CHECK(std::abs(w2(1, 0) - r) <= tol);
  CHECK(std::abs(w2(0, 1) - r) <= tol);
  CHECK(std::abs(w2(1, 1) + r) <= tol);

  for (int n = 2; n <= 16; ++n)
    CHECK(unitarity_gap(fourier_eigenbasis(n)) <= tol);

  // U u_2 = e^{-4πi/5} u_2 at n = 5
  const auto u = shift_operator(5);
  const auto w = fourier_eigenbasis(5);
  const Eigen::VectorXcd uk = w.col(2);
  const cplx lambda = std::polar(1.0, -4.0 * pi / 5.0);
  CHECK((u * uk - lambda * uk).norm() <= tol);
}

TEST_CASE("clock lowers the fourier eigenvectors") {
  for (int n : {2, 3, 5, 8}) {
    const auto v = clock_operator(n);
    const auto w = fourier_eigenbasis(n);
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXcd lowered = v * w.col(k);
      CHECK((lowered - w.col((k + n - 1) % n)).norm() <= n * tol);
    }
    // Same statement at the matrix level: W† V W is the lowering permutation.
    const Eigen::MatrixXcd conj = w.adjoint() * v * w;
    CHECK(max_abs(Eigen::MatrixXcd(conj - shift_operator(n).adjoint())) <=
          n * tol);
  }
}

TEST_CASE("weyl relation residual vanishes") {
  CHECK(weyl_relation_residual(3, 1, 1) <= tol);
  for (int ell = 0; ell < 5; ++ell) CHECK(weyl_relation_residual(5, 0, ell) <= tol);
  for (int k = 0; k < 8; ++k)
    for (int ell = 0; ell < 8; ++ell)
      CHECK(weyl_relation_residual(8, k, ell) <= tol);
  // negative arguments reduce mod n
  CHECK(weyl_relation_residual(7, -3, 11) <= tol);
}

TEST_CASE("field energy spectrum is sin^2(pi k/n)") {
  const auto f4 = field_energy_operator(4);
  CHECK(std::abs(f4(0, 0) - 0.0) <= tol);
  CHECK(std::abs(f4(1, 1) - 0.5) <= tol);
  CHECK(std::abs(f4(2, 2) - 1.0) <= tol);
  CHECK(std::abs(f4(3, 3) - 0.5) <= tol);

  const auto f2 = field_energy_operator(2);
  CHECK(std::abs(f2(0, 0) - 0.0) <= tol);
  CHECK(std::abs(f2(1, 1) - 1.0) <= tol);

  // product construction agrees with the closed form for every n up to 64
  for (int n = 2; n <= 64; ++n) {
    const auto f = field_energy_operator(n);
    for (int k = 0; k < n; ++k) {
      const double s = std::sin(pi * k / n);
      CHECK(std::abs(f(k, k) - s * s) <= tol);
    }
    // off-diagonal entries vanish
    Eigen::MatrixXcd off = f;
    off.diagonal().setZero();
    CHECK(max_abs(off) <= tol);
  }
}

TEST_CASE("chiral variant has two degenerate minima") {
  const auto f3 = field_energy_operator(3, true);
  CHECK(std::abs(f3(0, 0) - 0.25) <= tol);
  CHECK(std::abs(f3(2, 2) - 0.25) <= tol);
  CHECK(f3(1, 1).real() > 0.25);

  for (int n : {2, 3, 4, 7, 16}) {
    const auto f = field_energy_operator(n, true);
    double lowest = 1e300;
    for (int k = 0; k < n; ++k) lowest = std::min(lowest, f(k, k).real());
    int hits = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(f(k, k).real() - lowest) <= tol) ++hits;
    CHECK(hits == 2);
    CHECK(std::abs(f(0, 0) - f(n - 1, n - 1)) <= tol);
    // non-chiral ground value is unique
    const auto g = field_energy_operator(n, false);
    int ground_hits = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(g(k, k).real()) <= tol) ++ground_hits;
    CHECK(ground_hits == 1);
  }
}

TEST_CASE("quadratic approximation error shrinks toward k/n -> 0") {
  CHECK(quadratic_approximation_error(100, 1) < 1e-3);
  const double err81 = quadratic_approximation_error(8, 1);
  CHECK(err81 < 0.06);
  CHECK(err81 > 0.04);
  // leading Taylor behavior ~ (πk/n)²/3
  const double eps = pi * 1.0 / 1000.0;
  CHECK(std::abs(quadratic_approximation_error(1000, 1) - eps * eps / 3.0) <
        1e-8);
  CHECK_THROWS_AS(quadratic_approximation_error(8, 0), std::domain_error);
  CHECK_THROWS_AS(quadratic_approximation_error(8, 2), std::domain_error);
}

TEST_CASE("single-particle ring hopping realizes the shift operator") {
  CHECK(ring_hopping_equivalence(2) <= 1e-15);
  CHECK(ring_hopping_equivalence(3) <= 1e-15);
  CHECK(ring_hopping_equivalence(12) <= 1e-15);
}

TEST_CASE("pretty printer emits re+im pairs") {
  Eigen::MatrixXcd m(1, 2);
  m << cplx(1.0, 0.0), cplx(-0.5, 2.0);
  std::ostringstream os;
  print_operator(os, m);
  CHECK(os.str() == "1+0i -0.5+2i\n");
}
