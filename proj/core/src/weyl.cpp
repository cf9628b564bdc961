#include "znlgt/weyl.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "znlgt/fock.hpp"

namespace znlgt {

namespace {

constexpr double pi = std::numbers::pi;

void require_dimension(int n) {
  if (n < 2)
    throw std::invalid_argument("link dimension must be at least 2, got " +
                                std::to_string(n));
}

int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Eigen::MatrixXcd shift_operator(int n) {
  require_dimension(n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) u((k + 1) % n, k) = 1.0;
  return u;
}

Eigen::MatrixXcd clock_operator(int n) {
  require_dimension(n);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    v(k, k) = std::polar(1.0, -2.0 * pi * k / n);
  return v;
}

Eigen::MatrixXcd fourier_eigenbasis(int n) {
  require_dimension(n);
  Eigen::MatrixXcd w(n, n);
  const double norm = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      w(l, k) = norm * std::polar(1.0, 2.0 * pi * double(k) * double(l) / n);
  return w;
}

double weyl_relation_residual(int n, int k, int ell) {
  require_dimension(n);
  const Eigen::MatrixXcd u = shift_operator(n);
  const Eigen::MatrixXcd v = clock_operator(n);
  const int kr = mod(k, n);
  const int lr = mod(ell, n);
  Eigen::MatrixXcd vk = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < kr; ++i) vk = vk * v;
  Eigen::MatrixXcd ul = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < lr; ++i) ul = ul * u;
  const cplx phase = std::polar(1.0, 2.0 * pi * double(kr) * double(lr) / n);
  const Eigen::MatrixXcd lhs = vk.adjoint() * ul * vk;
  return max_abs(Eigen::MatrixXcd(lhs - phase * ul));
}

Eigen::MatrixXcd field_energy_operator(int n, bool chiral) {
  require_dimension(n);
  Eigen::MatrixXcd v = clock_operator(n);
  if (chiral) v *= std::polar(1.0, -pi / n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  return 0.25 * (v - id) * (v.adjoint() - id);
}

double field_energy_eigenvalue(int n, int k, bool chiral) {
  require_dimension(n);
  const double arg = chiral ? pi * (k + 0.5) / n : pi * double(k) / n;
  const double s = std::sin(arg);
  return s * s;
}

double quadratic_approximation_error(int n, int k) {
  require_dimension(n);
  if (k <= 0 || 4 * k >= n)
    throw std::domain_error("quadratic approximation requires 0 < k < n/4");
  const double quad = std::pow(pi * double(k) / n, 2);
  return std::abs(field_energy_eigenvalue(n, k) - quad) / quad;
}

double ring_hopping_equivalence(int n) {
  require_dimension(n);
  if (n > 20)
    throw std::invalid_argument("ring check limited to n <= 20 Fock sites");

  // One-particle restriction of Σ_i c†_{i+1} c_i with periodic wrap; built on
  // the full 2^n Fock space so the Jordan-Wigner machinery is exercised.
  Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    FermionWord w = FermionWord{1} << i;  // |i>
    int sign = 1;
    if (!apply_annihilate(w, i, sign)) continue;
    if (!apply_create(w, j, sign)) continue;
    // w is again a one-particle word; locate the occupied site.
    const int target = std::countr_zero(w);
    hop(target, i) += double(sign);
  }
  return max_abs(Eigen::MatrixXcd(hop - shift_operator(n)));
}

void print_operator(std::ostream& os, const Eigen::MatrixXcd& m) {
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cplx z = m(r, c);
      std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
      os << (c ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace znlgt
