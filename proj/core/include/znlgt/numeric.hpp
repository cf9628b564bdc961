#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace znlgt {

using cplx = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Default tolerance for exact algebraic identities in double precision.
inline constexpr double algebra_tol = 1e-12;

double max_abs(const Eigen::MatrixXcd& m);
double max_abs(const SparseMatrixXcd& m);

// max-norm of M†M - I
double unitarity_gap(const Eigen::MatrixXcd& m);
// max-norm of M - M†
double hermiticity_gap(const Eigen::MatrixXcd& m);
double hermiticity_gap(const SparseMatrixXcd& m);

}  // namespace znlgt
