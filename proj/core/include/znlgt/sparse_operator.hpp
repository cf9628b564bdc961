#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "znlgt/numeric.hpp"

namespace znlgt {

using StateIndex = std::uint64_t;
using Triplet = Eigen::Triplet<cplx>;

// Complex sparse operator assembled from (row, col, value) triplets.
// Duplicate entries are summed at construction; a set hermitian flag is
// verified against the compressed matrix.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, const std::vector<Triplet>& triplets,
                 bool hermitian);
  explicit SparseOperator(SparseMatrixXcd matrix, bool hermitian);

  static SparseOperator identity(std::size_t dim);
  static SparseOperator from_diagonal(const Eigen::VectorXcd& diag,
                                      bool hermitian);
  static SparseOperator from_diagonal(const Eigen::VectorXd& diag);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t nnz() const { return static_cast<std::size_t>(matrix_.nonZeros()); }
  bool hermitian() const { return hermitian_; }

  const SparseMatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
  Eigen::VectorXcd diagonal() const { return matrix_.diagonal(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix_ * v; }

  // Restriction to rows and columns listed in `indices` (strictly increasing).
  SparseOperator restricted(const std::vector<StateIndex>& indices) const;

  // Header "dim,nnz,hermitian" followed by "row,col,re,im" lines sorted by
  // (row, col); numbers use round-trip precision so dumps are regression-stable.
  void dump(std::ostream& os) const;

  double max_abs() const;
  double hermiticity_gap() const;

 private:
  SparseMatrixXcd matrix_;
  bool hermitian_ = false;
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(double scale, const SparseOperator& a);

// max-norm of AB - BA
double commutator_max_norm(const SparseOperator& a, const SparseOperator& b);
// max-norm of AB + BA - shift·I
double anticommutator_max_norm(const SparseOperator& a, const SparseOperator& b,
                               double shift = 0.0);

}  // namespace znlgt
