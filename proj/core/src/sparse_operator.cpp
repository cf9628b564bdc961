#include "znlgt/sparse_operator.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace znlgt {

namespace {

void check_hermitian_flag(const SparseMatrixXcd& m) {
  SparseMatrixXcd gap = m - SparseMatrixXcd(m.adjoint());
  double worst = 0.0;
  for (int k = 0; k < gap.outerSize(); ++k)
    for (SparseMatrixXcd::InnerIterator it(gap, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  if (worst > algebra_tol)
    throw std::logic_error("operator flagged hermitian violates M = M† by " +
                           std::to_string(worst));
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim,
                               const std::vector<Triplet>& triplets,
                               bool hermitian)
    : matrix_(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
      hermitian_(hermitian) {
  for (const Triplet& t : triplets)
    if (t.row() < 0 || t.col() < 0 || std::size_t(t.row()) >= dim ||
        std::size_t(t.col()) >= dim)
      throw std::out_of_range("triplet index outside operator dimension");
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.prune([](Eigen::Index, Eigen::Index, const cplx& v) {
    return v != cplx(0.0, 0.0);
  });
  matrix_.makeCompressed();
  if (hermitian_) check_hermitian_flag(matrix_);
}

SparseOperator::SparseOperator(SparseMatrixXcd matrix, bool hermitian)
    : matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("sparse operator must be square");
  matrix_.makeCompressed();
  if (hermitian_) check_hermitian_flag(matrix_);
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  SparseMatrixXcd id(static_cast<Eigen::Index>(dim),
                     static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return SparseOperator(std::move(id), true);
}

SparseOperator SparseOperator::from_diagonal(const Eigen::VectorXcd& diag,
                                             bool hermitian) {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(diag.size()));
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag(i) != cplx(0.0, 0.0))
      trips.emplace_back(int(i), int(i), diag(i));
  return SparseOperator(static_cast<std::size_t>(diag.size()), trips, hermitian);
}

SparseOperator SparseOperator::from_diagonal(const Eigen::VectorXd& diag) {
  return from_diagonal(Eigen::VectorXcd(diag.cast<cplx>()), true);
}

SparseOperator SparseOperator::restricted(
    const std::vector<StateIndex>& indices) const {
  std::unordered_map<StateIndex, int> position;
  position.reserve(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= dim())
      throw std::out_of_range("restriction index exceeds operator dimension");
    position.emplace(indices[j], int(j));
  }
  std::vector<Triplet> trips;
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    auto row_it = position.find(StateIndex(r));
    if (row_it == position.end()) continue;
    for (SparseMatrixXcd::InnerIterator it(matrix_, r); it; ++it) {
      auto col_it = position.find(StateIndex(it.col()));
      if (col_it == position.end()) continue;
      trips.emplace_back(row_it->second, col_it->second, it.value());
    }
  }
  return SparseOperator(indices.size(), trips, hermitian_);
}

void SparseOperator::dump(std::ostream& os) const {
  os << dim() << ',' << nnz() << ',' << (hermitian_ ? 1 : 0) << '\n';
  char buf[96];
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrixXcd::InnerIterator it(matrix_, r); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g", int(it.row()),
                    int(it.col()), it.value().real(), it.value().imag());
      os << buf << '\n';
    }
  }
}

double SparseOperator::max_abs() const { return znlgt::max_abs(matrix_); }

double SparseOperator::hermiticity_gap() const {
  return znlgt::hermiticity_gap(matrix_);
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("dimension mismatch in operator sum");
  SparseMatrixXcd sum = a.matrix() + b.matrix();
  return SparseOperator(std::move(sum), a.hermitian() && b.hermitian());
}

SparseOperator operator*(double scale, const SparseOperator& a) {
  SparseMatrixXcd scaled = scale * a.matrix();
  return SparseOperator(std::move(scaled), a.hermitian());
}

double commutator_max_norm(const SparseOperator& a, const SparseOperator& b) {
  SparseMatrixXcd comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return max_abs(comm);
}

double anticommutator_max_norm(const SparseOperator& a, const SparseOperator& b,
                               double shift) {
  SparseMatrixXcd anti = a.matrix() * b.matrix() + b.matrix() * a.matrix();
  if (shift != 0.0) {
    SparseMatrixXcd id(anti.rows(), anti.cols());
    id.setIdentity();
    anti -= shift * id;
  }
  return max_abs(anti);
}

}  // namespace znlgt
