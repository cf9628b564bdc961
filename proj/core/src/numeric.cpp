#include "znlgt/numeric.hpp"

namespace znlgt {

double max_abs(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrixXcd& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrixXcd::InnerIterator it(m, k); it; ++it)
      best = std::max(best, std::abs(it.value()));
  return best;
}

double unitarity_gap(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return max_abs(g);
}

double hermiticity_gap(const Eigen::MatrixXcd& m) {
  return max_abs(Eigen::MatrixXcd(m - m.adjoint()));
}

double hermiticity_gap(const SparseMatrixXcd& m) {
  SparseMatrixXcd gap = m - SparseMatrixXcd(m.adjoint());
  return max_abs(gap);
}

}  // namespace znlgt
