#include "znlgt/effective.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace znlgt {

namespace {

SparseMatrixXcd selection_matrix(const SectorProjector& proj) {
  SparseMatrixXcd s(Eigen::Index(proj.dim_full), Eigen::Index(proj.dim_sector()));
  std::vector<Triplet> trips;
  trips.reserve(proj.dim_sector());
  for (std::size_t j = 0; j < proj.indices.size(); ++j)
    trips.emplace_back(int(proj.indices[j]), int(j), 1.0);
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

std::vector<char> sector_mask(const SectorProjector& proj) {
  std::vector<char> mask(proj.dim_full, 0);
  for (const StateIndex idx : proj.indices) mask[idx] = 1;
  return mask;
}

void check_dims(const SparseOperator& h0, const SectorProjector& proj) {
  if (h0.dim() != proj.dim_full)
    throw std::invalid_argument("operator and projector dimensions differ");
}

}  // namespace

SectorProjector physical_projector(const LatticeSpec& spec) {
  SectorProjector proj;
  proj.indices = physical_filter(spec);
  proj.dim_full = spec.dim();
  return proj;
}

SparseOperator restrict_to_sector(const SparseOperator& op,
                                  const SectorProjector& proj) {
  if (op.dim() != proj.dim_full)
    throw std::invalid_argument("operator and projector dimensions differ");
  return op.restricted(proj.indices);
}

Eigen::VectorXcd embed_sector_vector(const Eigen::VectorXcd& v,
                                     const SectorProjector& proj) {
  if (std::size_t(v.size()) != proj.dim_sector())
    throw std::invalid_argument("sector vector has wrong length");
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index(proj.dim_full));
  for (std::size_t j = 0; j < proj.indices.size(); ++j)
    full(Eigen::Index(proj.indices[j])) = v(Eigen::Index(j));
  return full;
}

SparseOperator second_order_effective(const SparseOperator& h0,
                                      const SparseOperator& gamma,
                                      const PenaltyParams& pp, int n,
                                      const SectorProjector& proj) {
  check_dims(h0, proj);
  if (gamma.dim() != h0.dim())
    throw std::invalid_argument("H_(0) and Γ dimensions differ");
  if (pp.u <= 0.0)
    throw std::invalid_argument("penalty scale u must be positive");

  const SparseMatrixXcd s = selection_matrix(proj);
  const SparseMatrixXcd a = h0.matrix() * s;  // H0 P, sector columns
  const auto mask = sector_mask(proj);
  const Eigen::VectorXcd gdiag = gamma.diagonal();
  const double gap = penalty_gap(n);

  // First term P H0 P and the resolvent-scaled off-sector block in one pass.
  std::vector<Triplet> first;
  std::vector<Triplet> scaled;
  std::vector<int> sector_row(proj.dim_full, -1);
  for (std::size_t j = 0; j < proj.indices.size(); ++j)
    sector_row[proj.indices[j]] = int(j);

  for (int r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrixXcd::InnerIterator it(a, r); it; ++it) {
      if (mask[std::size_t(it.row())]) {
        first.emplace_back(sector_row[std::size_t(it.row())], int(it.col()),
                           it.value());
      } else {
        const double g = gdiag(it.row()).real();
        if (g <= 0.0)
          throw std::logic_error("Γ vanishes outside its declared kernel");
        scaled.emplace_back(int(it.row()), int(it.col()),
                            it.value() * gap / (pp.u * g));
      }
    }
  }

  const Eigen::Index ds = Eigen::Index(proj.dim_sector());
  SparseMatrixXcd first_m(ds, ds);
  first_m.setFromTriplets(first.begin(), first.end());
  SparseMatrixXcd scaled_m(Eigen::Index(proj.dim_full), ds);
  scaled_m.setFromTriplets(scaled.begin(), scaled.end());

  const SparseMatrixXcd a_dag(a.adjoint());
  const SparseMatrixXcd second_m(a_dag * scaled_m);
  SparseMatrixXcd result = first_m - second_m;
  return SparseOperator(std::move(result), true);
}

SparseOperator second_order_simplified(const SparseOperator& h0,
                                       const SparseOperator& hd,
                                       const PenaltyParams& pp,
                                       const SectorProjector& proj) {
  check_dims(h0, proj);
  if (pp.u <= 0.0)
    throw std::invalid_argument("penalty scale u must be positive");
  const SparseMatrixXcd s = selection_matrix(proj);
  const SparseMatrixXcd a = h0.matrix() * s;
  const auto mask = sector_mask(proj);

  std::vector<Triplet> off;
  for (int r = 0; r < a.outerSize(); ++r)
    for (SparseMatrixXcd::InnerIterator it(a, r); it; ++it)
      if (!mask[std::size_t(it.row())])
        off.emplace_back(int(it.row()), int(it.col()), it.value());
  SparseMatrixXcd qa(Eigen::Index(proj.dim_full), Eigen::Index(proj.dim_sector()));
  qa.setFromTriplets(off.begin(), off.end());

  const SparseMatrixXcd hd_sector = restrict_to_sector(hd, proj).matrix();
  const SparseMatrixXcd a_dag(a.adjoint());
  SparseMatrixXcd second_m(a_dag * qa);
  second_m *= cplx(1.0 / (2.0 * pp.u), 0.0);
  SparseMatrixXcd result = hd_sector - second_m;
  return SparseOperator(std::move(result), true);
}

double coupling_support_check(const SparseOperator& h0,
                              const SparseOperator& gamma,
                              const SectorProjector& proj, int n) {
  check_dims(h0, proj);
  const SparseMatrixXcd s = selection_matrix(proj);
  Eigen::SparseMatrix<cplx> a = h0.matrix() * s;  // column-major for column scans
  const auto mask = sector_mask(proj);
  const Eigen::VectorXcd gdiag = gamma.diagonal();
  const double two_gap = 2.0 * penalty_gap(n);

  double worst = 0.0;
  for (int c = 0; c < a.outerSize(); ++c) {
    double norm2 = 0.0;
    double residual2 = 0.0;
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(a, c); it; ++it) {
      if (mask[std::size_t(it.row())]) continue;  // Q projection
      const double w2 = std::norm(it.value());
      const double defect = gdiag(it.row()).real() - two_gap;
      norm2 += w2;
      residual2 += defect * defect * w2;
    }
    if (norm2 > 0.0)
      worst = std::max(worst, std::sqrt(residual2 / norm2));
  }
  return worst;
}

double compare_effective(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("sector dimensions differ");
  if (a.dim() == 0) return 0.0;
  Eigen::MatrixXcd diff = a.dense() - b.dense();
  const cplx offset = diff.trace() / double(a.dim());
  diff.diagonal().array() -= offset;
  return max_abs(diff);
}

void write_certification_row(std::ostream& os, const LatticeSpec& spec,
                             const PenaltyParams& pp, double residual) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%.12g,%.12g", spec.sites,
                spec.link_dim, pp.t_tilde, pp.w_tilde, pp.u, residual);
  os << buf << '\n';
}

}  // namespace znlgt
