#include "otoclock/dynamics.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace otoclock {

EigenSystem spectral_decompose(const Operator& h, std::int64_t dense_cap) {
  if (h.dim() > dense_cap)
    throw std::invalid_argument("spectral_decompose: dimension exceeds dense cap");
  Mat dense = h.dense();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < dense.cols(); ++j)
    for (Eigen::Index i = 0; i < dense.rows(); ++i)
      scale = std::max(scale, std::abs(dense(i, j)));
  const double defect = (dense - dense.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-9 * std::max(scale, 1.0))
    throw std::invalid_argument("spectral_decompose: matrix is not Hermitian");
  // work on the exactly Hermitian average so eigenvalues are clean
  dense = 0.5 * (dense + Mat(dense.adjoint()));

  Eigen::SelfAdjointEigenSolver<Mat> solver(dense);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigensolver failed");

  EigenSystem es;
  es.space = h.space();
  es.evals = solver.eigenvalues();
  es.vecs = solver.eigenvectors();
  es.source_uid = h.uid();

  // canonical phase: largest-magnitude component of each column real positive
  for (Eigen::Index j = 0; j < es.vecs.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < es.vecs.rows(); ++i) {
      const double a = std::abs(es.vecs(i, j));
      if (a > best + 1e-15) {
        best = a;
        imax = i;
      }
    }
    const cxd z = es.vecs(imax, j);
    if (std::abs(z) > 0.0) es.vecs.col(j) *= std::conj(z) / std::abs(z);
  }
  es.vecs_adj = es.vecs.adjoint();
  return es;
}

void evolve_signed(const EigenSystem& es, const Vec& in, double t_signed, Vec& out) {
  Vec w, ph;
  // (vecs)^dag in
  kernels::adjoint_matvec(es.vecs, in, w);
  kernels::phase_apply(es.evals, t_signed, 1.0, w, ph);
  // vecs * ph computed as (vecs_adj)^dag ph, again contiguous dots
  kernels::adjoint_matvec(es.vecs_adj, ph, out);
}

StateVector propagate(const EigenSystem& es, const StateVector& state, double t,
                      Direction dir) {
  if (t < 0.0) throw std::invalid_argument("propagate: negative time (use Direction)");
  if (!es.space->same_layout(*state.space))
    throw std::invalid_argument("propagate: state does not match eigensystem space");
  StateVector out{state.space, Vec()};
  evolve_signed(es, state.amp, dir == Direction::Forward ? t : -t, out.amp);
  return out;
}

BranchedState conditional_propagate(const EigenSystem& es, const BranchedState& bs,
                                    double t) {
  if (t < 0.0) throw std::invalid_argument("conditional_propagate: negative time");
  BranchedState out = bs;
  evolve_signed(es, bs.fwd.amp, t, out.fwd.amp);
  evolve_signed(es, bs.bwd.amp, -t, out.bwd.amp);
  return out;
}

}  // namespace otoclock
