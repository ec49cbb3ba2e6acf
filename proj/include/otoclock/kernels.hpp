#pragma once

// Low-level linear-algebra kernels used on the propagation hot paths.
// Every parallel kernel has a serial reference twin; the parallel versions
// are written so each output element is produced by exactly one thread with
// a fixed-order inner loop, which keeps results bitwise independent of the
// thread count. Reductions that would reassociate floating-point sums
// (inner products, norms) stay serial; they are O(D) next to O(D^2) matvecs.

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace otoclock::kernels {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using SpMatR = Eigen::SparseMatrix<cxd, Eigen::RowMajor>;

// Global thread budget for the kernels. 0 means "use the OpenMP default".
// Nested calls (from inside an already-parallel ensemble loop) always run
// serially to avoid oversubscription.
void set_max_threads(int n);
int max_threads();

// y = A^dag x for column-major A. Each y[j] is a contiguous dot product over
// column j, so the parallel split over j is deterministic.
void adjoint_matvec(const Mat& a, const Vec& x, Vec& y);
void adjoint_matvec_serial(const Mat& a, const Vec& x, Vec& y);

// y[i] = exp(-i * sign * lam[i] * t) * x[i]
void phase_apply(const Eigen::VectorXd& lam, double t, double sign,
                 const Vec& x, Vec& y);
void phase_apply_serial(const Eigen::VectorXd& lam, double t, double sign,
                        const Vec& x, Vec& y);

// y = A x for row-major sparse A; one row per output element.
void sparse_matvec(const SpMatR& a, const Vec& x, Vec& y);
void sparse_matvec_serial(const SpMatR& a, const Vec& x, Vec& y);

// Conjugate-linear in the left argument. Serial on purpose (determinism).
cxd inner(const Vec& x, const Vec& y);
double norm2(const Vec& x);

}  // namespace otoclock::kernels
