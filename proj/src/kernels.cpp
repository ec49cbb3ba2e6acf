#include "otoclock/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include <omp.h>

namespace otoclock::kernels {

namespace {
std::atomic<int> g_max_threads{0};

int plan_threads() {
  if (omp_in_parallel()) return 1;
  int n = g_max_threads.load(std::memory_order_relaxed);
  if (n <= 0) n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_max_threads(int n) { g_max_threads.store(n, std::memory_order_relaxed); }

int max_threads() {
  int n = g_max_threads.load(std::memory_order_relaxed);
  return n <= 0 ? omp_get_max_threads() : n;
}

void adjoint_matvec_serial(const Mat& a, const Vec& x, Vec& y) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (x.size() != rows) throw std::invalid_argument("adjoint_matvec: size mismatch");
  y.resize(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    cxd acc = 0.0;
    const cxd* col = a.data() + j * rows;
    for (Eigen::Index i = 0; i < rows; ++i) acc += std::conj(col[i]) * x[i];
    y[j] = acc;
  }
}

void adjoint_matvec(const Mat& a, const Vec& x, Vec& y) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (x.size() != rows) throw std::invalid_argument("adjoint_matvec: size mismatch");
  y.resize(cols);
  const int nt = plan_threads();
  if (nt == 1) {
    adjoint_matvec_serial(a, x, y);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Eigen::Index j = 0; j < cols; ++j) {
    cxd acc = 0.0;
    const cxd* col = a.data() + j * rows;
    for (Eigen::Index i = 0; i < rows; ++i) acc += std::conj(col[i]) * x[i];
    y[j] = acc;
  }
}

void phase_apply_serial(const Eigen::VectorXd& lam, double t, double sign,
                        const Vec& x, Vec& y) {
  if (lam.size() != x.size()) throw std::invalid_argument("phase_apply: size mismatch");
  y.resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double ph = -sign * lam[i] * t;
    y[i] = cxd(std::cos(ph), std::sin(ph)) * x[i];
  }
}

void phase_apply(const Eigen::VectorXd& lam, double t, double sign,
                 const Vec& x, Vec& y) {
  if (lam.size() != x.size()) throw std::invalid_argument("phase_apply: size mismatch");
  y.resize(x.size());
  const int nt = plan_threads();
  if (nt == 1) {
    phase_apply_serial(lam, t, sign, x, y);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double ph = -sign * lam[i] * t;
    y[i] = cxd(std::cos(ph), std::sin(ph)) * x[i];
  }
}

void sparse_matvec_serial(const SpMatR& a, const Vec& x, Vec& y) {
  if (x.size() != a.cols()) throw std::invalid_argument("sparse_matvec: size mismatch");
  y.resize(a.rows());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    cxd acc = 0.0;
    for (SpMatR::InnerIterator it(a, r); it; ++it) acc += it.value() * x[it.col()];
    y[r] = acc;
  }
}

void sparse_matvec(const SpMatR& a, const Vec& x, Vec& y) {
  if (x.size() != a.cols()) throw std::invalid_argument("sparse_matvec: size mismatch");
  y.resize(a.rows());
  const int nt = plan_threads();
  if (nt == 1) {
    sparse_matvec_serial(a, x, y);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    cxd acc = 0.0;
    for (SpMatR::InnerIterator it(a, r); it; ++it) acc += it.value() * x[it.col()];
    y[r] = acc;
  }
}

cxd inner(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("inner: size mismatch");
  cxd acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm2(const Vec& x) { return inner(x, x).real(); }

}  // namespace otoclock::kernels
