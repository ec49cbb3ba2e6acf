// Times the OpenMP kernels against their serial reference twins on
// physically-sized problems and confirms the outputs are bitwise identical.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "otoclock/kernels.hpp"
#include "otoclock/models.hpp"
#include "otoclock/rng.hpp"

namespace {

using otoclock::kernels::Mat;
using otoclock::kernels::SpMatR;
using otoclock::kernels::Vec;

Vec random_vec(Eigen::Index d, std::uint64_t seed) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    v[i] = {otoclock::rng::gaussian(seed, k, 0), otoclock::rng::gaussian(seed, k, 1)};
  }
  return v;
}

struct Row {
  std::string name;
  Eigen::Index dim;
  int reps;
  double serial_s = 0.0;
  double parallel_s = 0.0;
  bool bitwise_equal = false;
};

double time_loop(int reps, const std::function<void()>& f) {
  f();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
         reps;
}

bool same_bits(const Vec& a, const Vec& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(otoclock::kernels::cxd) *
                                             static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  if (argc > 1) threads = std::atoi(argv[1]);
  otoclock::kernels::set_max_threads(threads);

  std::vector<Row> rows;

  {
    // dense adjoint matvec at eigenbasis-transform size
    const Eigen::Index d = 2048;
    Mat a(d, d);
    for (Eigen::Index j = 0; j < d; ++j) a.col(j) = random_vec(d, 100 + static_cast<std::uint64_t>(j));
    const Vec x = random_vec(d, 7);
    Vec ys(d), yp(d);
    Row r{"adjoint_matvec", d, 20};
    r.serial_s = time_loop(r.reps, [&] { otoclock::kernels::adjoint_matvec_serial(a, x, ys); });
    r.parallel_s = time_loop(r.reps, [&] { otoclock::kernels::adjoint_matvec(a, x, yp); });
    r.bitwise_equal = same_bits(ys, yp);
    rows.push_back(r);
  }

  {
    // diagonal phase twirl at large state size
    const Eigen::Index d = 1 << 21;
    Eigen::VectorXd lam(d);
    for (Eigen::Index i = 0; i < d; ++i)
      lam[i] = otoclock::rng::uniform(11, static_cast<std::uint64_t>(i), -1.0, 1.0, 0);
    const Vec x = random_vec(d, 8);
    Vec ys(d), yp(d);
    Row r{"phase_apply", d, 10};
    r.serial_s = time_loop(r.reps, [&] { otoclock::kernels::phase_apply_serial(lam, 0.37, 1.0, x, ys); });
    r.parallel_s = time_loop(r.reps, [&] { otoclock::kernels::phase_apply(lam, 0.37, 1.0, x, yp); });
    r.bitwise_equal = same_bits(ys, yp);
    rows.push_back(r);
  }

  {
    // sparse matvec on a six-cavity ring Hamiltonian
    otoclock::ModelParams p;
    p.omega_a = 5850.0;
    p.omega_b = 5000.0;
    p.epsilon = 5050.0;
    p.n = 6;
    p.n_max = 2;
    p.periodic = true;
    p.g_site.assign(6, 5.0);
    p = otoclock::solve_sign_condition(p, otoclock::ConditionModel::Local);
    const otoclock::Operator h = otoclock::build_local_microscopic(p);
    const SpMatR& a = h.sparse();
    const Vec x = random_vec(a.rows(), 9);
    Vec ys(a.rows()), yp(a.rows());
    Row r{"sparse_matvec", a.rows(), 50};
    r.serial_s = time_loop(r.reps, [&] { otoclock::kernels::sparse_matvec_serial(a, x, ys); });
    r.parallel_s = time_loop(r.reps, [&] { otoclock::kernels::sparse_matvec(a, x, yp); });
    r.bitwise_equal = same_bits(ys, yp);
    rows.push_back(r);
  }

  std::printf("threads=%d\n", otoclock::kernels::max_threads());
  std::printf("%-16s %10s %6s %12s %12s %9s %8s\n", "kernel", "dim", "reps",
              "serial[ms]", "parallel[ms]", "speedup", "bitwise");
  bool all_equal = true;
  for (const auto& r : rows) {
    std::printf("%-16s %10lld %6d %12.3f %12.3f %9.2f %8s\n", r.name.c_str(),
                static_cast<long long>(r.dim), r.reps, 1e3 * r.serial_s,
                1e3 * r.parallel_s, r.serial_s / r.parallel_s,
                r.bitwise_equal ? "yes" : "NO");
    all_equal = all_equal && r.bitwise_equal;
  }
  return all_equal ? 0 : 1;
}
