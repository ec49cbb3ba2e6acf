#include "otoclock/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "otoclock/kernels.hpp"
#include "otoclock/rng.hpp"

namespace otoclock {

namespace {

void check_shapes(const EigenSystem& es, const Operator& o1, const Operator& o2) {
  if (!es.space) throw std::invalid_argument("otoc: eigensystem has no space");
  if (!o1.space() || !o1.space()->same_layout(*es.space) || !o2.space() ||
      !o2.space()->same_layout(*es.space)) {
    throw std::invalid_argument("otoc: operators live on a different space");
  }
}

// e^{-iH t_signed} applied in place.
void evolve(const EigenSystem& es, double t_signed, Vec& v) {
  Vec tmp;
  evolve_signed(es, v, t_signed, tmp);
  v.swap(tmp);
}

void apply_op(const Operator& op, Vec& v) {
  Vec tmp;
  kernels::sparse_matvec(op.sparse(), v, tmp);
  v.swap(tmp);
}

// Shared core: backward segments run for t * (1 + eps).
cxd otoc_core(const EigenSystem& es, const StateVector& psi, const Operator& o1,
              const Operator& o2, double t, double eps) {
  check_shapes(es, o1, o2);
  if (!psi.space || !psi.space->same_layout(*es.space)) {
    throw std::invalid_argument("otoc: state lives on a different space");
  }
  if (t < 0.0) throw std::invalid_argument("otoc: negative time");
  const double t_back = -t * (1.0 + eps);  // signed time of e^{+iHt(1+eps)}

  Vec r = psi.amp;            // |R> = e^{+iHt'} O2 e^{-iHt} O1 |psi>
  apply_op(o1, r);
  evolve(es, t, r);
  apply_op(o2, r);
  evolve(es, t_back, r);

  Vec l = psi.amp;            // |L> = O1 e^{+iHt'} O2 e^{-iHt} |psi>
  evolve(es, t, l);
  apply_op(o2, l);
  evolve(es, t_back, l);
  apply_op(o1, l);

  return kernels::inner(l, r);
}

}  // namespace

cxd otoc_pure(const EigenSystem& es, const StateVector& psi, const Operator& o1,
              const Operator& o2, double t) {
  return otoc_core(es, psi, o1, o2, t, 0.0);
}

cxd otoc_pure(const Operator& h, const StateVector& psi, const Operator& o1,
              const Operator& o2, double t) {
  const EigenSystem es = spectral_decompose(h);
  return otoc_pure(es, psi, o1, o2, t);
}

cxd otoc_thermal(const EigenSystem& es, const Operator& o1, const Operator& o2,
                 double t, double beta) {
  check_shapes(es, o1, o2);
  if (beta < 0.0) throw std::invalid_argument("otoc_thermal: negative beta");
  const std::int64_t d = es.space->dim();
  const double e_min = es.evals.minCoeff();

  double z = 0.0;
  cxd sum = 0.0;
  for (std::int64_t n = 0; n < d; ++n) {
    const double w = std::exp(-beta * (es.evals[n] - e_min));
    StateVector psi_n{es.space, es.vecs.col(n)};
    sum += w * otoc_pure(es, psi_n, o1, o2, t);
    z += w;
  }
  return sum / z;
}

cxd otoc_switch_error(const EigenSystem& es, const StateVector& psi,
                      const Operator& o1, const Operator& o2, double t,
                      double eps) {
  return otoc_core(es, psi, o1, o2, t, eps);
}

SwitchErrorStats relative_switch_error(const EigenSystem& es,
                                       const StateVector& psi,
                                       const Operator& o1, const Operator& o2,
                                       double t, double delta, int n_samples,
                                       std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("relative_switch_error: n_samples < 1");
  if (delta < 0.0) throw std::invalid_argument("relative_switch_error: negative delta");

  std::vector<cxd> samples(static_cast<std::size_t>(n_samples));
#pragma omp parallel for schedule(static) if (kernels::max_threads() > 1)
  for (int k = 0; k < n_samples; ++k) {
    const double eps = delta * rng::gaussian(seed, static_cast<std::uint64_t>(k));
    samples[static_cast<std::size_t>(k)] = otoc_core(es, psi, o1, o2, t, eps);
  }

  cxd sum = 0.0;
  for (const cxd& s : samples) sum += s;  // index order, thread-count independent

  SwitchErrorStats stats;
  stats.mean = sum / static_cast<double>(n_samples);
  stats.pure = otoc_core(es, psi, o1, o2, t, 0.0);
  stats.n_samples = n_samples;

  const auto ratio = [](double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(num / den);
  };
  stats.rel_abs = std::abs(stats.pure) == 0.0
                      ? (std::abs(stats.mean) == 0.0
                             ? 0.0
                             : std::numeric_limits<double>::infinity())
                      : std::abs(stats.mean / stats.pure - 1.0);
  stats.rel_re = ratio(stats.mean.real() - stats.pure.real(), stats.pure.real());
  stats.rel_im = ratio(stats.mean.imag() - stats.pure.imag(), stats.pure.imag());
  return stats;
}

LoschmidtResult loschmidt_echo(const Operator& h, const Operator& dh,
                               const StateVector& psi, double t) {
  if (!h.space() || !dh.space() || !h.space()->same_layout(*dh.space())) {
    throw std::invalid_argument("loschmidt_echo: h and dh live on different spaces");
  }
  if (!psi.space || !psi.space->same_layout(*h.space())) {
    throw std::invalid_argument("loschmidt_echo: state lives on a different space");
  }
  if (t < 0.0) throw std::invalid_argument("loschmidt_echo: negative time");

  const EigenSystem es_ref = spectral_decompose(h);
  const EigenSystem es_pert = spectral_decompose(h.plus(dh));

  Vec ref, pert;
  evolve_signed(es_ref, psi.amp, t, ref);
  evolve_signed(es_pert, psi.amp, t, pert);

  LoschmidtResult out;
  out.amplitude = kernels::inner(ref, pert);
  out.echo = std::norm(out.amplitude);
  return out;
}

}  // namespace otoclock
