#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "otoclock/models.hpp"
#include "otoclock/oracle.hpp"
#include "otoclock/protocol.hpp"
#include "otoclock/rng.hpp"
#include "otoclock/runner.hpp"

namespace {

using namespace otoclock;

struct Fixture {
  Operator h;
  EigenSystem es;
  ProtocolSpec spec;

  Fixture() {
    h = build_disordered_heisenberg(3, {0.3, -0.2, 0.5});
    es = spectral_decompose(h);
    spec.hamiltonian = h;
    Vec v(h.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const auto k = static_cast<std::uint64_t>(i);
      v[i] = cxd(rng::gaussian(5001, k, 0), rng::gaussian(5001, k, 1));
    }
    v.normalize();
    spec.psi0 = StateVector{h.space(), v};
    spec.o1 = operator_from_spec(h.space(), "sigma_z@0");
    spec.o2 = operator_from_spec(h.space(), "sigma_z@2");
    spec.t = 0.8;
  }
};

// The correlator straight from its definition, using Pade exponentials and
// dense products only: <psi| O2(t)^dag O1^dag O2(t) O1 |psi>.
cxd otoc_by_definition(const Operator& h, const StateVector& psi,
                       const Operator& o1, const Operator& o2, double t) {
  const Mat u = Mat(cxd(0.0, -1.0) * t * h.dense()).exp();
  const Mat o1d = o1.dense();
  const Mat o2t = u.adjoint() * o2.dense() * u;
  const Vec v = o2t.adjoint() * (o1d.adjoint() * (o2t * (o1d * psi.amp)));
  return psi.amp.dot(v);
}

}  // namespace

TEST_CASE("ideal protocol reproduces the correlator three independent ways") {
  Fixture f;
  const ProtocolResult r = run_oto_protocol(f.spec, f.es);

  // spectral oracle
  const cxd oracle = otoc_pure(f.es, f.spec.psi0, f.spec.o1, f.spec.o2, f.spec.t);
  CHECK(std::abs(r.branch_overlap - oracle) < 1e-12);

  // direct dense definition with Pade exponentials
  const cxd direct = otoc_by_definition(f.h, f.spec.psi0, f.spec.o1, f.spec.o2, f.spec.t);
  CHECK(std::abs(r.branch_overlap - direct) < 1e-10);

  // measurement channels are the real and imaginary parts
  CHECK(r.tau_x == doctest::Approx(r.branch_overlap.real()).epsilon(1e-12));
  CHECK(r.tau_y == doctest::Approx(r.branch_overlap.imag()).epsilon(1e-12));
  CHECK(std::abs(r.otoc - r.branch_overlap) < 1e-15);

  CHECK(r.norm_checked);
  CHECK(r.norm_ok);
  // each branch carries the 1/sqrt(2) preparation weight
  CHECK(r.norm_fwd == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(r.norm_bwd == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(r.norm_fwd * r.norm_fwd + r.norm_bwd * r.norm_bwd ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("protocol at t=0 gives the static four-point function") {
  Fixture f;
  f.spec.t = 0.0;
  const ProtocolResult r = run_oto_protocol(f.spec, f.es);
  // sigma_z probes on different sites commute at equal times
  CHECK(std::abs(r.branch_overlap - cxd(1.0, 0.0)) < 1e-12);

  // same site: sigma_x then sigma_z anticommute, F(0) = -1
  f.spec.o1 = operator_from_spec(f.h.space(), "sigma_x@0");
  f.spec.o2 = operator_from_spec(f.h.space(), "sigma_z@0");
  const ProtocolResult r2 = run_oto_protocol(f.spec, f.es);
  CHECK(std::abs(r2.branch_overlap - cxd(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("preparation-pulse error only rescales the signal by cos(dtheta)") {
  Fixture f;
  const cxd ideal = otoc_pure(f.es, f.spec.psi0, f.spec.o1, f.spec.o2, f.spec.t);
  for (double dth : {-0.25, 0.1, 0.4}) {
    f.spec.errors = PulseErrors{};
    f.spec.errors.hadamard = dth;
    const ProtocolResult r = run_oto_protocol(f.spec, f.es);
    CHECK(std::abs(r.branch_overlap - std::cos(dth) * ideal) < 1e-12);
  }
}

TEST_CASE("flip errors stay within the analytic bound") {
  Fixture f;
  const cxd ideal = otoc_pure(f.es, f.spec.psi0, f.spec.o1, f.spec.o2, f.spec.t);
  for (double d1 : {-0.3, 0.0, 0.15, 0.3})
    for (double d2 : {-0.2, 0.0, 0.25})
      for (double dh : {0.0, 0.2}) {
        f.spec.errors.hadamard = dh;
        f.spec.errors.flip1 = d1;
        f.spec.errors.flip2 = d2;
        const ProtocolResult r = run_oto_protocol(f.spec, f.es);
        const double c1 = std::cos(0.5 * d1), c2 = std::cos(0.5 * d2);
        const cxd kept = std::cos(dh) * c1 * c1 * c2 * c2 * ideal;
        CHECK(std::abs(r.branch_overlap - kept) <= noise_bound(d1, d2) + 1e-12);
      }
}

TEST_CASE("noise bound and SNR limiting behavior") {
  CHECK(noise_bound(0.0, 0.0) == doctest::Approx(0.0));
  // grows from zero and is symmetric under swapping the flips
  CHECK(noise_bound(0.1, 0.0) > 0.0);
  CHECK(noise_bound(0.1, 0.2) == doctest::Approx(noise_bound(0.2, 0.1)));

  CHECK(std::isinf(snr(0.0, 0.0, 0.7)));
  CHECK(snr(0.1, 0.1, 0.7) > snr(0.2, 0.2, 0.7));
  CHECK_THROWS_AS((void)snr(0.1, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("norm check is skipped for declared non-unitary probes") {
  Fixture f;
  // projector probes are not unitary; the engine should not flag them
  f.spec.o1 = operator_from_spec(f.h.space(), "proj0@0");
  f.spec.operators_unitary = false;
  const ProtocolResult r = run_oto_protocol(f.spec, f.es);
  CHECK_FALSE(r.norm_checked);

  // with the claim left on, the broken norm must be flagged
  f.spec.operators_unitary = true;
  const ProtocolResult r2 = run_oto_protocol(f.spec, f.es);
  CHECK(r2.norm_checked);
  CHECK_FALSE(r2.norm_ok);
}

TEST_CASE("protocol engine validates its inputs") {
  Fixture f;
  f.spec.t = -1.0;
  CHECK_THROWS_AS((void)run_oto_protocol(f.spec, f.es), std::invalid_argument);
  f.spec.t = 0.5;

  // eigensystem of some other operator is rejected
  const Operator other = build_disordered_heisenberg(3, {0.0, 0.0, 0.0});
  const EigenSystem wrong = spectral_decompose(other);
  CHECK_THROWS_AS((void)run_oto_protocol(f.spec, wrong), std::invalid_argument);

  // unnormalized initial state is rejected
  f.spec.psi0.amp *= 2.0;
  CHECK_THROWS_AS((void)run_oto_protocol(f.spec, f.es), std::invalid_argument);
}

TEST_CASE("branch bookkeeping: flips swap content, labels stay put") {
  Fixture f;
  BranchedState bs = init_branched(f.spec.psi0);
  CHECK(bs.forward_clock == 0);
  bs = hadamard_clock(bs, 0.0);
  CHECK(bs.forward_clock == 1);
  bs = conditional_apply(bs, f.spec.o1, Branch::Fwd);  // make the branches differ
  const Vec fwd_before = bs.fwd.amp, bwd_before = bs.bwd.amp;
  bs = flip_clock(bs, 0.0);
  CHECK(bs.forward_clock == 1);
  CHECK((bs.fwd.amp - bwd_before).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((bs.bwd.amp - fwd_before).cwiseAbs().maxCoeff() < 1e-15);
}
