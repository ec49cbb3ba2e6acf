#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"
#include "otoclock/rng.hpp"

namespace {

using namespace otoclock;

Operator random_hermitian(const SpacePtr& sp, std::uint64_t seed) {
  const auto d = sp->dim();
  Mat m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto k = static_cast<std::uint64_t>(j * d + i);
      m(i, j) = cxd(rng::gaussian(seed, k, 0), rng::gaussian(seed, k, 1));
    }
  const Mat h = 0.5 * (m + m.adjoint());
  std::vector<Eigen::Triplet<cxd>> trips;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) trips.emplace_back(i, j, h(i, j));
  SpMatR s(d, d);
  s.setFromTriplets(trips.begin(), trips.end());
  return Operator(sp, std::move(s), true);
}

StateVector random_state(const SpacePtr& sp, std::uint64_t seed) {
  Vec v(sp->dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    v[i] = cxd(rng::gaussian(seed, k, 2), rng::gaussian(seed, k, 3));
  }
  v.normalize();
  return StateVector{sp, v};
}

}  // namespace

TEST_CASE("spectral_decompose reconstructs the operator") {
  auto sp = make_space({boson_site(2), qubit_site(), qubit_site()});
  const Operator h = random_hermitian(sp, 101);
  const EigenSystem es = spectral_decompose(h);

  CHECK(es.source_uid == h.uid());
  CHECK(es.space->same_layout(*sp));
  // ascending eigenvalues
  for (Eigen::Index i = 1; i < es.evals.size(); ++i)
    CHECK(es.evals[i] >= es.evals[i - 1]);
  // unitarity and reconstruction
  const Mat id = es.vecs_adj * es.vecs;
  CHECK((id - Mat::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff() < 1e-12);
  const Mat rebuilt = es.vecs * es.evals.asDiagonal() * es.vecs_adj;
  CHECK((rebuilt - h.dense()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("spectral_decompose enforces Hermiticity and the dense cap") {
  auto sp = make_space({qubit_site()});
  const Operator raw = compose(sp, {{1.0, {{0, LocalKind::SigmaPlus}}}});
  CHECK_THROWS_AS((void)spectral_decompose(raw), std::invalid_argument);

  auto big = make_space({qubit_site(), qubit_site(), qubit_site()});
  CHECK_THROWS_AS((void)spectral_decompose(identity_op(big), 4), std::invalid_argument);
}

TEST_CASE("propagate matches an independent matrix exponential") {
  auto sp = make_space({boson_site(2), qubit_site(), qubit_site()});
  const Operator h = random_hermitian(sp, 55);
  const EigenSystem es = spectral_decompose(h);
  const StateVector psi = random_state(sp, 56);
  const double t = 0.9;

  const Mat u_fwd = Mat(cxd(0.0, -1.0) * t * h.dense()).exp();
  const Vec ref_fwd = u_fwd * psi.amp;
  const Vec ref_bwd = u_fwd.adjoint() * psi.amp;

  const StateVector fwd = propagate(es, psi, t, Direction::Forward);
  const StateVector bwd = propagate(es, psi, t, Direction::Backward);
  CHECK((fwd.amp - ref_fwd).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((bwd.amp - ref_bwd).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(fwd.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // signed evolution: negative time is the backward direction
  Vec signed_out;
  evolve_signed(es, psi.amp, -t, signed_out);
  CHECK((signed_out - ref_bwd).cwiseAbs().maxCoeff() < 1e-11);

  CHECK_THROWS_AS((void)propagate(es, psi, -0.1, Direction::Forward),
                  std::invalid_argument);
}

TEST_CASE("forward then backward returns the initial state") {
  auto sp = make_space({qubit_site(), qubit_site(), qubit_site()});
  const Operator h = random_hermitian(sp, 77);
  const EigenSystem es = spectral_decompose(h);
  const StateVector psi = random_state(sp, 78);

  const StateVector there = propagate(es, psi, 1.7, Direction::Forward);
  const StateVector back = propagate(es, there, 1.7, Direction::Backward);
  CHECK((back.amp - psi.amp).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("conditional_propagate evolves the two branches oppositely") {
  auto sp = make_space({qubit_site(), qubit_site()});
  const Operator h = random_hermitian(sp, 91);
  const EigenSystem es = spectral_decompose(h);
  const StateVector psi = random_state(sp, 92);

  BranchedState bs;
  bs.fwd = psi;
  bs.bwd = StateVector{sp, 0.5 * psi.amp};
  const BranchedState out = conditional_propagate(es, bs, 0.6);

  const StateVector f = propagate(es, psi, 0.6, Direction::Forward);
  const StateVector b = propagate(es, psi, 0.6, Direction::Backward);
  CHECK((out.fwd.amp - f.amp).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((out.bwd.amp - 0.5 * b.amp).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-qubit phase evolution has the pinned value") {
  auto sp = make_space({qubit_site()});
  const double eps = 5050.0;
  const Operator h = compose(sp, {{0.5 * eps, {{0, LocalKind::SigmaZ}}}}, true);
  const EigenSystem es = spectral_decompose(h);
  const double t = 2.5e-4;

  const StateVector up = basis_state(sp, {0});
  const StateVector out = propagate(es, up, t, Direction::Forward);
  const cxd expect = std::exp(cxd(0.0, -0.5 * eps * t));
  CHECK(std::abs(out.amp[0] - expect) < 1e-12);
}
