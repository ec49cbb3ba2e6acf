#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "otoclock/hilbert.hpp"

namespace {

using namespace otoclock;

SpacePtr qbc_space() {
  return make_space({qubit_site(), boson_site(2), clock_site()});
}

}  // namespace

TEST_CASE("basis indexing: site 0 varies slowest, occupations round-trip") {
  auto sp = qbc_space();
  CHECK(sp->dim() == 2 * 3 * 2);
  CHECK(sp->n_sites() == 3);
  CHECK(sp->clock_site_index() == 2);

  // strides: qubit 6, boson 2, clock 1
  CHECK(sp->index_of({0, 0, 0}) == 0);
  CHECK(sp->index_of({0, 0, 1}) == 1);
  CHECK(sp->index_of({0, 1, 0}) == 2);
  CHECK(sp->index_of({1, 0, 0}) == 6);
  CHECK(sp->index_of({1, 2, 1}) == 11);

  for (std::int64_t i = 0; i < sp->dim(); ++i)
    CHECK(sp->index_of(sp->occupation_of(i)) == i);

  CHECK_THROWS_AS((void)sp->index_of({0, 3, 0}), std::invalid_argument);
}

TEST_CASE("basis_state puts unit amplitude on the right index") {
  auto sp = qbc_space();
  const StateVector s = basis_state(sp, {1, 2, 0});
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK(std::abs(s.amp[sp->index_of({1, 2, 0})] - cxd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("single-site operators have the frozen matrix elements") {
  auto q = make_space({qubit_site()});
  // |0> is spin-up: sigma_z = diag(+1, -1), sigma_plus raises |1> -> |0>
  const Mat sz = local_operator(q, 0, LocalKind::SigmaZ).dense();
  CHECK(sz(0, 0).real() == doctest::Approx(1.0));
  CHECK(sz(1, 1).real() == doctest::Approx(-1.0));
  const Mat sp = local_operator(q, 0, LocalKind::SigmaPlus).dense();
  CHECK(std::abs(sp(0, 1) - cxd(1.0, 0.0)) < 1e-15);
  CHECK(sp.cwiseAbs().sum() == doctest::Approx(1.0));
  const Mat sy = local_operator(q, 0, LocalKind::SigmaY).dense();
  CHECK(std::abs(sy(0, 1) - cxd(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(sy(1, 0) - cxd(0.0, 1.0)) < 1e-15);

  auto b = make_space({boson_site(2)});
  const Mat a = local_operator(b, 0, LocalKind::A).dense();
  CHECK(std::abs(a(0, 1) - cxd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(a(1, 2) - cxd(std::sqrt(2.0), 0.0)) < 1e-15);
  const Mat n = local_operator(b, 0, LocalKind::N).dense();
  CHECK(n(2, 2).real() == doctest::Approx(2.0));

  auto c = make_space({clock_site()});
  // tau_z = 1 - 2 n_a: +1 on the empty clock, -1 on the occupied one
  const Mat tz = local_operator(c, 0, LocalKind::TauZ).dense();
  CHECK(tz(0, 0).real() == doctest::Approx(1.0));
  CHECK(tz(1, 1).real() == doctest::Approx(-1.0));

  // boson kinds are rejected on qubits and vice versa
  CHECK_THROWS(local_operator(q, 0, LocalKind::A));
  CHECK_THROWS(local_operator(b, 0, LocalKind::SigmaX));
}

TEST_CASE("compose applies product factors right-to-left") {
  auto q = make_space({qubit_site()});
  // sigma_plus * sigma_z: acting on |1> gives -|0>
  const Operator op = compose(q, {{1.0, {{0, LocalKind::SigmaPlus}, {0, LocalKind::SigmaZ}}}});
  const Mat m = op.dense();
  CHECK(std::abs(m(0, 1) - cxd(-1.0, 0.0)) < 1e-15);
  CHECK(m.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("compose rejects a false hermitian claim") {
  auto q = make_space({qubit_site()});
  CHECK_THROWS(compose(q, {{1.0, {{0, LocalKind::SigmaPlus}}}}, true));
  CHECK_NOTHROW(compose(q, {{1.0, {{0, LocalKind::SigmaX}}}}, true));
}

TEST_CASE("clock sector blocks restrict and validate") {
  auto sp = qbc_space();
  // chi * n_clock * sigma_z vanishes in sector 0, is chi*sigma_z in sector 1
  const Operator op = compose(
      sp, {{0.7, {{2, LocalKind::N}, {0, LocalKind::SigmaZ}}}}, true);
  const Operator b0 = clock_sector_block(op, 0);
  const Operator b1 = clock_sector_block(op, 1);
  CHECK(b0.dense().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(b1.dim() == 6);
  CHECK(b1.dense()(0, 0).real() == doctest::Approx(0.7));

  // tau_x mixes the sectors and must be rejected
  const Operator mix = local_operator(sp, 2, LocalKind::TauX);
  CHECK_THROWS(clock_sector_block(mix, 0));

  auto noclock = make_space({qubit_site(), boson_site(2)});
  CHECK_THROWS(clock_sector_block(identity_op(noclock), 0));
}

TEST_CASE("space_without_clock drops exactly the clock site") {
  auto sp = qbc_space();
  auto r = space_without_clock(sp);
  CHECK(r->n_sites() == 2);
  CHECK(r->dim() == 6);
  CHECK(r->site(0).kind == SiteKind::Qubit);
  CHECK(r->site(1).kind == SiteKind::Boson);
}

TEST_CASE("projector_total_sz selects the right basis states") {
  auto sp = make_space({qubit_site(), qubit_site()});
  const Operator p0 = projector_total_sz(sp, {0, 1}, 0);
  const Mat m = p0.dense();
  CHECK(m(sp->index_of({0, 1}), sp->index_of({0, 1})).real() == doctest::Approx(1.0));
  CHECK(m(sp->index_of({1, 0}), sp->index_of({1, 0})).real() == doctest::Approx(1.0));
  CHECK(m(sp->index_of({0, 0}), sp->index_of({0, 0})).real() == doctest::Approx(0.0));
  CHECK(m.diagonal().sum().real() == doctest::Approx(2.0));
}

TEST_CASE("identically shaped spaces interoperate") {
  auto s1 = make_space({qubit_site(), qubit_site()});
  auto s2 = make_space({qubit_site(), qubit_site()});
  CHECK(s1->same_layout(*s2));
  const Operator op = local_operator(s1, 0, LocalKind::SigmaX);
  const StateVector st = basis_state(s2, {0, 0});
  CHECK_NOTHROW((void)apply(op, st));

  auto s3 = make_space({qubit_site(), boson_site(1)});
  const StateVector other = basis_state(s3, {0, 0});
  CHECK_THROWS((void)apply(op, other));
}

TEST_CASE("operator algebra: adjoint, scaling, sums, hermiticity defect") {
  auto q = make_space({qubit_site()});
  const Operator sp = compose(q, {{1.0, {{0, LocalKind::SigmaPlus}}}});
  const Operator sm = compose(q, {{1.0, {{0, LocalKind::SigmaMinus}}}});
  CHECK((sp.adjoint().dense() - sm.dense()).cwiseAbs().maxCoeff() < 1e-15);

  const Operator sx = sp.plus(sm);
  CHECK(hermiticity_defect(sx) < 1e-15);
  CHECK(hermiticity_defect(sp) == doctest::Approx(1.0));

  // scaled keeps the hermitian hint only for real factors
  const Operator h = compose(q, {{1.0, {{0, LocalKind::SigmaX}}}}, true);
  CHECK(h.scaled(2.0).hermitian());
  CHECK_FALSE(h.scaled(cxd(0.0, 1.0)).hermitian());
}
