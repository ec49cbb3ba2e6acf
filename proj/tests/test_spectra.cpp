#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"
#include "otoclock/models.hpp"
#include "otoclock/spectra.hpp"

namespace {

using namespace otoclock;

ModelParams local_base(int n_cav, bool periodic, double g, int n_max) {
  ModelParams p;
  p.omega_a = 5850.0;
  p.omega_b = 5000.0;
  p.epsilon = 5050.0;
  p.n = n_cav;
  p.n_max = n_max;
  p.periodic = periodic;
  p.g_site.assign(static_cast<std::size_t>(periodic ? n_cav : n_cav - 1), g);
  return solve_sign_condition(p, ConditionModel::Local);
}

std::vector<double> manifold_energies(const SectorSpectrum& s, int b, int q) {
  std::vector<double> out;
  for (const auto& lv : s.levels)
    if (lv.boson_label == b && lv.excited_label == q) out.push_back(lv.energy);
  std::sort(out.begin(), out.end());
  return out;
}

// indices of the clockless-local-space basis states with every qubit down
std::vector<std::int64_t> all_down(const SpacePtr& sp) {
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < sp->dim(); ++i) {
    const auto occ = sp->occupation_of(i);
    bool down = true;
    for (int s = 0; s < sp->n_sites(); ++s)
      if (sp->site(s).kind == SiteKind::Qubit && occ[static_cast<std::size_t>(s)] != 1)
        down = false;
    if (down) idx.push_back(i);
  }
  return idx;
}

Mat block(const Mat& m, const std::vector<std::int64_t>& idx) {
  Mat out(idx.size(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < idx.size(); ++r)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(idx[r], idx[c]);
  return out;
}

}  // namespace

TEST_CASE("two-cavity splitting matches the closed-form polariton gap") {
  const ModelParams p = local_base(2, false, 5.0, 2);
  const Operator h = build_local_microscopic(p);

  // one bond of strength g against detuning D: gap (sqrt(D^2 + 8 g^2) - D)/2
  const double d = detuning_local(p, 0);
  const double exact_gap = 0.5 * (std::sqrt(d * d + 8.0 * p.g_site[0] * p.g_site[0]) - d);

  const SectorSpectrum s0 = sector_spectrum(h, 0);
  const SectorSpectrum s1 = sector_spectrum(h, 1);
  CHECK(manifold_splitting(s0, 1, 0) == doctest::Approx(exact_gap).epsilon(1e-9));
  // both clock sectors split identically (up to eigensolver noise on the
  // large absolute energies)
  CHECK(manifold_splitting(s1, 1, 0) ==
        doctest::Approx(manifold_splitting(s0, 1, 0)).epsilon(1e-9));

  // effective model: exactly 2 g^2 / D
  const SectorSpectrum m0 = sector_spectrum(build_local_effective(p, 2, Frame::Lab), 0);
  CHECK(manifold_splitting(m0, 1, 0) ==
        doctest::Approx(2.0 * p.g_site[0] * p.g_site[0] / d).epsilon(1e-10));

  CHECK_THROWS_AS((void)manifold_splitting(s0, 9, 9), std::invalid_argument);
}

TEST_CASE("centroid-aligned comparison pairs manifolds and screens tiny levels") {
  const ModelParams p = local_base(2, false, 5.0, 2);
  const SectorSpectrum exact = sector_spectrum(build_local_microscopic(p), 0);
  const SectorSpectrum model =
      sector_spectrum(build_local_effective(p, 2, Frame::Lab), 0);

  const SpectraComparison cmp = compare_spectra(exact, model, OffsetPolicy::ManifoldCentroid);
  CHECK(cmp.n_compared > 0);
  CHECK(cmp.max_rel_err < 1e-3);
  // raw comparison keeps the absolute offset and must be worse
  const SpectraComparison raw = compare_spectra(exact, model, OffsetPolicy::None);
  CHECK(raw.max_abs_err >= cmp.max_abs_err);

  CHECK_THROWS_AS((void)compare_spectra(exact, model, {{9, 9}}, OffsetPolicy::None),
                  std::runtime_error);
}

TEST_CASE("sector labels track boson and excitation counts") {
  const ModelParams p = local_base(2, false, 5.0, 2);
  const SectorSpectrum s = sector_spectrum(build_local_microscopic(p), 0);
  const auto labels = manifold_labels(s);
  CHECK(std::find(labels.begin(), labels.end(), std::make_pair(0, 0)) != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), std::make_pair(1, 0)) != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), std::make_pair(0, 1)) != labels.end());
  CHECK(manifold_energies(s, 1, 0).size() == 2);
  CHECK(manifold_energies(s, 0, 1).size() == 1);
  for (const auto& lv : s.levels) CHECK(lv.sharp);
}

TEST_CASE("ring one-photon manifold has the closed-form momentum structure") {
  const ModelParams p = local_base(3, true, 5.0, 1);
  const Operator h = build_local_microscopic(p);

  // polariton band at momentum q on top of the three-qubits-down zero point:
  // E(q) = -3 eps/2 + (omega_b + eps)/2 - sqrt(D^2/4 + 2 g^2 (1 + cos q))
  const double zero_point = -1.5 * p.epsilon;
  const double mean0 = 0.5 * (p.omega_b + p.epsilon);
  const double d = detuning_local(p, 0);
  const auto lower = [&](double cosq) {
    return zero_point + mean0 - std::sqrt(0.25 * d * d + 2.0 * 25.0 * (1.0 + cosq));
  };
  const auto e = manifold_energies(sector_spectrum(h, 0), 1, 0);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == doctest::Approx(lower(1.0)).epsilon(1e-10));       // q = 0
  CHECK(e[1] == doctest::Approx(lower(-0.5)).epsilon(1e-10));      // q = +-2pi/3
  CHECK(e[2] == doctest::Approx(lower(-0.5)).epsilon(1e-10));

  const RingSignature s0 = ring_signature(p, 0);
  const RingSignature s1 = ring_signature(p, 1);
  const double gap = std::sqrt(0.25 * d * d + 100.0) - std::sqrt(0.25 * d * d + 25.0);
  CHECK(s0.splitting == doctest::Approx(gap).epsilon(1e-9));
  CHECK(s1.splitting == doctest::Approx(gap).epsilon(1e-9));

  // positive hopping sign: unique q=0 ground state; negative: chiral pair
  CHECK(s0.ground_degeneracy == 1);
  CHECK_FALSE(s0.ground_is_chiral_pair);
  CHECK(s1.ground_degeneracy == 2);
  CHECK(s1.ground_is_chiral_pair);
  CHECK_FALSE(s0.ambiguous);
  CHECK_FALSE(s1.ambiguous);

  // dressing the Bloch states recovers almost all ground-cluster weight
  CHECK(s0.overlap_dressed > 1.0 - 1e-3);
  CHECK(s1.overlap_dressed > 1.0 - 1e-3);
  CHECK(s0.overlap_dressed > s0.overlap_bare);

  CHECK_THROWS_AS((void)ring_signature(local_base(3, false, 5.0, 1), 0),
                  std::invalid_argument);
}

TEST_CASE("first-order generator solves [H0, S] = V") {
  const ModelParams p = local_base(2, false, 5.0, 2);
  const Operator s = sw_generator_first_order(p, 0);
  const auto sp = s.space();  // microscopic space without the clock

  // rebuild H0 and V on that space from scratch
  std::vector<ProductTerm> h0_terms;
  for (int j = 0; j < 2; ++j) h0_terms.push_back({p.omega_b, {{j, LocalKind::N}}});
  h0_terms.push_back({0.5 * p.epsilon, {{2, LocalKind::SigmaZ}}});
  const Operator h0 = compose(sp, h0_terms, true);
  const Operator h_sector = clock_sector_block(build_local_microscopic(p), 0);
  const Mat v = h_sector.dense() - h0.dense();

  const Mat sd = s.dense();
  const Mat comm = h0.dense() * sd - sd * h0.dense();
  CHECK((comm - v).cwiseAbs().maxCoeff() < 1e-9);

  // S is anti-Hermitian
  CHECK((sd + sd.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  ModelParams bad = p;
  bad.epsilon = bad.omega_b;  // vanishing detuning
  bad.chi = 0.0;
  CHECK_THROWS_AS((void)sw_generator_first_order(bad, 0), std::domain_error);
}

TEST_CASE("analytic second order equals H0 + [S,V]/2 on the all-down block") {
  const ModelParams p = local_base(3, false, 4.0, 2);
  const Operator s = sw_generator_first_order(p, 0);
  const auto sp = s.space();

  std::vector<ProductTerm> h0_terms;
  for (int j = 0; j < 3; ++j) h0_terms.push_back({p.omega_b, {{j, LocalKind::N}}});
  for (int k = 0; k < 2; ++k)
    h0_terms.push_back({0.5 * p.epsilon, {{3 + k, LocalKind::SigmaZ}}});
  const Operator h0 = compose(sp, h0_terms, true);
  const Mat v = clock_sector_block(build_local_microscopic(p), 0).dense() - h0.dense();

  const Mat sd = s.dense();
  const Mat numeric = h0.dense() + 0.5 * (sd * v - v * sd);
  const Mat analytic = clock_sector_block(build_complete_second_order(p), 0).dense();

  const auto idx = all_down(sp);
  REQUIRE(idx.size() == 27);  // 3 cavities, cutoff 2, both qubits down
  CHECK((block(numeric, idx) - block(analytic, idx)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("transformed Hamiltonian sits at second order up to a cubic tail") {
  const ModelParams p = local_base(3, false, 5.0, 2);
  const SwCheck c = sw_consistency_check(p, 0);

  CHECK(c.g_over_delta == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(c.residual_full > 0.0);
  // the all-down block is protected by qubit parity: one order smaller
  CHECK(c.residual_projected < 0.2 * c.residual_full);
  // the cubic BCH commutator accounts for the bulk of the residual
  CHECK(c.residual_full / c.cubic_reference > 0.5);
  CHECK(c.residual_full / c.cubic_reference < 2.0);
}
