#include "otoclock/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "otoclock/dynamics.hpp"
#include "otoclock/hilbert.hpp"
#include "otoclock/kernels.hpp"
#include "otoclock/models.hpp"
#include "otoclock/oracle.hpp"
#include "otoclock/presets.hpp"
#include "otoclock/protocol.hpp"
#include "otoclock/rng.hpp"
#include "otoclock/runner.hpp"
#include "otoclock/spectra.hpp"

namespace otoclock::acceptance {

namespace {

using SteadyClock = std::chrono::steady_clock;

double elapsed(SteadyClock::time_point t0) {
  return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

template <typename... Args>
std::string strf(const char* f, Args... args) {
  char buf[640];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpacePtr qubit_chain(int l) {
  std::vector<SiteSpec> sites(static_cast<std::size_t>(l), qubit_site());
  return make_space(std::move(sites));
}

Operator dense_to_operator(const SpacePtr& sp, const Mat& m, bool hermitian) {
  std::vector<Eigen::Triplet<cxd>> trips;
  trips.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) trips.emplace_back(i, j, m(i, j));
  SpMatR s(m.rows(), m.cols());
  s.setFromTriplets(trips.begin(), trips.end());
  return Operator(sp, std::move(s), hermitian);
}

Mat random_unitary(std::int64_t d, std::uint64_t seed) {
  Mat m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto idx = static_cast<std::uint64_t>(j * d + i);
      m(i, j) = cxd(rng::gaussian(seed, idx, 0), rng::gaussian(seed, idx, 1));
    }
  Eigen::HouseholderQR<Mat> qr(m);
  return Mat(qr.householderQ());
}

Vec random_state(std::int64_t d, std::uint64_t seed) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    v[i] = cxd(rng::gaussian(seed, idx, 2), rng::gaussian(seed, idx, 3));
  }
  v /= std::sqrt(kernels::norm2(v));
  return v;
}

// Reference implementation of the whole measurement with the clock ancilla
// carried explicitly in the Hilbert space: state blocks (clock |0>, clock |1>),
// Pade matrix exponentials for the conditional evolution, 2x2 clock pulses.
// Every interference path the pulse errors open contributes coherently here,
// so this is what the branched engine must reproduce.
cxd extended_protocol(const Mat& h, const Vec& psi, const Mat& o1, const Mat& o2,
                      double t, const PulseErrors& e) {
  const Mat uf = Mat(cxd(0.0, -1.0) * t * h).exp();
  const Mat ub = Mat(cxd(0.0, +1.0) * t * h).exp();
  const Mat uf2 = Mat(cxd(0.0, -2.0) * t * h).exp();
  const Mat ub2 = Mat(cxd(0.0, +2.0) * t * h).exp();

  Vec b0 = psi;                    // clock |0>: evolves backward
  Vec b1 = Vec::Zero(psi.size());  // clock |1>: evolves forward

  const auto rot_y = [&](double th) {
    const double c = std::cos(0.5 * th), s = std::sin(0.5 * th);
    const Vec n0 = c * b0 - s * b1;
    const Vec n1 = s * b0 + c * b1;
    b0 = n0;
    b1 = n1;
  };
  const auto flip_x = [&](double dth) {
    const cxd c(std::cos(0.5 * dth), 0.0), ms(0.0, -std::sin(0.5 * dth));
    const Vec n0 = c * b1 + ms * b0;
    const Vec n1 = c * b0 + ms * b1;
    b0 = n0;
    b1 = n1;
  };

  rot_y(0.5 * std::numbers::pi + e.hadamard);
  b1 = o1 * b1;
  b0 = ub * b0;
  b1 = uf * b1;
  b1 = o2 * b1;
  flip_x(e.flip1);
  b0 = ub2 * b0;
  b1 = uf2 * b1;
  flip_x(e.flip2);
  b0 = o2 * b0;
  b0 = ub * b0;
  b1 = uf * b1;
  b0 = o1 * b0;
  return 2.0 * b0.dot(b1);  // <tau_x> + i <tau_y>; dot conjugates the left arg
}

// max |H(sector 1) + H(sector 0)| over all matrix elements
double sector_antisymmetry_defect(const Operator& h) {
  const Operator b0 = clock_sector_block(h, 0);
  const Operator b1 = clock_sector_block(h, 1);
  SpMatR sum = b0.sparse() + b1.sparse();
  double worst = 0.0;
  for (int r = 0; r < sum.outerSize(); ++r)
    for (SpMatR::InnerIterator it(sum, r); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

CriterionResult check_protocol_matches_oracle(const SuiteOptions& opt) {
  const auto t0 = SteadyClock::now();
  constexpr double kTol = 1e-9;
  constexpr int kInstances = 50;

  double worst = 0.0;
  bool norms_ok = true;
  for (int k = 0; k < kInstances; ++k) {
    const int l = 2 + (k % 2);
    const std::uint64_t inst = rng::word(opt.seed, static_cast<std::uint64_t>(k));
    std::vector<double> fields(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i)
      fields[static_cast<std::size_t>(i)] =
          rng::uniform(inst, static_cast<std::uint64_t>(i), -1.0, 1.0, 4);
    const Operator h = build_disordered_heisenberg(l, fields);
    const SpacePtr sp = h.space();
    const std::int64_t d = sp->dim();

    ProtocolSpec spec;
    spec.hamiltonian = h;
    spec.psi0 = StateVector{sp, random_state(d, rng::word(inst, 1))};
    spec.o1 = dense_to_operator(sp, random_unitary(d, rng::word(inst, 2)), false);
    spec.o2 = dense_to_operator(sp, random_unitary(d, rng::word(inst, 3)), false);
    spec.t = rng::uniform(inst, 0, 0.2, 2.5, 5);

    const EigenSystem es = spectral_decompose(h);
    const ProtocolResult r = run_oto_protocol(spec, es);
    const cxd f = otoc_pure(es, spec.psi0, spec.o1, spec.o2, spec.t);
    worst = std::max(worst, std::abs(r.branch_overlap - f));
    norms_ok = norms_ok && r.norm_ok;
  }

  CriterionResult res;
  res.name = "interferometer equals spectral oracle on random instances";
  res.pass = worst <= kTol && norms_ok;
  res.detail = strf("max |protocol - oracle| = %.3g over %d instances (tol %.0e), norms %s",
                    worst, kInstances, kTol, norms_ok ? "conserved" : "violated");
  res.seconds = elapsed(t0);
  return res;
}

CriterionResult check_dimer_spectra(const SuiteOptions&) {
  const auto t0 = SteadyClock::now();
  constexpr double kLevelRelTol = 1e-3;  // centroid-aligned level error
  constexpr double kSplitTol = 0.05;     // measured vs predicted 2 g^2/Delta
  constexpr double kSectorTol = 0.01;    // sector 0 vs sector 1 splitting
  constexpr double kBudgetSeconds = 10.0;

  const ModelParams p = preset_config("dimer").params;
  const Operator h_ex = build_local_microscopic(p);
  const Operator h_eff = build_local_effective(p, 2, Frame::Lab);
  const double predicted =
      2.0 * p.g_site[0] * p.g_site[0] / std::abs(detuning_local(p, 0));

  double max_rel = 0.0, split_dev = 0.0;
  double split[2] = {0.0, 0.0};
  for (int na : {0, 1}) {
    const SectorSpectrum se = sector_spectrum(h_ex, na);
    const SectorSpectrum sm = sector_spectrum(h_eff, na);
    const SpectraComparison cmp =
        compare_spectra(se, sm, OffsetPolicy::ManifoldCentroid);
    max_rel = std::max(max_rel, cmp.max_rel_err);
    split[na] = manifold_splitting(se, 1, 0);
    split_dev = std::max(split_dev, std::abs(split[na] - predicted) / predicted);
  }
  const double sector_dev = std::abs(split[0] - split[1]) / split[0];
  const double secs = elapsed(t0);

  CriterionResult res;
  res.name = "dimer spectra match the effective model";
  res.pass = max_rel <= kLevelRelTol && split_dev <= kSplitTol &&
             sector_dev <= kSectorTol && secs <= kBudgetSeconds;
  res.detail = strf(
      "levels rel err %.3g (tol %.0e); splitting %.6g/%.6g vs %.3g, dev %.3g "
      "(tol %.0e); sector mismatch %.3g (tol %.0e); %.2fs (budget %.0fs)",
      max_rel, kLevelRelTol, split[0], split[1], predicted, split_dev, kSplitTol,
      sector_dev, kSectorTol, secs, kBudgetSeconds);
  res.seconds = secs;
  return res;
}

CriterionResult check_ring_chirality(const SuiteOptions&) {
  const auto t0 = SteadyClock::now();
  constexpr double kSplitTol = 0.05;    // vs predicted 3 g^2/|Delta|
  constexpr double kOverlapLoss = 1e-3; // dressed Bloch weight in the ground cluster
  constexpr double kBudgetSeconds = 30.0;

  const ModelParams p = preset_config("ring").params;
  const double predicted =
      3.0 * p.g_site[0] * p.g_site[0] / std::abs(detuning_local(p, 0));
  const RingSignature s0 = ring_signature(p, 0);
  const RingSignature s1 = ring_signature(p, 1);

  const double dev0 = std::abs(s0.splitting - predicted) / predicted;
  const double dev1 = std::abs(s1.splitting - predicted) / predicted;
  const double worst_overlap = std::min(s0.overlap_dressed, s1.overlap_dressed);
  const double secs = elapsed(t0);

  CriterionResult res;
  res.name = "ring one-photon manifold: degeneracies and chirality";
  res.pass = s0.ground_degeneracy == 1 && s1.ground_degeneracy == 2 &&
             s1.ground_is_chiral_pair && !s0.ambiguous && !s1.ambiguous &&
             dev0 <= kSplitTol && dev1 <= kSplitTol &&
             worst_overlap >= 1.0 - kOverlapLoss && secs <= kBudgetSeconds;
  res.detail = strf(
      "degeneracy %d/%d (want 1/2, chiral %s); splitting dev %.3g, %.3g (tol %.0e); "
      "dressed overlap %.8f (>= 1-%.0e; bare %.5f); %.2fs",
      s0.ground_degeneracy, s1.ground_degeneracy,
      s1.ground_is_chiral_pair ? "yes" : "NO", dev0, dev1, kSplitTol,
      worst_overlap, kOverlapLoss, std::min(s0.overlap_bare, s1.overlap_bare), secs);
  res.seconds = secs;
  return res;
}

CriterionResult check_sign_flip_antisymmetry(const SuiteOptions& opt) {
  const auto t0 = SteadyClock::now();
  constexpr double kTol = 1e-12;

  // disordered couplings, so the antisymmetry cannot come from uniformity
  DisorderSpec dis;
  dis.dist = DisorderSpec::Dist::Uniform;
  dis.a = 3.0;
  dis.b = 6.0;
  dis.target = DisorderSpec::Target::GSite;
  dis.seed = rng::word(opt.seed, 11);

  double worst = 0.0;
  std::string worst_case = "none";
  const auto track = [&](const char* label, double defect) {
    if (defect > worst) {
      worst = defect;
      worst_case = label;
    }
  };

  ModelParams lp;
  lp.omega_a = 5850.0;
  lp.omega_b = 5000.0;
  lp.epsilon = 5050.0;
  lp.n = 4;
  lp.n_max = 2;
  for (bool periodic : {false, true}) {
    lp.periodic = periodic;
    lp.g_site = sample_disorder(dis, periodic ? 4 : 3);
    const ModelParams solved = solve_sign_condition(lp, ConditionModel::Local);
    for (int order : {2, 4})
      track(periodic ? "local ring" : "local chain",
            sector_antisymmetry_defect(
                build_local_effective(solved, order, Frame::Rotating)));
    const ModelParams jc = solve_sign_condition(lp, ConditionModel::LocalJC);
    track("local jc", sector_antisymmetry_defect(
                          build_local_effective(jc, 2, Frame::Rotating)));
  }

  ModelParams np;
  np.omega_a = 5850.0;
  np.omega_b = 5000.0;
  np.epsilon = 5050.0;
  np.n = 4;
  np.n_max = 3;
  dis.seed = rng::word(opt.seed, 12);
  np.g_site = sample_disorder(dis, 4);
  const ModelParams nsolved = solve_sign_condition(np, ConditionModel::Nonlocal);
  for (bool zz : {false, true})
    track("nonlocal", sector_antisymmetry_defect(
                          build_nonlocal_effective(nsolved, zz, Frame::Rotating)));

  CriterionResult res;
  res.name = "clock sector 1 is exactly -H of sector 0";
  res.pass = worst <= kTol;
  res.detail = strf("max |H(1) + H(0)| = %.3g (tol %.0e, worst case: %s)", worst,
                    kTol, worst_case.c_str());
  res.seconds = elapsed(t0);
  return res;
}

CriterionResult check_switch_error_sensitivity(const SuiteOptions& opt) {
  const auto t0 = SteadyClock::now();
  constexpr double kPureTol = 1e-10;
  constexpr double kBudgetSeconds = 300.0;  // applies to the default L = 8

  ExperimentConfig cfg = preset_config("chain");
  cfg.heisenberg_l = opt.chain_l;
  cfg.o2 = "sigma_z@" + std::to_string(opt.chain_l - 2);

  const std::vector<double> fields = sample_disorder(cfg.disorder, cfg.heisenberg_l);
  const Operator h = build_disordered_heisenberg(cfg.heisenberg_l, fields);
  const EigenSystem es = spectral_decompose(h);
  const StateVector psi0 = state_from_spec(h.space(), cfg.initial_state);
  const Operator o1 = operator_from_spec(h.space(), cfg.o1);
  const Operator o2 = operator_from_spec(h.space(), cfg.o2);
  const double t_early = cfg.times.at(0), t_late = cfg.times.at(1);

  // exact-switch limit reproduces the oracle
  const double pure_dev =
      std::abs(otoc_switch_error(es, psi0, o1, o2, t_late, 0.0) -
               otoc_pure(es, psi0, o1, o2, t_late));
  const SwitchErrorStats zero = relative_switch_error(es, psi0, o1, o2, t_late, 0.0,
                                                      cfg.n_samples, cfg.seed);

  // noisy switches: the scrambled (late) correlator must degrade more
  bool grows = true;
  double rel[2][2] = {{0, 0}, {0, 0}};
  for (int di = 0; di < 2; ++di) {
    const double delta = cfg.deltas.at(static_cast<std::size_t>(di + 1));
    const SwitchErrorStats early = relative_switch_error(
        es, psi0, o1, o2, t_early, delta, cfg.n_samples, cfg.seed);
    const SwitchErrorStats late = relative_switch_error(
        es, psi0, o1, o2, t_late, delta, cfg.n_samples, cfg.seed);
    rel[di][0] = early.rel_abs;
    rel[di][1] = late.rel_abs;
    grows = grows && late.rel_abs > early.rel_abs;
  }

  const double secs = elapsed(t0);
  CriterionResult res;
  res.name = "switch errors hit scrambled correlators harder";
  res.pass = pure_dev <= kPureTol && zero.rel_abs <= kPureTol && grows &&
             (opt.chain_l != 8 || secs <= kBudgetSeconds);
  res.detail = strf(
      "L=%d: eps=0 dev %.3g, delta=0 rel %.3g (tol %.0e); rel err t=%g->t=%g: "
      "%.3g->%.3g (delta %.2g), %.3g->%.3g (delta %.2g); %.1fs",
      opt.chain_l, pure_dev, zero.rel_abs, kPureTol, t_early, t_late, rel[0][0],
      rel[0][1], cfg.deltas.at(1), rel[1][0], rel[1][1], cfg.deltas.at(2), secs);
  res.seconds = secs;
  return res;
}

CriterionResult check_pulse_noise_bound(const SuiteOptions& opt) {
  const auto t0 = SteadyClock::now();
  constexpr double kBoundSlack = 1e-9;
  constexpr double kEngineVsExtended = 1e-9;
  constexpr double kPrefactorTol = 1e-10;
  constexpr double kPhaseTol = 1e-8;
  constexpr double kScale = 0.3;
  constexpr int kDraws = 200;
  constexpr double kBudgetSeconds = 60.0;

  const std::vector<double> fields{0.3, -0.2, 0.5};
  const Operator h = build_disordered_heisenberg(3, fields);
  const SpacePtr sp = h.space();
  const EigenSystem es = spectral_decompose(h);

  ProtocolSpec spec;
  spec.hamiltonian = h;
  spec.psi0 = StateVector{sp, random_state(sp->dim(), rng::word(opt.seed, 21))};
  spec.o1 = operator_from_spec(sp, "sigma_z@0");
  spec.o2 = operator_from_spec(sp, "sigma_z@2");
  spec.t = 0.7;
  const cxd f = otoc_pure(es, spec.psi0, spec.o1, spec.o2, spec.t);

  const Mat hd = h.dense();
  const Mat o1d = spec.o1.dense(), o2d = spec.o2.dense();
  const std::uint64_t draw_seed = rng::word(opt.seed, 22);

  int bound_violations = 0;
  double worst_margin = -1.0, worst_ext = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const auto kk = static_cast<std::uint64_t>(k);
    spec.errors.hadamard = rng::uniform(draw_seed, kk, -kScale, kScale, 2);
    spec.errors.flip1 = rng::uniform(draw_seed, kk, -kScale, kScale, 3);
    spec.errors.flip2 = rng::uniform(draw_seed, kk, -kScale, kScale, 4);

    const ProtocolResult r = run_oto_protocol(spec, es);
    const double c1 = std::cos(0.5 * spec.errors.flip1);
    const double c2 = std::cos(0.5 * spec.errors.flip2);
    const cxd scaled_ideal =
        std::cos(spec.errors.hadamard) * c1 * c1 * c2 * c2 * f;
    const double dev = std::abs(r.branch_overlap - scaled_ideal);
    const double bound = noise_bound(spec.errors.flip1, spec.errors.flip2);
    if (dev > bound + kBoundSlack) ++bound_violations;
    worst_margin = std::max(worst_margin, dev - bound);

    const cxd ext = extended_protocol(hd, spec.psi0.amp, o1d, o2d, spec.t, spec.errors);
    worst_ext = std::max(worst_ext, std::abs(r.branch_overlap - ext));
  }

  // preparation-pulse error alone only rescales by cos(dtheta_h)
  double worst_pref = 0.0, worst_phase = 0.0;
  for (int k = 0; k < 50; ++k) {
    spec.errors = PulseErrors{};
    spec.errors.hadamard =
        rng::uniform(draw_seed, static_cast<std::uint64_t>(1000 + k), -kScale, kScale, 2);
    const ProtocolResult r = run_oto_protocol(spec, es);
    const cxd expect = std::cos(spec.errors.hadamard) * f;
    worst_pref = std::max(worst_pref, std::abs(r.branch_overlap - expect));
    if (std::abs(f) > 1e-6)
      worst_phase =
          std::max(worst_phase, std::abs(std::arg(r.branch_overlap * std::conj(f))));
  }

  const double secs = elapsed(t0);
  CriterionResult res;
  res.name = "pulse errors obey the analytic noise bound";
  res.pass = bound_violations == 0 && worst_ext <= kEngineVsExtended &&
             worst_pref <= kPrefactorTol && worst_phase <= kPhaseTol &&
             secs <= kBudgetSeconds;
  res.detail = strf(
      "%d/%d inside bound (worst margin %.3g); engine vs explicit-clock sim "
      "%.3g (tol %.0e); prep prefactor dev %.3g (tol %.0e), phase dev %.3g "
      "(tol %.0e); %.1fs",
      kDraws - bound_violations, kDraws, worst_margin, worst_ext,
      kEngineVsExtended, worst_pref, kPrefactorTol, worst_phase, kPhaseTol, secs);
  res.seconds = secs;
  return res;
}

CriterionResult check_loschmidt_limits(const SuiteOptions& opt) {
  const auto t0 = SteadyClock::now();
  constexpr double kIdentityTol = 1e-12;
  constexpr double kCommutingTol = 1e-10;

  // zero perturbation: amplitude exactly 1
  const std::vector<double> fields{0.1, -0.4, 0.25, 0.6};
  const Operator h = build_disordered_heisenberg(4, fields);
  const StateVector psi{h.space(), random_state(h.space()->dim(), rng::word(opt.seed, 31))};
  const Operator zero = operator_from_spec(h.space(), "sigma_z@1").scaled(0.0);
  double worst_id = 0.0;
  for (double t : {0.5, 3.0}) {
    const LoschmidtResult r = loschmidt_echo(h, zero, psi, t);
    worst_id = std::max(worst_id, std::abs(r.amplitude - cxd(1.0, 0.0)));
  }

  // commuting perturbation: amplitude is the pure phase e^{-i lambda t}
  const SpacePtr sp = qubit_chain(4);
  std::vector<ProductTerm> terms;
  const std::vector<double> hz{0.7, -0.3, 0.45, 0.2};
  for (int i = 0; i < 3; ++i)
    terms.push_back({1.0, {{i, LocalKind::SigmaZ}, {i + 1, LocalKind::SigmaZ}}});
  for (int i = 0; i < 4; ++i)
    terms.push_back({hz[static_cast<std::size_t>(i)], {{i, LocalKind::SigmaZ}}});
  const Operator ising = compose(sp, terms, true);
  const double lambda = 0.37;
  const Operator dh = operator_from_spec(sp, "sigma_z@0").scaled(lambda);
  // superposition of two Ising eigenstates, both with site 0 up
  Vec amp = Vec::Zero(sp->dim());
  amp[sp->index_of({0, 1, 0, 1})] = 1.0 / std::sqrt(2.0);
  amp[sp->index_of({0, 0, 1, 1})] = 1.0 / std::sqrt(2.0);
  const StateVector chi{sp, amp};
  double worst_comm = 0.0;
  for (double t : {0.5, 3.0}) {
    const LoschmidtResult r = loschmidt_echo(ising, dh, chi, t);
    const cxd expect = std::exp(cxd(0.0, -lambda * t));
    worst_comm = std::max(worst_comm, std::abs(r.amplitude - expect));
  }

  CriterionResult res;
  res.name = "Loschmidt echo limits";
  res.pass = worst_id <= kIdentityTol && worst_comm <= kCommutingTol;
  res.detail = strf(
      "zero-perturbation dev %.3g (tol %.0e); commuting-phase dev %.3g (tol %.0e)",
      worst_id, kIdentityTol, worst_comm, kCommutingTol);
  res.seconds = elapsed(t0);
  return res;
}

CriterionResult check_sw_residual_scaling(const SuiteOptions&) {
  const auto t0 = SteadyClock::now();
  constexpr double kExponentTol = 0.3;  // around the predicted cubic power

  ModelParams p = preset_config("dimer").params;
  p.n = 3;  // open three-cavity chain, two bonds
  p.g_site.assign(2, 5.0);
  p = solve_sign_condition(p, ConditionModel::Local);

  double r_full[3], r_proj[3], ratio = 0.0;
  const double scales[3] = {1.0, 0.5, 0.25};
  for (int i = 0; i < 3; ++i) {
    ModelParams ps = p;
    for (double& g : ps.g_site) g *= scales[i];
    const SwCheck c = sw_consistency_check(ps, 0);
    r_full[i] = c.residual_full;
    r_proj[i] = c.residual_projected;
    ratio = c.residual_full / c.cubic_reference;
  }
  const double e_full =
      0.5 * (std::log2(r_full[0] / r_full[1]) + std::log2(r_full[1] / r_full[2]));
  const double e_proj =
      0.5 * (std::log2(r_proj[0] / r_proj[1]) + std::log2(r_proj[1] / r_proj[2]));

  CriterionResult res;
  res.name = "Schrieffer-Wolff residual scales as g^3";
  res.pass = std::abs(e_full - 3.0) <= kExponentTol;
  res.detail = strf(
      "sector-wide exponent %.3f (want 3 +- %.1f); projected exponent %.3f; "
      "residual/commutator-reference at smallest g: %.3f",
      e_full, kExponentTol, e_proj, ratio);
  res.seconds = elapsed(t0);
  return res;
}

std::vector<CriterionResult> run_all(const SuiteOptions& opt) {
  return {
      check_protocol_matches_oracle(opt), check_dimer_spectra(opt),
      check_ring_chirality(opt),          check_sign_flip_antisymmetry(opt),
      check_switch_error_sensitivity(opt), check_pulse_noise_bound(opt),
      check_loschmidt_limits(opt),        check_sw_residual_scaling(opt),
  };
}

}  // namespace otoclock::acceptance
