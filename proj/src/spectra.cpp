#include "otoclock/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace otoclock {

namespace {

// How far an eigenvector's content may sit from an integer before the
// manifold label stops being trustworthy.
constexpr double kLabelSlack = 0.4;

std::string label_str(int b, int q) {
  return "(" + std::to_string(b) + ", " + std::to_string(q) + ")";
}

struct BondLayout {
  int n_cav = 0;
  int n_bond = 0;
  bool periodic = false;
  int left(int k) const { return k; }
  int right(int k) const { return (k + 1) % n_cav; }
};

BondLayout bond_layout(const ModelParams& p) {
  if (p.n < 2) throw std::invalid_argument("local scheme: need at least two cavities");
  BondLayout lat;
  lat.n_cav = p.n;
  lat.periodic = p.periodic;
  lat.n_bond = p.periodic ? p.n : p.n - 1;
  if (static_cast<int>(p.g_site.size()) != lat.n_bond)
    throw std::invalid_argument("local scheme: g_site must have one entry per bond");
  return lat;
}

SpacePtr clockless_local_space(const ModelParams& p, const BondLayout& lat) {
  const int nc = p.hardcore ? 1 : p.n_max;
  std::vector<SiteSpec> sites;
  for (int j = 0; j < lat.n_cav; ++j) sites.push_back(boson_site(nc));
  for (int k = 0; k < lat.n_bond; ++k) sites.push_back(qubit_site());
  return make_space(std::move(sites));
}

// V = sum_k g_k [ (b^dag_l + b^dag_r) sigma^-_k + h.c. ] on a clockless space.
Operator local_coupling_term(const SpacePtr& space, const ModelParams& p,
                             const BondLayout& lat) {
  std::vector<ProductTerm> terms;
  for (int k = 0; k < lat.n_bond; ++k) {
    const int qb = lat.n_cav + k;
    for (int j : {lat.left(k), lat.right(k)}) {
      terms.push_back({p.g_site[k], {{qb, LocalKind::SigmaPlus}, {j, LocalKind::A}}});
      terms.push_back({p.g_site[k], {{qb, LocalKind::SigmaMinus}, {j, LocalKind::Adag}}});
    }
  }
  return compose(space, terms, true);
}

// Indices of the basis states with every qubit in |1> (down).
std::vector<std::int64_t> all_down_indices(const SpacePtr& space) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < space->dim(); ++i) {
    const auto occ = space->occupation_of(i);
    bool down = true;
    for (int s = 0; s < space->n_sites(); ++s)
      if (space->site(s).kind == SiteKind::Qubit && occ[static_cast<std::size_t>(s)] == 0)
        down = false;
    if (down) out.push_back(i);
  }
  return out;
}

Mat gather_block(const Mat& m, const std::vector<std::int64_t>& idx) {
  Mat out(idx.size(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < idx.size(); ++r)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(idx[r], idx[c]);
  return out;
}

// e^{S} for anti-Hermitian S, via the Hermitian generator K = -iS.
Mat exp_antihermitian(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> sol(Mat(cxd(0.0, -1.0) * s));
  if (sol.info() != Eigen::Success)
    throw std::runtime_error("exp_antihermitian: eigensolver failed");
  Vec phases(sol.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(cxd(0.0, sol.eigenvalues()[i]));
  return sol.eigenvectors() * phases.asDiagonal() * sol.eigenvectors().adjoint();
}

}  // namespace

SectorSpectrum sector_spectrum(const Operator& h, int n_a, std::int64_t dense_cap) {
  if (!h.space()) throw std::invalid_argument("sector_spectrum: empty operator");

  SectorSpectrum out;
  out.n_a = n_a;
  Operator block;
  if (h.space()->clock_site_index() < 0) {
    if (n_a != 0)
      throw std::invalid_argument("sector_spectrum: space has no clock, n_a must be 0");
    block = h;
  } else {
    block = clock_sector_block(h, n_a);
  }
  out.space = block.space();
  out.es = spectral_decompose(block, dense_cap);

  const std::int64_t d = out.space->dim();
  Eigen::VectorXd bosons(d), excited(d);
  for (std::int64_t i = 0; i < d; ++i) {
    const auto occ = out.space->occupation_of(i);
    double nb = 0.0, nq = 0.0;
    for (int s = 0; s < out.space->n_sites(); ++s) {
      const auto kind = out.space->site(s).kind;
      if (kind == SiteKind::Boson) nb += occ[static_cast<std::size_t>(s)];
      if (kind == SiteKind::Qubit && occ[static_cast<std::size_t>(s)] == 0) nq += 1.0;
    }
    bosons[i] = nb;
    excited[i] = nq;
  }

  out.levels.resize(static_cast<std::size_t>(d));
  for (std::int64_t n = 0; n < d; ++n) {
    const Eigen::VectorXd w = out.es.vecs.col(n).cwiseAbs2().real();
    LevelInfo& lv = out.levels[static_cast<std::size_t>(n)];
    lv.energy = out.es.evals[n];
    lv.boson_mean = w.dot(bosons);
    lv.excited_mean = w.dot(excited);
    lv.boson_label = static_cast<int>(std::lround(lv.boson_mean));
    lv.excited_label = static_cast<int>(std::lround(lv.excited_mean));
    lv.sharp = std::abs(lv.boson_mean - lv.boson_label) <= kLabelSlack &&
               std::abs(lv.excited_mean - lv.excited_label) <= kLabelSlack;
  }
  return out;
}

double manifold_splitting(const SectorSpectrum& s, int boson_label,
                          int excited_label) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int count = 0;
  for (const auto& lv : s.levels) {
    if (lv.boson_label != boson_label || lv.excited_label != excited_label) continue;
    lo = std::min(lo, lv.energy);
    hi = std::max(hi, lv.energy);
    ++count;
  }
  if (count < 2)
    throw std::invalid_argument("manifold_splitting: manifold " +
                                label_str(boson_label, excited_label) +
                                " has fewer than two levels");
  return hi - lo;
}

std::vector<std::pair<int, int>> manifold_labels(const SectorSpectrum& s) {
  std::set<std::pair<int, int>> seen;
  for (const auto& lv : s.levels) seen.insert({lv.boson_label, lv.excited_label});
  return {seen.begin(), seen.end()};
}

SpectraComparison compare_spectra(const SectorSpectrum& exact,
                                  const SectorSpectrum& model,
                                  const std::vector<std::pair<int, int>>& manifolds,
                                  OffsetPolicy offset) {
  SpectraComparison out;
  for (const auto& [b, q] : manifolds) {
    std::vector<double> ee, em;
    for (const auto& lv : exact.levels)
      if (lv.boson_label == b && lv.excited_label == q) ee.push_back(lv.energy);
    for (const auto& lv : model.levels)
      if (lv.boson_label == b && lv.excited_label == q) em.push_back(lv.energy);
    if (ee.empty() || em.empty())
      throw std::runtime_error("compare_spectra: manifold " + label_str(b, q) +
                               " missing on one side");
    if (ee.size() != em.size())
      throw std::runtime_error("compare_spectra: manifold " + label_str(b, q) +
                               " has " + std::to_string(ee.size()) + " exact vs " +
                               std::to_string(em.size()) + " model levels");

    double shift = 0.0;
    if (offset == OffsetPolicy::ManifoldCentroid) {
      double ce = 0.0, cm = 0.0;
      for (double e : ee) ce += e;
      for (double e : em) cm += e;
      shift = ce / static_cast<double>(ee.size()) - cm / static_cast<double>(em.size());
    }
    for (std::size_t i = 0; i < ee.size(); ++i) {
      LevelComparison lc;
      lc.boson_label = b;
      lc.excited_label = q;
      lc.e_exact = ee[i];
      lc.e_model = em[i] + shift;
      lc.abs_err = std::abs(lc.e_model - lc.e_exact);
      out.levels.push_back(lc);
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& lc : out.levels) {
    lo = std::min(lo, lc.e_exact);
    hi = std::max(hi, lc.e_exact);
  }
  const double floor = 1e-6 * (hi - lo);

  for (auto& lc : out.levels) {
    lc.excluded = std::abs(lc.e_exact) < floor;
    if (std::abs(lc.e_exact) > 0.0)
      lc.rel_err = lc.abs_err / std::abs(lc.e_exact);
    else
      lc.rel_err = lc.abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    out.max_abs_err = std::max(out.max_abs_err, lc.abs_err);
    if (lc.excluded)
      ++out.n_excluded;
    else
      out.max_rel_err = std::max(out.max_rel_err, lc.rel_err);
    ++out.n_compared;
  }
  return out;
}

SpectraComparison compare_spectra(const SectorSpectrum& exact,
                                  const SectorSpectrum& model,
                                  OffsetPolicy offset) {
  return compare_spectra(exact, model, manifold_labels(model), offset);
}

Operator sw_generator_first_order(const ModelParams& p, int n_a) {
  const auto lat = bond_layout(p);
  const double d = detuning_local(p, n_a);
  if (d == 0.0)
    throw std::domain_error("sw_generator_first_order: zero detuning in this sector");
  auto space = clockless_local_space(p, lat);

  std::vector<ProductTerm> terms;
  for (int k = 0; k < lat.n_bond; ++k) {
    const double c = p.g_site[k] / d;
    const int qb = lat.n_cav + k;
    for (int j : {lat.left(k), lat.right(k)}) {
      terms.push_back({c, {{qb, LocalKind::SigmaPlus}, {j, LocalKind::A}}});
      terms.push_back({-c, {{qb, LocalKind::SigmaMinus}, {j, LocalKind::Adag}}});
    }
  }
  return compose(space, terms, false);
}

SwCheck sw_consistency_check(const ModelParams& p, int n_a, std::int64_t dense_cap) {
  const auto lat = bond_layout(p);
  const Operator h = build_local_microscopic(p);
  const Operator hs = clock_sector_block(h, n_a);
  if (hs.dim() > dense_cap)
    throw std::invalid_argument("sw_consistency_check: sector exceeds dense cap");

  const SpacePtr sp = hs.space();
  const Operator v = local_coupling_term(sp, p, lat);
  const Operator s = sw_generator_first_order(p, n_a);

  const Mat hd = hs.dense();
  const Mat vd = v.dense();
  const Mat sd = s.dense();
  const Mat h0 = hd - vd;

  const Mat u = exp_antihermitian(sd);
  const Mat rotated = u * hd * u.adjoint();
  const Mat comm_sv = sd * vd - vd * sd;
  const Mat diff = rotated - (h0 + 0.5 * comm_sv);

  SwCheck out;
  out.residual_full = diff.norm();
  out.residual_projected = gather_block(diff, all_down_indices(sp)).norm();
  const Mat comm2 = sd * comm_sv - comm_sv * sd;
  out.cubic_reference = comm2.norm() / 3.0;

  double gmax = 0.0;
  for (double g : p.g_site) gmax = std::max(gmax, std::abs(g));
  out.g_over_delta = gmax / std::abs(detuning_local(p, n_a));
  return out;
}

RingSignature ring_signature(const ModelParams& p, int n_a, std::int64_t dense_cap) {
  if (!p.periodic || p.n < 3)
    throw std::invalid_argument("ring_signature: need a periodic ring of >= 3 cavities");
  const auto lat = bond_layout(p);

  const Operator h = build_local_microscopic(p);
  const SectorSpectrum ss = sector_spectrum(h, n_a, dense_cap);

  RingSignature out;
  out.n_a = n_a;
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(ss.levels.size()); ++i)
    if (ss.levels[static_cast<std::size_t>(i)].boson_label == 1 &&
        ss.levels[static_cast<std::size_t>(i)].excited_label == 0)
      idx.push_back(i);
  if (static_cast<int>(idx.size()) != p.n)
    throw std::runtime_error("ring_signature: one-photon manifold has " +
                             std::to_string(idx.size()) + " levels, expected " +
                             std::to_string(p.n));
  for (int i : idx)
    out.manifold_energies.push_back(ss.levels[static_cast<std::size_t>(i)].energy);
  out.splitting = out.manifold_energies.back() - out.manifold_energies.front();

  const double tol = std::max(1e-9, 1e-6 * out.splitting);
  out.ground_degeneracy = 1;
  while (out.ground_degeneracy < static_cast<int>(idx.size()) &&
         out.manifold_energies[static_cast<std::size_t>(out.ground_degeneracy)] -
                 out.manifold_energies[0] <=
             tol)
    ++out.ground_degeneracy;
  for (std::size_t i = 1; i < out.manifold_energies.size(); ++i) {
    const double gap = out.manifold_energies[i] - out.manifold_energies[i - 1];
    if (gap > tol && gap < 100.0 * tol) out.ambiguous = true;
  }

  // which Bloch states the effective hopping model puts at the bottom:
  // hopping J = g^2 / Delta, band -2J cos k; J > 0 grounds k = 0, J < 0
  // grounds the momenta closest to pi
  double g2 = 0.0;
  for (double g : p.g_site) g2 += g * g;
  g2 /= static_cast<double>(p.g_site.size());
  const double j_hop = g2 / detuning_local(p, n_a);
  std::vector<int> momenta;
  if (j_hop > 0.0)
    momenta = {0};
  else if (p.n % 2 == 0)
    momenta = {p.n / 2};
  else
    momenta = {(p.n - 1) / 2, (p.n + 1) / 2};
  out.ground_is_chiral_pair = momenta.size() == 2 && out.ground_degeneracy == 2;

  // bare and dressed plane-wave photon states, qubits down
  const Operator s = sw_generator_first_order(p, n_a);
  const EigenSystem ek = spectral_decompose(s.scaled(cxd(0.0, -1.0)), dense_cap);
  std::vector<int> occ(static_cast<std::size_t>(lat.n_cav + lat.n_bond), 0);
  for (int k = 0; k < lat.n_bond; ++k) occ[static_cast<std::size_t>(lat.n_cav + k)] = 1;

  double w_bare = 0.0, w_dressed = 0.0;
  for (int m : momenta) {
    Vec bloch = Vec::Zero(ss.space->dim());
    for (int jc = 0; jc < lat.n_cav; ++jc) {
      occ[static_cast<std::size_t>(jc)] = 1;
      const double phase = 2.0 * std::numbers::pi * m * jc / lat.n_cav;
      bloch[ss.space->index_of(occ)] =
          std::exp(cxd(0.0, phase)) / std::sqrt(static_cast<double>(lat.n_cav));
      occ[static_cast<std::size_t>(jc)] = 0;
    }
    // H = e^{-S} H' e^{S} for the block-diagonal H', so the physical image
    // of an effective-model eigenstate is e^{-S} times it: e^{-iK} = e^{-S}.
    Vec dressed;
    evolve_signed(ek, bloch, 1.0, dressed);

    for (int c = 0; c < out.ground_degeneracy; ++c) {
      const Eigen::Index col = idx[static_cast<std::size_t>(c)];
      w_bare += std::norm(ss.es.vecs.col(col).dot(bloch));
      w_dressed += std::norm(ss.es.vecs.col(col).dot(dressed));
    }
  }
  out.overlap_bare = w_bare / static_cast<double>(momenta.size());
  out.overlap_dressed = w_dressed / static_cast<double>(momenta.size());
  return out;
}

}  // namespace otoclock
