#include "otoclock/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "otoclock/dynamics.hpp"
#include "otoclock/kernels.hpp"
#include "otoclock/models.hpp"
#include "otoclock/oracle.hpp"
#include "otoclock/protocol.hpp"
#include "otoclock/rng.hpp"
#include "otoclock/spectra.hpp"

namespace otoclock {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class CsvBuilder {
 public:
  void comment(const std::string& key, const std::string& value) {
    os_ << "# " << key << "=" << value << "\n";
  }
  void header(const std::vector<std::string>& cols) { line(cols); }
  void row(const std::vector<std::string>& cells) { line(cells); }
  std::string str() const { return os_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }
  std::ostringstream os_;
};

struct BuiltModel {
  Operator h_full;  // as built; may include the clock site
  Operator h;       // clock sector taken out when there is one
  ModelParams params;
  std::vector<double> fields;  // spin-chain on-site fields actually used
};

int coupling_count(const ExperimentConfig& cfg) {
  if (cfg.model == ModelKind::NonlocalMicroscopic ||
      cfg.model == ModelKind::NonlocalEffective)
    return cfg.params.n;
  return cfg.params.periodic ? cfg.params.n : cfg.params.n - 1;
}

BuiltModel build_model(const ExperimentConfig& cfg) {
  BuiltModel m;
  ModelParams p = cfg.params;
  if (cfg.use_disorder && cfg.disorder.target == DisorderSpec::Target::GSite &&
      cfg.model != ModelKind::HeisenbergChain)
    p.g_site = sample_disorder(cfg.disorder, coupling_count(cfg));
  m.params = p;

  const Frame frame = cfg.frame == "rotating" ? Frame::Rotating : Frame::Lab;
  switch (cfg.model) {
    case ModelKind::NonlocalMicroscopic:
      m.h_full = build_nonlocal_microscopic(p);
      break;
    case ModelKind::NonlocalEffective:
      m.h_full = build_nonlocal_effective(p, cfg.include_zz, frame);
      break;
    case ModelKind::LocalMicroscopic:
      m.h_full = build_local_microscopic(p);
      break;
    case ModelKind::LocalEffective:
      m.h_full = build_local_effective(p, cfg.effective_order, frame);
      break;
    case ModelKind::CompleteSecondOrder:
      m.h_full = build_complete_second_order(p);
      break;
    case ModelKind::HeisenbergChain: {
      std::vector<double> fields = cfg.fields;
      if (fields.empty()) {
        if (cfg.use_disorder && cfg.disorder.target == DisorderSpec::Target::FieldH)
          fields = sample_disorder(cfg.disorder, cfg.heisenberg_l);
        else
          fields.assign(static_cast<std::size_t>(cfg.heisenberg_l), 0.0);
      }
      if (static_cast<int>(fields.size()) != cfg.heisenberg_l)
        throw std::invalid_argument("runner: fields length must equal heisenberg_l");
      m.fields = fields;
      m.h_full = build_disordered_heisenberg(cfg.heisenberg_l, fields);
      break;
    }
  }
  // dynamics experiments act inside one clock sector; the sector block IS the
  // signed Hamiltonian the clock state selects
  if (m.h_full.space()->clock_site_index() >= 0)
    m.h = clock_sector_block(m.h_full, cfg.clock_sector);
  else
    m.h = m.h_full;
  return m;
}

void stamp(CsvBuilder& csv, const ExperimentConfig& cfg) {
  csv.comment("experiment", to_string(cfg.experiment));
  csv.comment("model", to_string(cfg.model));
  csv.comment("config_hash", hash_hex(config_hash(cfg)));
  csv.comment("seed", std::to_string(cfg.seed));
}

json base_meta(const ExperimentConfig& cfg) {
  return json{{"experiment", to_string(cfg.experiment)},
              {"model", to_string(cfg.model)},
              {"config_hash", hash_hex(config_hash(cfg))},
              {"seed", cfg.seed}};
}

RunResult run_oracle(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  const EigenSystem es = spectral_decompose(bm.h);
  const Operator o1 = operator_from_spec(bm.h.space(), cfg.o1);
  const Operator o2 = operator_from_spec(bm.h.space(), cfg.o2);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.comment("beta", num(cfg.beta));
  csv.header({"t", "f_re", "f_im", "f_abs"});
  json rows = json::array();
  StateVector psi0;
  if (cfg.beta < 0.0) psi0 = state_from_spec(bm.h.space(), cfg.initial_state);
  for (double t : cfg.times) {
    const cxd f = cfg.beta < 0.0 ? otoc_pure(es, psi0, o1, o2, t)
                                 : otoc_thermal(es, o1, o2, t, cfg.beta);
    csv.row({num(t), num(f.real()), num(f.imag()), num(std::abs(f))});
    rows.push_back({{"t", t}, {"f_re", f.real()}, {"f_im", f.imag()}});
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["rows"] = rows;
  return out;
}

RunResult run_protocol(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  const EigenSystem es = spectral_decompose(bm.h);
  ProtocolSpec spec;
  spec.hamiltonian = bm.h;
  spec.psi0 = state_from_spec(bm.h.space(), cfg.initial_state);
  spec.o1 = operator_from_spec(bm.h.space(), cfg.o1);
  spec.o2 = operator_from_spec(bm.h.space(), cfg.o2);
  spec.errors = cfg.pulses;
  spec.operators_unitary =
      operator_spec_unitary(cfg.o1) && operator_spec_unitary(cfg.o2);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.header({"t", "tau_x", "tau_y", "oracle_re", "oracle_im", "abs_dev", "norm_ok"});
  json rows = json::array();
  double worst = 0.0;
  for (double t : cfg.times) {
    spec.t = t;
    const ProtocolResult r = run_oto_protocol(spec, es);
    const cxd f = otoc_pure(es, spec.psi0, spec.o1, spec.o2, t);
    const double dev = std::abs(r.branch_overlap - f);
    worst = std::max(worst, dev);
    csv.row({num(t), num(r.tau_x), num(r.tau_y), num(f.real()), num(f.imag()),
             num(dev), num(r.norm_ok ? 1 : 0)});
    rows.push_back({{"t", t},
                    {"tau_x", r.tau_x},
                    {"tau_y", r.tau_y},
                    {"abs_dev", dev},
                    {"norm_ok", r.norm_ok}});
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["rows"] = rows;
  out.meta["max_abs_dev"] = worst;
  return out;
}

RunResult run_switch_sweep(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  const EigenSystem es = spectral_decompose(bm.h);
  const StateVector psi0 = state_from_spec(bm.h.space(), cfg.initial_state);
  const Operator o1 = operator_from_spec(bm.h.space(), cfg.o1);
  const Operator o2 = operator_from_spec(bm.h.space(), cfg.o2);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.comment("n_samples", std::to_string(cfg.n_samples));
  csv.header({"t", "delta", "mean_re", "mean_im", "pure_re", "pure_im", "rel_abs",
              "rel_re", "rel_im"});
  json rows = json::array();
  // one shared draw stream: every (t, delta) cell sees the same eps sequence,
  // so cells differ only through the dynamics, not through sampling noise
  for (double t : cfg.times) {
    for (double delta : cfg.deltas) {
      const SwitchErrorStats st = relative_switch_error(es, psi0, o1, o2, t, delta,
                                                        cfg.n_samples, cfg.seed);
      csv.row({num(t), num(delta), num(st.mean.real()), num(st.mean.imag()),
               num(st.pure.real()), num(st.pure.imag()), num(st.rel_abs),
               num(st.rel_re), num(st.rel_im)});
      rows.push_back({{"t", t},
                      {"delta", delta},
                      {"rel_abs", st.rel_abs},
                      {"pure_re", st.pure.real()},
                      {"pure_im", st.pure.imag()},
                      {"mean_re", st.mean.real()},
                      {"mean_im", st.mean.imag()}});
    }
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["rows"] = rows;
  out.meta["fields"] = bm.fields;
  return out;
}

RunResult run_pulse_sweep(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  const EigenSystem es = spectral_decompose(bm.h);
  ProtocolSpec spec;
  spec.hamiltonian = bm.h;
  spec.psi0 = state_from_spec(bm.h.space(), cfg.initial_state);
  spec.o1 = operator_from_spec(bm.h.space(), cfg.o1);
  spec.o2 = operator_from_spec(bm.h.space(), cfg.o2);
  spec.operators_unitary =
      operator_spec_unitary(cfg.o1) && operator_spec_unitary(cfg.o2);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.comment("pulse_scale", num(cfg.pulse_scale));
  csv.header({"t", "draw", "dtheta_h", "dtheta_1", "dtheta_2", "abs_dev", "bound",
              "within_bound"});
  json rows = json::array();
  int violations = 0;
  for (double t : cfg.times) {
    const cxd f = otoc_pure(es, spec.psi0, spec.o1, spec.o2, t);
    spec.t = t;
    for (int k = 0; k < cfg.n_pulse_draws; ++k) {
      const auto kk = static_cast<std::uint64_t>(k);
      spec.errors.hadamard = rng::uniform(cfg.seed, kk, -cfg.pulse_scale, cfg.pulse_scale, 2);
      spec.errors.flip1 = rng::uniform(cfg.seed, kk, -cfg.pulse_scale, cfg.pulse_scale, 3);
      spec.errors.flip2 = rng::uniform(cfg.seed, kk, -cfg.pulse_scale, cfg.pulse_scale, 4);
      const ProtocolResult r = run_oto_protocol(spec, es);
      // the known prefactor cos(dt_h) c1^2 c2^2 is calibrated out; what is
      // left over is the interference the flip errors let in
      const double c1 = std::cos(0.5 * spec.errors.flip1);
      const double c2 = std::cos(0.5 * spec.errors.flip2);
      const cxd scaled_ideal = std::cos(spec.errors.hadamard) * c1 * c1 * c2 * c2 * f;
      const double dev = std::abs(r.branch_overlap - scaled_ideal);
      const double bound = noise_bound(spec.errors.flip1, spec.errors.flip2);
      const bool ok = dev <= bound + 1e-9;
      if (!ok) ++violations;
      csv.row({num(t), num(k), num(spec.errors.hadamard), num(spec.errors.flip1),
               num(spec.errors.flip2), num(dev), num(bound), num(ok ? 1 : 0)});
      rows.push_back({{"t", t}, {"draw", k}, {"abs_dev", dev}, {"bound", bound}});
    }
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["rows"] = rows;
  out.meta["violations"] = violations;
  return out;
}

RunResult run_spectra(const ExperimentConfig& cfg) {
  ModelKind exact_kind;
  switch (cfg.model) {
    case ModelKind::LocalEffective:
    case ModelKind::CompleteSecondOrder:
      exact_kind = ModelKind::LocalMicroscopic;
      break;
    case ModelKind::NonlocalEffective:
      exact_kind = ModelKind::NonlocalMicroscopic;
      break;
    default:
      throw std::invalid_argument(
          "spectra experiment: model must be one of the effective kinds");
  }
  ExperimentConfig exact_cfg = cfg;
  exact_cfg.model = exact_kind;
  BuiltModel exact = build_model(exact_cfg);
  BuiltModel model = build_model(cfg);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.header({"n_a", "boson_label", "excited_label", "e_exact", "e_model", "abs_err",
              "rel_err", "excluded"});
  json sectors = json::array();
  for (int n_a : {0, 1}) {
    const SectorSpectrum se = sector_spectrum(exact.h_full, n_a);
    const SectorSpectrum sm = sector_spectrum(model.h_full, n_a);
    const SpectraComparison cmp =
        compare_spectra(se, sm, OffsetPolicy::ManifoldCentroid);
    for (const auto& lc : cmp.levels)
      csv.row({num(n_a), num(lc.boson_label), num(lc.excited_label), num(lc.e_exact),
               num(lc.e_model), num(lc.abs_err), num(lc.rel_err),
               num(lc.excluded ? 1 : 0)});
    json sec{{"n_a", n_a},
             {"max_rel_err", cmp.max_rel_err},
             {"max_abs_err", cmp.max_abs_err},
             {"n_compared", cmp.n_compared},
             {"n_excluded", cmp.n_excluded}};
    // the one-photon manifold width is the headline number for the dimer
    int photon_levels = 0;
    for (const auto& lv : sm.levels)
      if (lv.boson_label == 1 && lv.excited_label == 0) ++photon_levels;
    if (photon_levels >= 2) {
      sec["splitting_exact"] = manifold_splitting(se, 1, 0);
      sec["splitting_model"] = manifold_splitting(sm, 1, 0);
    }
    sectors.push_back(sec);
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["sectors"] = sectors;
  return out;
}

RunResult run_ring_check(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  CsvBuilder csv;
  stamp(csv, cfg);
  csv.header({"n_a", "splitting", "ground_degeneracy", "chiral_pair", "ambiguous",
              "overlap_bare", "overlap_dressed"});
  json sectors = json::array();
  for (int n_a : {0, 1}) {
    const RingSignature sig = ring_signature(bm.params, n_a);
    csv.row({num(n_a), num(sig.splitting), num(sig.ground_degeneracy),
             num(sig.ground_is_chiral_pair ? 1 : 0), num(sig.ambiguous ? 1 : 0),
             num(sig.overlap_bare), num(sig.overlap_dressed)});
    sectors.push_back({{"n_a", n_a},
                       {"splitting", sig.splitting},
                       {"ground_degeneracy", sig.ground_degeneracy},
                       {"chiral_pair", sig.ground_is_chiral_pair},
                       {"ambiguous", sig.ambiguous},
                       {"overlap_bare", sig.overlap_bare},
                       {"overlap_dressed", sig.overlap_dressed},
                       {"manifold_energies", sig.manifold_energies}});
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["sectors"] = sectors;
  return out;
}

RunResult run_loschmidt(const ExperimentConfig& cfg) {
  BuiltModel bm = build_model(cfg);
  const StateVector psi0 = state_from_spec(bm.h.space(), cfg.initial_state);
  const Operator dh =
      operator_from_spec(bm.h.space(), cfg.perturbation).scaled(cfg.perturbation_scale);

  CsvBuilder csv;
  stamp(csv, cfg);
  csv.comment("perturbation", cfg.perturbation);
  csv.comment("perturbation_scale", num(cfg.perturbation_scale));
  csv.header({"t", "amp_re", "amp_im", "echo"});
  json rows = json::array();
  for (double t : cfg.times) {
    const LoschmidtResult r = loschmidt_echo(bm.h, dh, psi0, t);
    csv.row({num(t), num(r.amplitude.real()), num(r.amplitude.imag()), num(r.echo)});
    rows.push_back({{"t", t}, {"echo", r.echo}});
  }
  RunResult out{csv.str(), base_meta(cfg)};
  out.meta["rows"] = rows;
  return out;
}

}  // namespace

Operator operator_from_spec(const SpacePtr& space, const std::string& spec) {
  const auto at = spec.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == spec.size())
    throw std::invalid_argument("operator spec must look like kind@site: \"" + spec + "\"");
  const std::string kind_s = spec.substr(0, at);
  const std::string site_s = spec.substr(at + 1);

  LocalKind kind;
  if (kind_s == "sigma_x") kind = LocalKind::SigmaX;
  else if (kind_s == "sigma_y") kind = LocalKind::SigmaY;
  else if (kind_s == "sigma_z") kind = LocalKind::SigmaZ;
  else if (kind_s == "sigma_plus") kind = LocalKind::SigmaPlus;
  else if (kind_s == "sigma_minus") kind = LocalKind::SigmaMinus;
  else if (kind_s == "a") kind = LocalKind::A;
  else if (kind_s == "adag") kind = LocalKind::Adag;
  else if (kind_s == "n") kind = LocalKind::N;
  else if (kind_s == "proj0") kind = LocalKind::Proj0;
  else if (kind_s == "proj1") kind = LocalKind::Proj1;
  else if (kind_s == "tau_x") kind = LocalKind::TauX;
  else if (kind_s == "tau_y") kind = LocalKind::TauY;
  else if (kind_s == "tau_z") kind = LocalKind::TauZ;
  else throw std::invalid_argument("operator spec: unknown kind \"" + kind_s + "\"");

  std::size_t used = 0;
  int site = 0;
  try {
    site = std::stoi(site_s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != site_s.size())
    throw std::invalid_argument("operator spec: bad site \"" + site_s + "\"");
  return local_operator(space, site, kind);
}

bool operator_spec_unitary(const std::string& spec) {
  const std::string kind = spec.substr(0, spec.find('@'));
  return kind == "sigma_x" || kind == "sigma_y" || kind == "sigma_z" ||
         kind == "tau_x" || kind == "tau_y" || kind == "tau_z";
}

StateVector state_from_spec(const SpacePtr& space, const std::string& spec) {
  std::vector<int> occ(static_cast<std::size_t>(space->n_sites()), 0);
  const auto set_qubits_down = [&] {
    for (int s = 0; s < space->n_sites(); ++s)
      if (space->site(s).kind == SiteKind::Qubit) occ[static_cast<std::size_t>(s)] = 1;
  };

  if (spec == "all_up") return basis_state(space, occ);
  if (spec == "all_down") {
    set_qubits_down();
    return basis_state(space, occ);
  }
  if (spec == "neel") {
    int next = 0;
    bool any = false;
    for (int s = 0; s < space->n_sites(); ++s)
      if (space->site(s).kind == SiteKind::Qubit) {
        occ[static_cast<std::size_t>(s)] = next;
        next ^= 1;
        any = true;
      }
    if (!any) throw std::invalid_argument("state spec: neel needs qubit sites");
    return basis_state(space, occ);
  }
  if (spec.rfind("one_photon@", 0) == 0) {
    set_qubits_down();
    const std::string site_s = spec.substr(11);
    std::size_t used = 0;
    int site = 0;
    try {
      site = std::stoi(site_s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != site_s.size() || site < 0 || site >= space->n_sites() ||
        space->site(site).kind != SiteKind::Boson)
      throw std::invalid_argument("state spec: bad boson site in \"" + spec + "\"");
    occ[static_cast<std::size_t>(site)] = 1;
    return basis_state(space, occ);
  }
  if (spec.rfind("basis:", 0) == 0) {
    occ.clear();
    std::stringstream ss(spec.substr(6));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw std::invalid_argument("state spec: bad occupation \"" + tok + "\"");
      occ.push_back(v);
    }
    if (static_cast<int>(occ.size()) != space->n_sites())
      throw std::invalid_argument("state spec: need one occupation per site");
    return basis_state(space, occ);
  }
  throw std::invalid_argument("state spec: unknown form \"" + spec + "\"");
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  int threads = cfg.threads;
  if (threads <= 0) {
    threads = 0;
    if (const char* env = std::getenv("OTO_CLOCK_THREADS")) threads = std::atoi(env);
  }
  kernels::set_max_threads(std::max(threads, 0));

  switch (cfg.experiment) {
    case ExperimentKind::Oracle: return run_oracle(cfg);
    case ExperimentKind::Protocol: return run_protocol(cfg);
    case ExperimentKind::SwitchSweep: return run_switch_sweep(cfg);
    case ExperimentKind::PulseSweep: return run_pulse_sweep(cfg);
    case ExperimentKind::Spectra: return run_spectra(cfg);
    case ExperimentKind::RingCheck: return run_ring_check(cfg);
    case ExperimentKind::Loschmidt: return run_loschmidt(cfg);
  }
  throw std::logic_error("run_experiment: bad experiment kind");
}

std::string run_and_write(const ExperimentConfig& cfg) {
  const RunResult res = run_experiment(cfg);
  const std::string body =
      cfg.format == "json" ? res.meta.dump(2) + "\n" : res.table;
  if (cfg.out.empty()) {
    std::cout << body;
    return {};
  }
  std::ofstream out(cfg.out);
  if (!out) throw std::runtime_error("runner: cannot write \"" + cfg.out + "\"");
  out << body;
  return cfg.out;
}

}  // namespace otoclock
