#include "otoclock/config.hpp"

#include <fstream>
#include <stdexcept>

namespace otoclock {

namespace {

using nlohmann::json;

void require_known_keys(const json& j, const std::vector<std::string>& known,
                        const std::string& where) {
  if (!j.is_object())
    throw std::invalid_argument("config: " + where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw std::invalid_argument("config: unknown key \"" + it.key() + "\" in " + where);
  }
}

DisorderSpec disorder_from_json(const json& j) {
  require_known_keys(j, {"dist", "a", "b", "target", "seed"}, "disorder");
  DisorderSpec d;
  const std::string dist = j.value("dist", std::string("uniform"));
  if (dist == "uniform")
    d.dist = DisorderSpec::Dist::Uniform;
  else if (dist == "gaussian")
    d.dist = DisorderSpec::Dist::Gaussian;
  else
    throw std::invalid_argument("config: disorder dist must be uniform or gaussian");
  const std::string target = j.value("target", std::string("field_h"));
  if (target == "g_site")
    d.target = DisorderSpec::Target::GSite;
  else if (target == "field_h")
    d.target = DisorderSpec::Target::FieldH;
  else
    throw std::invalid_argument("config: disorder target must be g_site or field_h");
  d.a = j.value("a", d.a);
  d.b = j.value("b", d.b);
  d.seed = j.value("seed", d.seed);
  return d;
}

json disorder_to_json(const DisorderSpec& d) {
  return json{
      {"dist", d.dist == DisorderSpec::Dist::Uniform ? "uniform" : "gaussian"},
      {"a", d.a},
      {"b", d.b},
      {"target", d.target == DisorderSpec::Target::GSite ? "g_site" : "field_h"},
      {"seed", d.seed},
  };
}

PulseErrors pulses_from_json(const json& j) {
  require_known_keys(j, {"hadamard", "flip1", "flip2"}, "pulse_errors");
  PulseErrors p;
  p.hadamard = j.value("hadamard", 0.0);
  p.flip1 = j.value("flip1", 0.0);
  p.flip2 = j.value("flip2", 0.0);
  return p;
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Oracle: return "oracle";
    case ExperimentKind::Protocol: return "protocol";
    case ExperimentKind::SwitchSweep: return "switch_sweep";
    case ExperimentKind::PulseSweep: return "pulse_sweep";
    case ExperimentKind::Spectra: return "spectra";
    case ExperimentKind::RingCheck: return "ring_check";
    case ExperimentKind::Loschmidt: return "loschmidt";
  }
  throw std::logic_error("to_string: bad ExperimentKind");
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::NonlocalMicroscopic: return "nonlocal_microscopic";
    case ModelKind::NonlocalEffective: return "nonlocal_effective";
    case ModelKind::LocalMicroscopic: return "local_microscopic";
    case ModelKind::LocalEffective: return "local_effective";
    case ModelKind::CompleteSecondOrder: return "complete_second_order";
    case ModelKind::HeisenbergChain: return "heisenberg_chain";
  }
  throw std::logic_error("to_string: bad ModelKind");
}

ExperimentKind experiment_from_string(const std::string& s) {
  for (auto k : {ExperimentKind::Oracle, ExperimentKind::Protocol,
                 ExperimentKind::SwitchSweep, ExperimentKind::PulseSweep,
                 ExperimentKind::Spectra, ExperimentKind::RingCheck,
                 ExperimentKind::Loschmidt})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("config: unknown experiment \"" + s + "\"");
}

ModelKind model_from_string(const std::string& s) {
  for (auto k : {ModelKind::NonlocalMicroscopic, ModelKind::NonlocalEffective,
                 ModelKind::LocalMicroscopic, ModelKind::LocalEffective,
                 ModelKind::CompleteSecondOrder, ModelKind::HeisenbergChain})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("config: unknown model \"" + s + "\"");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  require_known_keys(
      j,
      {"experiment",     "model",          "params",        "heisenberg_l",
       "fields",         "use_disorder",   "disorder",      "o1",
       "o2",             "initial_state",  "perturbation",  "perturbation_scale",
       "times",          "deltas",         "n_samples",     "beta",
       "pulse_errors",   "pulse_scale",    "n_pulse_draws", "clock_sector",
       "effective_order", "include_zz",    "frame",         "seed",
       "threads",        "out",            "format"},
      "top level");

  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = experiment_from_string(j.at("experiment"));
  if (j.contains("model")) c.model = model_from_string(j.at("model"));
  if (j.contains("params")) c.params = j.at("params").get<ModelParams>();
  c.heisenberg_l = j.value("heisenberg_l", c.heisenberg_l);
  c.fields = j.value("fields", c.fields);
  c.use_disorder = j.value("use_disorder", c.use_disorder);
  if (j.contains("disorder")) c.disorder = disorder_from_json(j.at("disorder"));
  c.o1 = j.value("o1", c.o1);
  c.o2 = j.value("o2", c.o2);
  c.initial_state = j.value("initial_state", c.initial_state);
  c.perturbation = j.value("perturbation", c.perturbation);
  c.perturbation_scale = j.value("perturbation_scale", c.perturbation_scale);
  c.times = j.value("times", c.times);
  c.deltas = j.value("deltas", c.deltas);
  c.n_samples = j.value("n_samples", c.n_samples);
  c.beta = j.value("beta", c.beta);
  if (j.contains("pulse_errors")) c.pulses = pulses_from_json(j.at("pulse_errors"));
  c.pulse_scale = j.value("pulse_scale", c.pulse_scale);
  c.n_pulse_draws = j.value("n_pulse_draws", c.n_pulse_draws);
  c.clock_sector = j.value("clock_sector", c.clock_sector);
  c.effective_order = j.value("effective_order", c.effective_order);
  c.include_zz = j.value("include_zz", c.include_zz);
  c.frame = j.value("frame", c.frame);
  if (c.frame != "lab" && c.frame != "rotating")
    throw std::invalid_argument("config: frame must be lab or rotating");
  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);
  c.out = j.value("out", c.out);
  c.format = j.value("format", c.format);
  if (c.format != "csv" && c.format != "json")
    throw std::invalid_argument("config: format must be csv or json");
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  json p;
  to_json(p, c.params);
  return json{
      {"experiment", to_string(c.experiment)},
      {"model", to_string(c.model)},
      {"params", p},
      {"heisenberg_l", c.heisenberg_l},
      {"fields", c.fields},
      {"use_disorder", c.use_disorder},
      {"disorder", disorder_to_json(c.disorder)},
      {"o1", c.o1},
      {"o2", c.o2},
      {"initial_state", c.initial_state},
      {"perturbation", c.perturbation},
      {"perturbation_scale", c.perturbation_scale},
      {"times", c.times},
      {"deltas", c.deltas},
      {"n_samples", c.n_samples},
      {"beta", c.beta},
      {"pulse_errors",
       json{{"hadamard", c.pulses.hadamard}, {"flip1", c.pulses.flip1}, {"flip2", c.pulses.flip2}}},
      {"pulse_scale", c.pulse_scale},
      {"n_pulse_draws", c.n_pulse_draws},
      {"clock_sector", c.clock_sector},
      {"effective_order", c.effective_order},
      {"include_zz", c.include_zz},
      {"frame", c.frame},
      {"seed", c.seed},
      {"threads", c.threads},
      {"out", c.out},
      {"format", c.format},
  };
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  // FNV-1a over the canonical dump; nlohmann objects iterate in key order,
  // so the dump is stable.  Execution knobs that cannot change the numbers
  // (thread count, output destination and encoding) are dropped so the same
  // experiment always stamps the same hash.
  json j = config_to_json(c);
  j.erase("threads");
  j.erase("out");
  j.erase("format");
  const std::string dump = j.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: parse error in \"" + path + "\": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace otoclock
