#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "otoclock/config.hpp"
#include "otoclock/hilbert.hpp"
#include "otoclock/presets.hpp"
#include "otoclock/runner.hpp"

namespace {

using namespace otoclock;

}  // namespace

TEST_CASE("experiment and model names round-trip") {
  for (auto k : {ExperimentKind::Oracle, ExperimentKind::Protocol,
                 ExperimentKind::SwitchSweep, ExperimentKind::PulseSweep,
                 ExperimentKind::Spectra, ExperimentKind::RingCheck,
                 ExperimentKind::Loschmidt})
    CHECK(experiment_from_string(to_string(k)) == k);
  for (auto m : {ModelKind::NonlocalMicroscopic, ModelKind::NonlocalEffective,
                 ModelKind::LocalMicroscopic, ModelKind::LocalEffective,
                 ModelKind::CompleteSecondOrder, ModelKind::HeisenbergChain})
    CHECK(model_from_string(to_string(m)) == m);
  CHECK_THROWS((void)experiment_from_string("frobnicate"));
  CHECK_THROWS((void)model_from_string(""));
}

TEST_CASE("config JSON is strict and round-trips through the hash") {
  const ExperimentConfig base = preset_config("chain");
  const nlohmann::json j = config_to_json(base);
  const ExperimentConfig back = config_from_json(j);
  CHECK(config_hash(back) == config_hash(base));
  CHECK(back.o2 == base.o2);
  CHECK(back.deltas == base.deltas);

  ExperimentConfig tweaked = base;
  tweaked.seed += 1;
  CHECK(config_hash(tweaked) != config_hash(base));

  // the hash fingerprints the experiment, not how it was executed or where
  // the table went
  ExperimentConfig ex = base;
  ex.threads = 7;
  ex.out = "elsewhere.csv";
  ex.format = "json";
  CHECK(config_hash(ex) == config_hash(base));

  nlohmann::json bad = j;
  bad["tempo"] = 1.0;
  CHECK_THROWS((void)config_from_json(bad));

  nlohmann::json bad_nested = j;
  bad_nested["params"]["omega_q"] = 1.0;
  CHECK_THROWS((void)config_from_json(bad_nested));

  nlohmann::json bad_frame = j;
  bad_frame["frame"] = "galilean";
  CHECK_THROWS((void)config_from_json(bad_frame));

  nlohmann::json bad_format = j;
  bad_format["format"] = "xml";
  CHECK_THROWS((void)config_from_json(bad_format));
}

TEST_CASE("config files load from disk") {
  const ExperimentConfig base = preset_config("dimer");
  const std::string path = "cfg_roundtrip_test.json";
  {
    std::ofstream f(path);
    f << config_to_json(base).dump(2);
  }
  const ExperimentConfig loaded = load_config_file(path);
  CHECK(config_hash(loaded) == config_hash(base));
  std::remove(path.c_str());

  CHECK_THROWS((void)load_config_file("no_such_file_zzz.json"));
}

TEST_CASE("presets exist and carry coherent settings") {
  const auto list = preset_list();
  REQUIRE(list.size() >= 3);
  for (const char* name : {"dimer", "ring", "chain"}) {
    CHECK_NOTHROW((void)preset_config(name));
    bool found = false;
    for (const auto& e : list) found = found || e.name == name;
    CHECK(found);
  }
  CHECK_THROWS((void)preset_config("nope"));

  const ExperimentConfig ring = preset_config("ring");
  CHECK(ring.experiment == ExperimentKind::RingCheck);
  CHECK(ring.params.periodic);
  CHECK(ring.params.n == 3);
  // the sign condition is baked in: chi = -(epsilon - omega_b)
  CHECK(ring.params.chi == -(ring.params.epsilon - ring.params.omega_b));

  const ExperimentConfig chain = preset_config("chain");
  CHECK(chain.experiment == ExperimentKind::SwitchSweep);
  CHECK(chain.model == ModelKind::HeisenbergChain);
  CHECK(chain.use_disorder);
  CHECK(chain.times.size() == 2);
  CHECK(chain.deltas.size() == 3);
}

TEST_CASE("operator specs parse and validate") {
  auto sp = make_space({qubit_site(), qubit_site(), qubit_site()});
  const Operator sz1 = operator_from_spec(sp, "sigma_z@1");
  const StateVector dn = basis_state(sp, {0, 1, 0});
  CHECK(expectation(sz1, dn).real() == doctest::Approx(-1.0));

  CHECK(operator_spec_unitary("sigma_x@0"));
  CHECK(operator_spec_unitary("tau_z@0"));
  CHECK_FALSE(operator_spec_unitary("n@0"));
  CHECK_FALSE(operator_spec_unitary("proj0@0"));

  CHECK_THROWS((void)operator_from_spec(sp, "sigma_z"));
  CHECK_THROWS((void)operator_from_spec(sp, "sigma_z@x"));
  CHECK_THROWS((void)operator_from_spec(sp, "warp@0"));
  CHECK_THROWS((void)operator_from_spec(sp, "sigma_z@7"));
  CHECK_THROWS((void)operator_from_spec(sp, "a@1"));  // boson kind on a qubit

  auto bs = make_space({boson_site(2), qubit_site()});
  const Operator num = operator_from_spec(bs, "n@0");
  CHECK(expectation(num, basis_state(bs, {2, 0})).real() == doctest::Approx(2.0));
}

TEST_CASE("state specs produce the advertised occupations") {
  auto sp = make_space({qubit_site(), qubit_site(), qubit_site(), qubit_site()});
  const StateVector neel = state_from_spec(sp, "neel");
  CHECK(std::abs(neel.amp[sp->index_of({0, 1, 0, 1})] - cxd(1.0, 0.0)) < 1e-15);

  const StateVector down = state_from_spec(sp, "all_down");
  CHECK(std::abs(down.amp[sp->index_of({1, 1, 1, 1})] - cxd(1.0, 0.0)) < 1e-15);

  const StateVector up = state_from_spec(sp, "all_up");
  CHECK(std::abs(up.amp[sp->index_of({0, 0, 0, 0})] - cxd(1.0, 0.0)) < 1e-15);

  const StateVector basis = state_from_spec(sp, "basis:1,0,1,0");
  CHECK(std::abs(basis.amp[sp->index_of({1, 0, 1, 0})] - cxd(1.0, 0.0)) < 1e-15);

  auto cav = make_space({boson_site(2), boson_site(2)});
  const StateVector photon = state_from_spec(cav, "one_photon@1");
  CHECK(std::abs(photon.amp[cav->index_of({0, 1})] - cxd(1.0, 0.0)) < 1e-15);

  CHECK_THROWS((void)state_from_spec(sp, "vortex"));
  CHECK_THROWS((void)state_from_spec(sp, "basis:1,0"));     // wrong length
  CHECK_THROWS((void)state_from_spec(cav, "neel"));         // no qubits
  CHECK_THROWS((void)state_from_spec(sp, "one_photon@0"));  // no bosons
}

TEST_CASE("experiments render deterministic tables") {
  ExperimentConfig cfg = preset_config("chain");
  cfg.heisenberg_l = 4;
  cfg.o1 = "sigma_z@0";
  cfg.o2 = "sigma_z@2";
  cfg.n_samples = 10;
  cfg.times = {0.5, 1.5};
  cfg.deltas = {0.0, 0.05};

  const RunResult a = run_experiment(cfg);
  const RunResult b = run_experiment(cfg);
  CHECK(a.table == b.table);
  CHECK(a.meta == b.meta);
  CHECK(a.table.find("t,delta,") != std::string::npos);
  // the config hash is stamped into both outputs
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  CHECK(a.table.find(hex) != std::string::npos);
  CHECK(a.meta["config_hash"] == std::string(hex));

  // oracle experiment on the same chain
  cfg.experiment = ExperimentKind::Oracle;
  const RunResult c = run_experiment(cfg);
  CHECK(c.table.find("t,f_re,f_im,f_abs") != std::string::npos);
}
