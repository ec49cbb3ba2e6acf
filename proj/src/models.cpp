#include "otoclock/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otoclock/rng.hpp"

namespace otoclock {

void to_json(nlohmann::json& j, const ModelParams& p) {
  j = nlohmann::json{{"omega_a", p.omega_a}, {"omega_b", p.omega_b},
                     {"epsilon", p.epsilon}, {"eta", p.eta},
                     {"chi", p.chi},         {"g_a", p.g_a},
                     {"g_site", p.g_site},   {"n", p.n},
                     {"n_max", p.n_max},     {"hardcore", p.hardcore},
                     {"periodic", p.periodic}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
  static const std::vector<std::string> known = {
      "omega_a", "omega_b", "epsilon", "eta",      "chi",     "g_a",
      "g_site",  "n",       "n_max",   "hardcore", "periodic"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("ModelParams: unknown key '" + key + "'");
  }
  p.omega_a = j.value("omega_a", p.omega_a);
  p.omega_b = j.value("omega_b", p.omega_b);
  p.epsilon = j.value("epsilon", p.epsilon);
  p.eta = j.value("eta", p.eta);
  p.chi = j.value("chi", p.chi);
  p.g_a = j.value("g_a", p.g_a);
  p.g_site = j.value("g_site", p.g_site);
  p.n = j.value("n", p.n);
  p.n_max = j.value("n_max", p.n_max);
  p.hardcore = j.value("hardcore", p.hardcore);
  p.periodic = j.value("periodic", p.periodic);
}

double delta_b(const ModelParams& p) { return p.epsilon - p.omega_b; }
double delta_a(const ModelParams& p) { return p.epsilon - p.omega_a; }

double detuning_nonlocal(const ModelParams& p, int n_a) {
  return delta_b(p) - p.eta * n_a;
}

double detuning_local(const ModelParams& p, int n_a) {
  return delta_b(p) + 2.0 * p.chi * n_a;
}

namespace {

int cavity_cutoff(const ModelParams& p) { return p.hardcore ? 1 : p.n_max; }

void require_sector_detuning(double d, const char* model) {
  if (d == 0.0)
    throw std::domain_error(std::string(model) + ": sector detuning vanishes");
}

// local lattice bookkeeping: N cavities, bonds between k and (k+1)%N
struct LocalLattice {
  int n_cav;
  int n_bond;
  bool periodic;
  int left(int bond) const { return bond; }
  int right(int bond) const { return (bond + 1) % n_cav; }
};

LocalLattice local_lattice(const ModelParams& p) {
  if (p.n < 2) throw std::invalid_argument("local model: need at least 2 cavities");
  if (p.periodic && p.n < 3)
    throw std::invalid_argument("local model: a ring needs at least 3 cavities");
  return {p.n, p.periodic ? p.n : p.n - 1, p.periodic};
}

const std::vector<double>& local_couplings(const ModelParams& p, const LocalLattice& lat) {
  if (static_cast<int>(p.g_site.size()) != lat.n_bond)
    throw std::invalid_argument("local model: g_site must have one entry per bond");
  return p.g_site;
}

LocalKind clock_proj(int n_a) { return n_a == 0 ? LocalKind::Proj0 : LocalKind::Proj1; }

}  // namespace

Operator build_nonlocal_microscopic(const ModelParams& p) {
  if (p.n < 1) throw std::invalid_argument("nonlocal model: need at least 1 qubit");
  if (static_cast<int>(p.g_site.size()) != p.n)
    throw std::invalid_argument("nonlocal model: g_site must have one entry per qubit");
  if (p.n_max < 1) throw std::invalid_argument("nonlocal model: coupler cutoff must be >= 1");

  std::vector<SiteSpec> sites;
  sites.push_back(boson_site(p.n_max));  // coupler b
  for (int j = 0; j < p.n; ++j) sites.push_back(qubit_site());
  sites.push_back(clock_site());
  auto space = make_space(std::move(sites));
  const int coupler = 0;
  const int clk = p.n + 1;
  auto qb = [](int j) { return 1 + j; };

  std::vector<ProductTerm> terms;
  terms.push_back({p.omega_a, {{clk, LocalKind::N}}});
  terms.push_back({p.omega_b, {{coupler, LocalKind::N}}});
  terms.push_back({p.eta, {{clk, LocalKind::N}, {coupler, LocalKind::N}}});
  for (int j = 0; j < p.n; ++j) {
    terms.push_back({0.5 * p.epsilon, {{qb(j), LocalKind::SigmaZ}}});
    terms.push_back({p.g_site[j], {{qb(j), LocalKind::SigmaPlus}, {coupler, LocalKind::A}}});
    terms.push_back({p.g_site[j], {{qb(j), LocalKind::SigmaMinus}, {coupler, LocalKind::Adag}}});
  }
  return compose(space, terms, true);
}

Operator build_nonlocal_effective(const ModelParams& p, bool include_zz, Frame frame) {
  if (p.n < 1) throw std::invalid_argument("nonlocal model: need at least 1 qubit");
  if (static_cast<int>(p.g_site.size()) != p.n)
    throw std::invalid_argument("nonlocal model: g_site must have one entry per qubit");

  std::vector<SiteSpec> sites;
  for (int j = 0; j < p.n; ++j) sites.push_back(qubit_site());
  sites.push_back(clock_site());
  auto space = make_space(std::move(sites));
  const int clk = p.n;
  const auto& g = p.g_site;

  std::vector<ProductTerm> terms;
  if (frame == Frame::Lab) {
    terms.push_back({p.omega_a, {{clk, LocalKind::N}}});
    for (int j = 0; j < p.n; ++j)
      terms.push_back({0.5 * p.epsilon, {{j, LocalKind::SigmaZ}}});
  }
  for (int n_a = 0; n_a <= 1; ++n_a) {
    const double d = detuning_nonlocal(p, n_a);
    require_sector_detuning(d, "nonlocal effective");
    const auto pr = clock_proj(n_a);
    for (int j = 0; j < p.n; ++j) {
      // cavity-induced Lamb shift
      terms.push_back({0.5 * g[j] * g[j] / d, {{j, LocalKind::SigmaZ}, {clk, pr}}});
      for (int k = j + 1; k < p.n; ++k) {
        // coupler-bus flip-flop
        const double J = g[j] * g[k] / d;
        terms.push_back({J, {{j, LocalKind::SigmaPlus}, {k, LocalKind::SigmaMinus}, {clk, pr}}});
        terms.push_back({J, {{j, LocalKind::SigmaMinus}, {k, LocalKind::SigmaPlus}, {clk, pr}}});
        if (include_zz) {
          const double z = 2.0 * g[j] * g[j] * g[k] * g[k] / (d * d * d);
          terms.push_back({z, {{j, LocalKind::SigmaZ}, {k, LocalKind::SigmaZ}, {clk, pr}}});
        }
      }
    }
  }
  return compose(space, terms, true);
}

Operator build_local_microscopic(const ModelParams& p) {
  const auto lat = local_lattice(p);
  const auto& g = local_couplings(p, lat);
  const int nc = cavity_cutoff(p);

  std::vector<SiteSpec> sites;
  for (int j = 0; j < lat.n_cav; ++j) sites.push_back(boson_site(nc));
  for (int k = 0; k < lat.n_bond; ++k) sites.push_back(qubit_site());
  sites.push_back(clock_site());
  auto space = make_space(std::move(sites));
  auto qb = [&](int k) { return lat.n_cav + k; };
  const int clk = lat.n_cav + lat.n_bond;

  std::vector<ProductTerm> terms;
  for (int j = 0; j < lat.n_cav; ++j)
    terms.push_back({p.omega_b, {{j, LocalKind::N}}});
  for (int k = 0; k < lat.n_bond; ++k) {
    terms.push_back({0.5 * p.epsilon, {{qb(k), LocalKind::SigmaZ}}});
    // clock-conditioned dispersive shift of every bond qubit
    terms.push_back({p.chi, {{clk, LocalKind::N}, {qb(k), LocalKind::SigmaZ}}});
    for (int j : {lat.left(k), lat.right(k)}) {
      terms.push_back({g[k], {{j, LocalKind::Adag}, {qb(k), LocalKind::SigmaMinus}}});
      terms.push_back({g[k], {{j, LocalKind::A}, {qb(k), LocalKind::SigmaPlus}}});
    }
  }
  return compose(space, terms, true);
}

Operator build_local_effective(const ModelParams& p, int order, Frame frame) {
  if (order != 2 && order != 4)
    throw std::invalid_argument("local effective: order must be 2 or 4");
  const auto lat = local_lattice(p);
  const auto& g = local_couplings(p, lat);
  const int nc = cavity_cutoff(p);

  std::vector<SiteSpec> sites;
  for (int j = 0; j < lat.n_cav; ++j) sites.push_back(boson_site(nc));
  sites.push_back(clock_site());
  auto space = make_space(std::move(sites));
  const int clk = lat.n_cav;

  std::vector<ProductTerm> terms;
  if (frame == Frame::Lab)
    for (int j = 0; j < lat.n_cav; ++j)
      terms.push_back({p.omega_b, {{j, LocalKind::N}}});

  for (int n_a = 0; n_a <= 1; ++n_a) {
    const double d = detuning_local(p, n_a);
    require_sector_detuning(d, "local effective");
    const auto pr = clock_proj(n_a);
    for (int k = 0; k < lat.n_bond; ++k) {
      const int jl = lat.left(k), jr = lat.right(k);
      const double J = g[k] * g[k] / d;
      // qubit-mediated hopping and the accompanying photon shift
      terms.push_back({-J, {{jl, LocalKind::Adag}, {jr, LocalKind::A}, {clk, pr}}});
      terms.push_back({-J, {{jr, LocalKind::Adag}, {jl, LocalKind::A}, {clk, pr}}});
      terms.push_back({-J, {{jl, LocalKind::N}, {clk, pr}}});
      terms.push_back({-J, {{jr, LocalKind::N}, {clk, pr}}});
    }
    if (order == 4) {
      const double d3 = d * d * d;
      for (int k = 0; k < lat.n_bond; ++k) {
        const int jl = lat.left(k), jr = lat.right(k);
        const double u = std::pow(g[k], 4) / d3;
        // neighbor density-density, extra hopping, pair hopping; all from
        // quartic paths that stay on one bond
        terms.push_back({6.0 * u, {{jl, LocalKind::N}, {jr, LocalKind::N}, {clk, pr}}});
        terms.push_back({2.0 * u, {{jl, LocalKind::Adag}, {jr, LocalKind::A}, {clk, pr}}});
        terms.push_back({2.0 * u, {{jr, LocalKind::Adag}, {jl, LocalKind::A}, {clk, pr}}});
        terms.push_back({u,
                         {{jr, LocalKind::Adag}, {jr, LocalKind::Adag},
                          {jl, LocalKind::A}, {jl, LocalKind::A}, {clk, pr}}});
        terms.push_back({u,
                         {{jl, LocalKind::Adag}, {jl, LocalKind::Adag},
                          {jr, LocalKind::A}, {jr, LocalKind::A}, {clk, pr}}});
      }
      // on-site interaction and density shift; edge cavities see one bond
      for (int j = 0; j < lat.n_cav; ++j) {
        double g4 = 0.0;
        int nb = 0;
        for (int k = 0; k < lat.n_bond; ++k)
          if (lat.left(k) == j || lat.right(k) == j) {
            g4 += std::pow(g[k], 4);
            ++nb;
          }
        if (nb == 0) continue;
        g4 /= nb;
        terms.push_back({2.0 * g4 / d3,
                         {{j, LocalKind::Adag}, {j, LocalKind::Adag},
                          {j, LocalKind::A}, {j, LocalKind::A}, {clk, pr}}});
        terms.push_back({8.0 * g4 / d3, {{j, LocalKind::N}, {clk, pr}}});
      }
      // next-nearest hopping through two consecutive bonds
      for (int k = 0; k + 1 < lat.n_bond + (lat.periodic ? 1 : 0); ++k) {
        const int k2 = (k + 1) % lat.n_bond;
        const int ja = lat.left(k), jb = lat.right(k2);
        const double w = g[k] * g[k] * g[k2] * g[k2] / d3;
        terms.push_back({w, {{ja, LocalKind::Adag}, {jb, LocalKind::A}, {clk, pr}}});
        terms.push_back({w, {{jb, LocalKind::Adag}, {ja, LocalKind::A}, {clk, pr}}});
      }
    }
  }
  return compose(space, terms, true);
}

Operator build_complete_second_order(const ModelParams& p) {
  const auto lat = local_lattice(p);
  const auto& g = local_couplings(p, lat);
  const int nc = cavity_cutoff(p);

  std::vector<SiteSpec> sites;
  for (int j = 0; j < lat.n_cav; ++j) sites.push_back(boson_site(nc));
  for (int k = 0; k < lat.n_bond; ++k) sites.push_back(qubit_site());
  sites.push_back(clock_site());
  auto space = make_space(std::move(sites));
  auto qb = [&](int k) { return lat.n_cav + k; };
  const int clk = lat.n_cav + lat.n_bond;

  std::vector<ProductTerm> terms;
  for (int j = 0; j < lat.n_cav; ++j)
    terms.push_back({p.omega_b, {{j, LocalKind::N}}});
  for (int k = 0; k < lat.n_bond; ++k) {
    terms.push_back({0.5 * p.epsilon, {{qb(k), LocalKind::SigmaZ}}});
    terms.push_back({p.chi, {{clk, LocalKind::N}, {qb(k), LocalKind::SigmaZ}}});
  }

  for (int n_a = 0; n_a <= 1; ++n_a) {
    const double d = detuning_local(p, n_a);
    require_sector_detuning(d, "complete second order");
    const auto pr = clock_proj(n_a);
    for (int k = 0; k < lat.n_bond; ++k) {
      const int jl = lat.left(k), jr = lat.right(k);
      const double c = g[k] * g[k] / d;
      // qubit-conditioned hopping between the bond's cavities
      terms.push_back({c, {{jl, LocalKind::Adag}, {jr, LocalKind::A}, {qb(k), LocalKind::SigmaZ}, {clk, pr}}});
      terms.push_back({c, {{jr, LocalKind::Adag}, {jl, LocalKind::A}, {qb(k), LocalKind::SigmaZ}, {clk, pr}}});
      for (int j : {jl, jr}) {
        // photon-number-dependent qubit shift plus the qubit Lamb shift
        // (1 + sigma_z)/2 from each adjacent cavity
        terms.push_back({c, {{j, LocalKind::N}, {qb(k), LocalKind::SigmaZ}, {clk, pr}}});
        terms.push_back({0.5 * c, {{qb(k), LocalKind::SigmaZ}, {clk, pr}}});
        terms.push_back({0.5 * c, {{clk, pr}}});
      }
    }
    // qubit flip-flop through a shared cavity
    const int n_pairs = lat.periodic ? lat.n_bond : lat.n_bond - 1;
    for (int k = 0; k < n_pairs; ++k) {
      const int k2 = (k + 1) % lat.n_bond;
      const double c = g[k] * g[k2] / d;
      terms.push_back({c, {{qb(k), LocalKind::SigmaPlus}, {qb(k2), LocalKind::SigmaMinus}, {clk, pr}}});
      terms.push_back({c, {{qb(k), LocalKind::SigmaMinus}, {qb(k2), LocalKind::SigmaPlus}, {clk, pr}}});
    }
  }
  return compose(space, terms, true);
}

Operator build_disordered_heisenberg(int l, const std::vector<double>& fields) {
  if (l < 2) throw std::invalid_argument("heisenberg chain: need at least 2 sites");
  if (static_cast<int>(fields.size()) != l)
    throw std::invalid_argument("heisenberg chain: need one field per site");
  std::vector<SiteSpec> sites(l, qubit_site());
  auto space = make_space(std::move(sites));

  std::vector<ProductTerm> terms;
  for (int i = 0; i + 1 < l; ++i)
    for (auto kind : {LocalKind::SigmaX, LocalKind::SigmaY, LocalKind::SigmaZ})
      terms.push_back({1.0, {{i, kind}, {i + 1, kind}}});
  for (int i = 0; i < l; ++i)
    terms.push_back({fields[i], {{i, LocalKind::SigmaZ}}});
  return compose(space, terms, true);
}

ModelParams solve_sign_condition(ModelParams p, ConditionModel model) {
  switch (model) {
    case ConditionModel::Nonlocal:
      p.eta = 2.0 * delta_b(p);
      return p;
    case ConditionModel::Local:
      p.chi = -delta_b(p);
      return p;
    case ConditionModel::LocalJC: {
      const double prod = delta_a(p) * delta_b(p);
      if (prod >= 0.0)
        throw std::domain_error(
            "solve_sign_condition: local_jc needs detunings of opposite sign");
      p.g_a = std::sqrt(-prod);
      // chi = g_a^2/delta_a mathematically; store the exact value so the
      // sector antisymmetry of downstream builders is exact too
      p.chi = -delta_b(p);
      return p;
    }
  }
  throw std::invalid_argument("solve_sign_condition: unknown model");
}

std::vector<double> sample_disorder(const DisorderSpec& spec, int count) {
  if (count < 0) throw std::invalid_argument("sample_disorder: negative count");
  std::vector<double> out(count);
  switch (spec.dist) {
    case DisorderSpec::Dist::Uniform:
      if (spec.b < spec.a)
        throw std::invalid_argument("sample_disorder: uniform needs lo <= hi");
      for (int k = 0; k < count; ++k)
        out[k] = rng::uniform(spec.seed, k, spec.a, spec.b);
      return out;
    case DisorderSpec::Dist::Gaussian:
      if (spec.b < 0.0)
        throw std::invalid_argument("sample_disorder: gaussian needs std >= 0");
      for (int k = 0; k < count; ++k)
        out[k] = spec.a + spec.b * rng::gaussian(spec.seed, k);
      return out;
  }
  throw std::invalid_argument("sample_disorder: unknown distribution");
}

}  // namespace otoclock
