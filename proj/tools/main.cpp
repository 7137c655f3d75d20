#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsea/dynamics.hpp"
#include "dsea/ensemble.hpp"
#include "dsea/fluct.hpp"
#include "dsea/io.hpp"
#include "dsea/selfcheck.hpp"

using nlohmann::json;
using namespace dsea;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& j, const std::string& where,
                  const std::vector<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

SpeciesTable species_from(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "standard_model") return SpeciesTable::standard_model();
    if (name == "single") return SpeciesTable::single(0.0);
    throw ConfigError("species: unknown preset '" + name + "'");
  }
  if (j.is_array()) {
    std::vector<Species> entries;
    for (const auto& e : j) {
      require_keys(e, "species entry", {"id", "mass", "charge"});
      entries.push_back({e.at("id").get<std::string>(), e.at("mass").get<double>(),
                         e.value("charge", 0.0)});
    }
    return SpeciesTable(std::move(entries));
  }
  throw ConfigError("species: expected preset name or array");
}

FluctuationSpec fluct_spec_from(const json& j) {
  require_keys(j, "fluct",
               {"cutoff", "radius", "volume", "species", "rel_tol", "mode", "radii"});
  FluctuationSpec spec;
  spec.cutoff = j.at("cutoff").get<double>();
  spec.radius = j.value("radius", 0.0);
  spec.volume = j.value("volume", -1.0);
  spec.rel_tol = j.value("rel_tol", 1e-3);
  spec.species = j.contains("species") ? species_from(j.at("species"))
                                       : SpeciesTable::standard_model();
  return spec;
}

struct Scenario {
  // the sector holds a pointer into the mode table, so both live on the heap
  std::shared_ptr<ModeTable> modes;
  std::shared_ptr<StateSpace> space;
  std::shared_ptr<const EvolutionPlan> plan;
  QuantumState state;
  OperatorMatrix interaction;

  const ModeLattice& lattice() const { return modes->lattice(); }
};

InteractionKernel kernel_from(const json& j) {
  require_keys(j, "kernel", {"type", "coupling", "flip_a", "flip_b", "profile_n", "profile_amp",
                             "profile_const"});
  InteractionKernel k;
  const std::string type = j.value("type", "yukawa");
  if (type == "yukawa")
    k.type = InteractionKernel::Type::yukawa;
  else if (type == "em_like")
    k.type = InteractionKernel::Type::em_like;
  else if (type == "flavor_flip")
    k.type = InteractionKernel::Type::flavor_flip;
  else
    throw ConfigError("kernel.type: unknown '" + type + "'");
  k.coupling = j.value("coupling", 0.0);
  k.flip_a = j.value("flip_a", 0);
  k.flip_b = j.value("flip_b", 1);
  k.profile = CosineProfile::cosine(Eigen::Vector3i(j.value("profile_n", 1), 0, 0),
                                    j.value("profile_amp", 1.0), j.value("profile_const", 0.0));
  return k;
}

Scenario scenario_from(const json& j) {
  require_keys(j, "scenario",
               {"lattice", "species", "sector_n", "boson_dim", "kernel", "omega", "state",
                "trajectories", "t_end", "step", "slices", "bins", "mode", "jump_grid",
                "missample", "c1_squared", "time"});
  const json& jl = j.at("lattice");
  require_keys(jl, "lattice", {"dim", "length", "cutoff"});
  ModeLattice lattice(jl.value("dim", 1), jl.at("length").get<double>(),
                      jl.at("cutoff").get<double>());
  SpeciesTable species =
      j.contains("species") ? species_from(j.at("species")) : SpeciesTable::single(1.0);
  DiracAlgebra algebra(lattice.dim());
  auto modes_ptr = std::make_shared<ModeTable>(lattice, species, algebra);
  ModeTable& modes = *modes_ptr;
  const int n = j.value("sector_n", 1);
  auto space_ptr = std::make_shared<StateSpace>(modes, n, j.value("boson_dim", 1));
  StateSpace& space = *space_ptr;

  OperatorMatrix h = build_free_hamiltonian(space);
  OperatorMatrix hi;
  hi.mat.resize(space.dim(), space.dim());
  hi.hermitian = true;
  if (j.contains("kernel")) {
    hi = build_interaction(space, kernel_from(j.at("kernel")));
    h.mat = SparseC(h.mat + hi.mat);
  }
  if (j.contains("omega")) {
    h.mat = SparseC(h.mat + build_boson_hamiltonian(space, j.at("omega").get<double>()).mat);
  }
  h.hermitian = true;

  QuantumState state;
  const json& js = j.value("state", json("sea"));
  if (js.is_string() && js.get<std::string>() == "sea") {
    state = dirac_sea_state(space);
  } else {
    require_keys(js, "state", {"kind", "modes", "center", "width", "momentum"});
    const std::string kind = js.at("kind").get<std::string>();
    if (n != 1) throw ConfigError("state presets other than 'sea' require sector_n = 1");
    state.amplitudes = Eigen::VectorXcd::Zero(space.dim());
    const int nb = space.boson.dim();
    if (kind == "superposition") {
      for (int m : js.at("modes").get<std::vector<int>>()) {
        if (m < 0 || m >= modes.size()) throw ConfigError("state.modes: index out of range");
        const std::uint64_t mask = std::uint64_t{1} << m;
        state.amplitudes(static_cast<long>(space.sector.index_of(mask)) * nb) = 1.0;
      }
    } else if (kind == "packet") {
      const double x0 = js.value("center", lattice.length() / 2);
      const double width = js.value("width", 2.0);
      const double p0 = js.value("momentum", 0.0);
      for (int m = 0; m < modes.size(); ++m) {
        if (modes[m].band != Band::positive) continue;
        const double p = modes[m].momentum(0);
        const cplx c = std::exp(cplx(-(p - p0) * (p - p0) / (2 * width * width), -p * x0));
        const std::uint64_t mask = std::uint64_t{1} << m;
        state.amplitudes(static_cast<long>(space.sector.index_of(mask)) * nb) = c;
      }
    } else {
      throw ConfigError("state.kind: unknown '" + kind + "'");
    }
    state.amplitudes /= state.amplitudes.norm();
  }

  return Scenario{std::move(modes_ptr), std::move(space_ptr),
                  std::make_shared<EvolutionPlan>(std::move(h)), std::move(state),
                  std::move(hi)};
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

json provenance(const json& config, std::uint64_t seed) {
  json p;
  p["config"] = config;
  p["config_hash"] = fnv1a(config.dump());
  p["seed"] = seed;
  p["version"] = "1.0.0";
  return p;
}

int cmd_fluct(const json& config, const std::string& out_dir, const std::string& format) {
  FluctuationSpec spec = fluct_spec_from(config);
  const std::string mode = config.value("mode", "quadrature");
  FluctuationResult result =
      (mode == "asymptotic") ? variance_asymptotic(spec) : variance_quadrature(spec);
  json j = json::parse(to_json(result));
  j["distinguishability_radius_graphite"] = distinguishability_radius(4.2e30, spec.cutoff);
  j["provenance"] = provenance(config, 0);
  j["provenance"]["mode"] = mode;
  atomic_write(out_path(out_dir, format == "csv" ? "fluct.csv" : "fluct.json"),
               format == "csv" ? fluct_csv({result}, {{spec.radius, spec.cutoff}}) : j.dump(2));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_fluct_sweep(const json& config, const std::string& out_dir) {
  FluctuationSpec base = fluct_spec_from(config);
  if (!config.contains("radii")) throw ConfigError("fluct-sweep: missing 'radii' array");
  std::vector<FluctuationResult> rows;
  std::vector<std::pair<double, double>> keys;
  for (double b : config.at("radii").get<std::vector<double>>()) {
    FluctuationSpec spec = base;
    spec.radius = b;
    spec.volume = -1;
    rows.push_back(variance_quadrature(spec));
    keys.emplace_back(b, spec.cutoff);
  }
  std::string csv = "# config_hash=" + std::to_string(fnv1a(config.dump())) + "\n" +
                    fluct_csv(rows, keys);
  atomic_write(out_path(out_dir, "fluct_sweep.csv"), csv);
  std::cout << csv;
  return 0;
}

int cmd_evolve(const json& config, const std::string& out_dir) {
  Scenario sc = scenario_from(config);
  const double t = config.value("time", 1.0);
  const QuantumState evolved = sc.plan->evolve(sc.state, t);
  atomic_write(out_path(out_dir, "state.json"), serialize_state(evolved));

  if (sc.lattice().dim() == 1 && (*sc.space).sector.fermion_number() == 1) {
    const int grid = 4 * (2 * sc.lattice().max_index() + 1);
    std::ostringstream csv;
    csv << "# config_hash=" << fnv1a(config.dump()) << "\n";
    csv << "x,rho,v,g\n";
    csv.precision(12);
    for (int i = 0; i < grid; ++i) {
      Configuration c;
      c.positions = {Eigen::Vector3d(i * sc.lattice().length() / grid, 0, 0)};
      c.time = evolved.time;
      const double rho = density(*sc.space, evolved, c);
      double v = 0;
      try {
        v = velocity(*sc.space, evolved, c).v(0, 0);
      } catch (const near_node_error&) {
      }
      const double g = g_term(*sc.space, evolved, sc.interaction, c);
      csv << c.positions[0](0) << "," << rho << "," << v << "," << g << "\n";
    }
    atomic_write(out_path(out_dir, "fields.csv"), csv.str());
  }
  std::cout << "evolved to t=" << evolved.time << ", norm=" << evolved.norm() << "\n";
  return 0;
}

int cmd_ensemble(const json& config, const std::string& out_dir, std::uint64_t seed, int workers) {
  Scenario sc = scenario_from(config);
  EnsembleOptions opt;
  opt.trajectories = config.value("trajectories", 1000);
  opt.seed = seed;
  opt.t_end = config.value("t_end", 1.0);
  opt.step = config.value("step", 1e-2);
  opt.slices = config.value("slices", 10);
  opt.bins = config.value("bins", 50);
  opt.workers = workers;
  opt.jump_mode = config.value("mode", "deterministic") == "jump";
  opt.jump_grid = config.value("jump_grid", 32);
  opt.missample_uniform = config.value("missample", false);
  const EnsembleResult result = run_ensemble(*sc.space, sc.plan, sc.state, opt);

  json j = json::parse(to_json(result.report));
  j["aborted"] = result.aborted_count;
  j["provenance"] = provenance(config, seed);
  atomic_write(out_path(out_dir, "equilibrium.json"), j.dump(2));
  atomic_write(out_path(out_dir, "trajectories.csv"), trajectories_csv(result));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_measure(const json& config, const std::string& out_dir, std::uint64_t seed) {
  json cfg = config;
  if (!cfg.contains("state")) cfg["state"] = {{"kind", "packet"}};
  Scenario sc = scenario_from(cfg);
  const double c1sq = config.value("c1_squared", 0.5);
  const int n_traj = config.value("trajectories", 10000);
  const double L = sc.lattice().length();

  auto packet = [&](double center) {
    QuantumState s;
    s.amplitudes = Eigen::VectorXcd::Zero((*sc.space).dim());
    const int nb = (*sc.space).boson.dim();
    for (int m = 0; m < (*sc.modes).size(); ++m) {
      if ((*sc.modes)[m].band != Band::positive) continue;
      const double p = (*sc.modes)[m].momentum(0);
      const double w = sc.lattice().cutoff() / 3.0;
      const std::uint64_t mask = std::uint64_t{1} << m;
      s.amplitudes(static_cast<long>((*sc.space).sector.index_of(mask)) * nb) =
          std::exp(cplx(-p * p / (2 * w * w), -p * center));
    }
    s.amplitudes /= s.amplitudes.norm();
    return s;
  };
  const MeasurementReport report =
      measurement_scenario(*sc.space, packet(L / 4), packet(3 * L / 4), std::sqrt(c1sq),
                           std::sqrt(1 - c1sq), n_traj, seed);
  json j = json::parse(to_json(report));
  j["provenance"] = provenance(config, seed);
  atomic_write(out_path(out_dir, "measure.json"), j.dump(2));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_check() {
  const std::vector<CheckResult> results = run_selfchecks();
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all = all && r.passed;
  }
  std::cout << (all ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-sea pilot-wave numerical laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir = "out", format = "json";
  std::uint64_t seed = 1;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  app.add_option("--config", config_path, "Path to the JSON scenario config");
  app.add_option("--seed", seed, "Master RNG seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--workers", workers, "Worker thread count");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* fluct = app.add_subcommand("fluct", "Vacuum fluctuation quadratures");
  auto* sweep = app.add_subcommand("fluct-sweep", "Fluctuation sweep over radii");
  auto* evolve = app.add_subcommand("evolve", "Evolve a state and export grid fields");
  auto* ensemble = app.add_subcommand("ensemble", "Trajectory ensemble and TV report");
  auto* measure = app.add_subcommand("measure", "Two-branch effective-collapse scenario");
  auto* check = app.add_subcommand("check", "Run the invariant self-check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check();
    if (config_path.empty()) throw ConfigError("--config is required for this subcommand");
    const json config = load_config(config_path);
    if (fluct->parsed()) return cmd_fluct(config, out_dir, format);
    if (sweep->parsed()) return cmd_fluct_sweep(config, out_dir);
    if (evolve->parsed()) return cmd_evolve(config, out_dir);
    if (ensemble->parsed()) return cmd_ensemble(config, out_dir, seed, workers);
    if (measure->parsed()) return cmd_measure(config, out_dir, seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
