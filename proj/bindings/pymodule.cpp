#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsea/dynamics.hpp"
#include "dsea/ensemble.hpp"
#include "dsea/fluct.hpp"
#include "dsea/io.hpp"
#include "dsea/selfcheck.hpp"

namespace py = pybind11;
using namespace dsea;

namespace {

/// Owns the mode table together with the sector that points into it, so
/// python lifetimes stay simple.
struct System {
  System(int dim, double length, double cutoff, const std::vector<Species>& species, int n,
         int boson_dim)
      : modes(std::make_shared<ModeTable>(ModeLattice(dim, length, cutoff),
                                          SpeciesTable(species), DiracAlgebra(dim))),
        space(std::make_shared<StateSpace>(*modes, n, boson_dim)) {}

  std::shared_ptr<ModeTable> modes;
  std::shared_ptr<StateSpace> space;
};

Configuration config_from(const Eigen::MatrixXd& positions, double time) {
  Configuration c;
  c.time = time;
  for (long r = 0; r < positions.rows(); ++r) {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    for (long col = 0; col < std::min<long>(3, positions.cols()); ++col) x(col) = positions(r, col);
    c.positions.push_back(x);
  }
  return c;
}

} // namespace

PYBIND11_MODULE(_diracsea, m) {
  m.doc() = "Dirac-sea pilot-wave numerical laboratory";
  m.attr("__version__") = "1.0.0";

  py::register_exception<near_node_error>(m, "NearNodeError");

  py::class_<Species>(m, "Species")
      .def(py::init([](std::string id, double mass, double charge) {
             return Species{std::move(id), mass, charge};
           }),
           py::arg("id"), py::arg("mass"), py::arg("charge") = 0.0)
      .def_readonly("id", &Species::id)
      .def_readonly("mass", &Species::mass)
      .def_readonly("charge", &Species::charge);

  m.def("standard_model_species", [] { return SpeciesTable::standard_model().entries(); });

  py::class_<QuantumState>(m, "QuantumState")
      .def(py::init<>())
      .def_readwrite("amplitudes", &QuantumState::amplitudes)
      .def_readwrite("time", &QuantumState::time)
      .def("norm", &QuantumState::norm);

  py::class_<OperatorMatrix>(m, "OperatorMatrix")
      .def_property_readonly("dense",
                             [](const OperatorMatrix& op) { return Eigen::MatrixXcd(op.mat); })
      .def_readonly("hermitian", &OperatorMatrix::hermitian);

  py::class_<Region>(m, "Region")
      .def_static("whole", &Region::whole)
      .def_static("interval", &Region::interval)
      .def_static("box", &Region::box)
      .def_static("ball", &Region::ball)
      .def("complemented", &Region::complemented);

  py::class_<InteractionKernel>(m, "InteractionKernel")
      .def(py::init([](const std::string& type, double coupling, int profile_n,
                       double profile_amp, double profile_const, int flip_a, int flip_b) {
             InteractionKernel k;
             if (type == "yukawa")
               k.type = InteractionKernel::Type::yukawa;
             else if (type == "em_like")
               k.type = InteractionKernel::Type::em_like;
             else if (type == "flavor_flip")
               k.type = InteractionKernel::Type::flavor_flip;
             else
               throw std::invalid_argument("unknown kernel type: " + type);
             k.coupling = coupling;
             k.flip_a = flip_a;
             k.flip_b = flip_b;
             k.profile = CosineProfile::cosine(Eigen::Vector3i(profile_n, 0, 0), profile_amp,
                                               profile_const);
             return k;
           }),
           py::arg("type") = "yukawa", py::arg("coupling") = 0.0, py::arg("profile_n") = 1,
           py::arg("profile_amp") = 1.0, py::arg("profile_const") = 0.0, py::arg("flip_a") = 0,
           py::arg("flip_b") = 1);

  py::class_<System>(m, "System")
      .def(py::init<int, double, double, const std::vector<Species>&, int, int>(), py::arg("dim"),
           py::arg("length"), py::arg("cutoff"), py::arg("species"), py::arg("fermion_number"),
           py::arg("boson_dim") = 1)
      .def_property_readonly("mode_count", [](const System& s) { return s.modes->size(); })
      .def_property_readonly("negative_count",
                             [](const System& s) { return s.modes->negative_count(); })
      .def_property_readonly("sector_dim", [](const System& s) { return s.space->sector.dim(); })
      .def_property_readonly("dim", [](const System& s) { return s.space->dim(); })
      .def("mode_momentum",
           [](const System& s, int i) { return (*s.modes)[i].momentum; })
      .def("mode_energy", [](const System& s, int i) { return (*s.modes)[i].energy; })
      .def("mode_is_positive",
           [](const System& s, int i) { return (*s.modes)[i].band == Band::positive; })
      .def("sea_state", [](const System& s) { return dirac_sea_state(*s.space); })
      .def("single_mode_state",
           [](const System& s, const std::vector<int>& modes_idx) {
             QuantumState st;
             st.amplitudes = Eigen::VectorXcd::Zero(s.space->dim());
             const int nb = s.space->boson.dim();
             for (int mi : modes_idx) {
               const int f = s.space->sector.index_of(std::uint64_t{1} << mi);
               if (f < 0) throw std::invalid_argument("mode set does not match the sector");
               st.amplitudes(static_cast<long>(f) * nb) = 1.0;
             }
             st.amplitudes /= st.amplitudes.norm();
             return st;
           })
      .def("free_hamiltonian", [](const System& s) { return build_free_hamiltonian(*s.space); })
      .def("boson_hamiltonian",
           [](const System& s, double omega) { return build_boson_hamiltonian(*s.space, omega); })
      .def("interaction",
           [](const System& s, const InteractionKernel& k) {
             return build_interaction(*s.space, k);
           })
      .def("grid_interaction",
           [](const System& s, const InteractionKernel& k, int grid_n) {
             return build_grid_interaction(*s.space, k, grid_n);
           })
      .def("one_body_operator",
           [](const System& s, const Eigen::MatrixXcd& w) {
             return build_one_body_operator(*s.space, w);
           })
      .def("fermion_number_weights", [](const System& s) {
        return Eigen::MatrixXcd(fermion_number_weights(*s.modes));
      })
      .def("region_number_weights",
           [](const System& s, const Region& r) {
             return Eigen::MatrixXcd(region_number_weights(*s.modes, r));
           })
      .def("density",
           [](const System& s, const QuantumState& st, const Eigen::MatrixXd& x, double t) {
             return density(*s.space, st, config_from(x, t));
           },
           py::arg("state"), py::arg("positions"), py::arg("time") = 0.0)
      .def("velocity",
           [](const System& s, const QuantumState& st, const Eigen::MatrixXd& x, double t) {
             const VelocitySample v = velocity(*s.space, st, config_from(x, t));
             return py::make_tuple(Eigen::MatrixXd(v.v), v.rho);
           },
           py::arg("state"), py::arg("positions"), py::arg("time") = 0.0)
      .def("g_term",
           [](const System& s, const QuantumState& st, const OperatorMatrix& hi,
              const Eigen::MatrixXd& x, double t) {
             return g_term(*s.space, st, hi, config_from(x, t));
           },
           py::arg("state"), py::arg("interaction"), py::arg("positions"), py::arg("time") = 0.0);

  m.def("expectation", &expectation);
  m.def("variance", &variance);
  m.def("commutator_norm", &commutator_norm);

  py::class_<EvolutionPlan, std::shared_ptr<EvolutionPlan>>(m, "EvolutionPlan")
      .def(py::init<OperatorMatrix, int>(), py::arg("hamiltonian"), py::arg("dense_guard") = 4000)
      .def("evolve", &EvolutionPlan::evolve);

  // fluctuation quadratures
  py::class_<FluctuationSpec>(m, "FluctuationSpec")
      .def(py::init([](double cutoff, double radius, double volume,
                       const std::vector<Species>& species, double rel_tol) {
             FluctuationSpec spec;
             spec.cutoff = cutoff;
             spec.radius = radius;
             spec.volume = volume;
             spec.species = species.empty() ? SpeciesTable::standard_model()
                                            : SpeciesTable(species);
             spec.rel_tol = rel_tol;
             return spec;
           }),
           py::arg("cutoff"), py::arg("radius") = 0.0, py::arg("volume") = -1.0,
           py::arg("species") = std::vector<Species>{}, py::arg("rel_tol") = 1e-3);

  m.def("n0", &n0);
  m.def("variance_integrand", &variance_integrand);
  m.def("variance_quadrature",
        [](const FluctuationSpec& spec) { return py::module_::import("json").attr("loads")(to_json(variance_quadrature(spec))); });
  m.def("variance_asymptotic",
        [](const FluctuationSpec& spec) { return py::module_::import("json").attr("loads")(to_json(variance_asymptotic(spec))); });
  m.def("macro_statistics", &macro_statistics, py::arg("spec"), py::arg("particles"),
        py::arg("inside") = true);
  m.def("distinguishability_radius", &distinguishability_radius);

  m.def("selfcheck", [] {
    py::list out;
    for (const auto& r : run_selfchecks())
      out.append(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });
}
