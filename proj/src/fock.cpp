#include "dsea/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dsea {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 0; i < k; ++i) r *= double(n - i) / double(i + 1);
  return r;
}

constexpr double max_space_dim = 5e6;

int parity_below(std::uint64_t mask, int mode) {
  const std::uint64_t below = mask & ((std::uint64_t{1} << mode) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

} // namespace

FockSector::FockSector(const ModeTable& modes, int n) : modes_(&modes), n_(n) {
  const int m = modes.size();
  if (m > 64) throw std::invalid_argument("mode table exceeds 64 bitmask slots");
  if (n < 0 || n > m) throw std::invalid_argument("fermion number outside [0, modes]");
  const double count = binomial(m, n);
  if (count > max_space_dim)
    throw std::invalid_argument("Fock sector dimension exceeds the 5e6 guard");
  states_.reserve(static_cast<size_t>(count));
  if (n == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack walks the n-bit masks in increasing order.
  std::uint64_t v = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t last = v << (m - n);
  while (true) {
    states_.push_back(v);
    if (v == last) break;
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

int FockSector::index_of(std::uint64_t mask) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), mask);
  if (it == states_.end() || *it != mask) return -1;
  return static_cast<int>(it - states_.begin());
}

BosonSpace::BosonSpace(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("boson dimension must be >= 1");
}

Eigen::MatrixXcd BosonSpace::lowering() const {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int n = 1; n < dim_; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

Eigen::MatrixXcd BosonSpace::coupling() const {
  // dim = 1 means the boson factor is switched off; the coupling then
  // acts as the scalar 1 rather than the (empty) truncated quadrature.
  if (dim_ == 1) return Eigen::MatrixXcd::Identity(1, 1);
  const Eigen::MatrixXcd b = lowering();
  return (b + b.adjoint()) / std::sqrt(2.0);
}

Eigen::MatrixXcd BosonSpace::number() const {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k) n(k, k) = k;
  return n;
}

StateSpace::StateSpace(const ModeTable& modes, int n, int boson_dim)
    : sector(modes, n), boson(boson_dim) {
  if (double(sector.dim()) * boson.dim() > max_space_dim)
    throw std::invalid_argument("state space dimension exceeds the 5e6 guard");
}

SparseC creation_matrix(int mode, const FockSector& from, const FockSector& to) {
  if (to.fermion_number() != from.fermion_number() + 1)
    throw std::invalid_argument("creation requires target sector n+1");
  const std::uint64_t bit = std::uint64_t{1} << mode;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<size_t>(from.dim()));
  for (int s = 0; s < from.dim(); ++s) {
    const std::uint64_t b = from.state(s);
    if (b & bit) continue;
    const int t = to.index_of(b | bit);
    if (t < 0) continue;
    trips.emplace_back(t, s, cplx(parity_below(b, mode)));
  }
  SparseC m(to.dim(), from.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseC annihilation_matrix(int mode, const FockSector& from, const FockSector& to) {
  if (to.fermion_number() != from.fermion_number() - 1)
    throw std::invalid_argument("annihilation requires target sector n-1");
  const std::uint64_t bit = std::uint64_t{1} << mode;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<size_t>(from.dim()));
  for (int s = 0; s < from.dim(); ++s) {
    const std::uint64_t b = from.state(s);
    if (!(b & bit)) continue;
    const int t = to.index_of(b & ~bit);
    if (t < 0) continue;
    trips.emplace_back(t, s, cplx(parity_below(b, mode)));
  }
  SparseC m(to.dim(), from.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseC field_annihilation(const Eigen::Vector3d& x, int species, int spinor_component,
                           const FockSector& from, const FockSector& to) {
  const ModeTable& modes = from.modes();
  SparseC total(to.dim(), from.dim());
  for (int i = 0; i < modes.size(); ++i) {
    if (modes[i].species != species) continue;
    const cplx phi = modes.mode_function(i, x)(spinor_component);
    if (std::abs(phi) == 0.0) continue;
    total += phi * annihilation_matrix(i, from, to);
  }
  return total;
}

bool is_hermitian(const SparseC& m, double tol) {
  if (m.rows() != m.cols()) return false;
  SparseC d = SparseC(m.adjoint()) - m;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseC::InnerIterator it(d, k); it; ++it)
      if (std::abs(it.value()) > tol) return false;
  return true;
}

namespace {

/// sum_ij w_ij a_i^dag a_j on the bare fermionic sector.
SparseC one_body_sector_matrix(const FockSector& sector, const Eigen::MatrixXcd& w) {
  const int nm = sector.modes().size();
  if (w.rows() != nm || w.cols() != nm)
    throw std::invalid_argument("weight matrix does not match the mode table");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int s = 0; s < sector.dim(); ++s) {
    const std::uint64_t b = sector.state(s);
    cplx diag = 0;
    for (int j = 0; j < nm; ++j) {
      if (!(b & (std::uint64_t{1} << j))) continue;
      diag += w(j, j);
      const std::uint64_t without = b & ~(std::uint64_t{1} << j);
      const int sign_j = parity_below(b, j);
      for (int i = 0; i < nm; ++i) {
        if (i == j || std::abs(w(i, j)) == 0.0) continue;
        if (without & (std::uint64_t{1} << i)) continue;
        const int t = sector.index_of(without | (std::uint64_t{1} << i));
        if (t < 0) continue;
        const int sign_i = parity_below(without, i);
        trips.emplace_back(t, s, cplx(sign_i * sign_j) * w(i, j));
      }
    }
    if (std::abs(diag) != 0.0) trips.emplace_back(s, s, diag);
  }
  SparseC m(sector.dim(), sector.dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

/// Kronecker product of a sector-sized sparse matrix with a small dense
/// boson-space matrix, in the idx = f * N_b + xi layout.
SparseC tensor_with_boson(const SparseC& f, const Eigen::MatrixXcd& bos) {
  const int nb = static_cast<int>(bos.rows());
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<size_t>(f.nonZeros()) * nb * nb);
  for (int k = 0; k < f.outerSize(); ++k)
    for (SparseC::InnerIterator it(f, k); it; ++it)
      for (int r = 0; r < nb; ++r)
        for (int c = 0; c < nb; ++c) {
          if (std::abs(bos(r, c)) == 0.0) continue;
          trips.emplace_back(static_cast<int>(it.row()) * nb + r,
                             static_cast<int>(it.col()) * nb + c, it.value() * bos(r, c));
        }
  SparseC m(f.rows() * nb, f.cols() * nb);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseC sector_identity(int dim) {
  SparseC id(dim, dim);
  id.setIdentity();
  return id;
}

OperatorMatrix lift_one_body(const StateSpace& space, const Eigen::MatrixXcd& weights,
                             const Eigen::MatrixXcd& boson_factor, const char* what) {
  if ((weights - weights.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string(what) + ": weight matrix is not Hermitian");
  const SparseC f = one_body_sector_matrix(space.sector, weights);
  OperatorMatrix op;
  op.mat = tensor_with_boson(f, boson_factor);
  op.hermitian = true;
  return op;
}

} // namespace

OperatorMatrix build_one_body_operator(const StateSpace& space, const Eigen::MatrixXcd& weights) {
  return lift_one_body(space, weights, Eigen::MatrixXcd::Identity(space.boson.dim(), space.boson.dim()),
                       "one-body operator");
}

Eigen::MatrixXcd fermion_number_weights(const ModeTable& modes) {
  return Eigen::MatrixXcd::Identity(modes.size(), modes.size());
}

Eigen::MatrixXcd charge_weights(const ModeTable& modes) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes.size(), modes.size());
  for (int i = 0; i < modes.size(); ++i)
    w(i, i) = modes.species()[modes[i].species].charge;
  return w;
}

Eigen::MatrixXcd region_number_weights(const ModeTable& modes, const Region& region) {
  const int n = modes.size();
  const ModeLattice& lattice = modes.lattice();
  const double vol = lattice.volume();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& mi = modes[i];
      const auto& mj = modes[j];
      if (mi.species != mj.species) continue;
      const cplx overlap = (mi.spinor.adjoint() * mj.spinor)(0, 0);
      if (std::abs(overlap) == 0.0) continue;
      w(i, j) = overlap * region.fourier(mj.momentum - mi.momentum, lattice) / vol;
    }
  return w;
}

Eigen::MatrixXcd grid_cell_weights(const ModeTable& modes, int grid_n, int cell) {
  if (modes.lattice().dim() != 1)
    throw std::invalid_argument("grid cell weights implemented for d=1");
  if (cell < 0 || cell >= grid_n) throw std::invalid_argument("cell index outside grid");
  const double dx = modes.lattice().length() / grid_n;
  return region_number_weights(modes, Region::interval(cell * dx, (cell + 1) * dx));
}

Eigen::MatrixXcd grid_point_weights(const ModeTable& modes, int grid_n, int cell) {
  if (modes.lattice().dim() != 1)
    throw std::invalid_argument("grid point weights implemented for d=1");
  if (cell < 0 || cell >= grid_n) throw std::invalid_argument("cell index outside grid");
  const double dx = modes.lattice().length() / grid_n;
  const Eigen::Vector3d x(cell * dx, 0, 0);
  const int n = modes.size();
  Eigen::MatrixXcd w(n, n);
  std::vector<Eigen::VectorXcd> phi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) phi[static_cast<size_t>(i)] = modes.mode_function(i, x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w(i, j) = (modes[i].species == modes[j].species)
                    ? dx * (phi[static_cast<size_t>(i)].adjoint() * phi[static_cast<size_t>(j)])(0, 0)
                    : cplx(0);
  return w;
}

OperatorMatrix build_free_hamiltonian(const StateSpace& space) {
  const ModeTable& modes = space.sector.modes();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes.size(), modes.size());
  for (int i = 0; i < modes.size(); ++i)
    w(i, i) = (modes[i].band == Band::positive ? 1.0 : -1.0) * modes[i].energy;
  return build_one_body_operator(space, w);
}

OperatorMatrix build_boson_hamiltonian(const StateSpace& space, double omega) {
  OperatorMatrix op;
  op.mat = tensor_with_boson(sector_identity(space.sector.dim()), omega * space.boson.number());
  op.hermitian = true;
  return op;
}

OperatorMatrix build_interaction(const StateSpace& space, const InteractionKernel& kernel) {
  const Eigen::MatrixXcd h = kernel_mode_matrix(kernel, space.sector.modes());
  return lift_one_body(space, h, space.boson.coupling(), "interaction");
}

OperatorMatrix build_grid_interaction(const StateSpace& space, const InteractionKernel& kernel,
                                      int grid_n) {
  const Eigen::MatrixXcd h = kernel_mode_matrix_on_grid(kernel, space.sector.modes(), grid_n);
  return lift_one_body(space, h, space.boson.coupling(), "grid interaction");
}

QuantumState dirac_sea_state(const StateSpace& space) {
  const ModeTable& modes = space.sector.modes();
  if (space.sector.fermion_number() != modes.negative_count())
    throw std::invalid_argument("sea state needs the sector with all negative bands filled");
  std::uint64_t mask = 0;
  for (int i = 0; i < modes.size(); ++i)
    if (modes[i].band == Band::negative) mask |= std::uint64_t{1} << i;
  const int f = space.sector.index_of(mask);
  QuantumState state;
  state.amplitudes = Eigen::VectorXcd::Zero(space.dim());
  state.amplitudes(static_cast<long>(f) * space.boson.dim()) = 1.0;
  return state;
}

cplx expectation(const OperatorMatrix& op, const QuantumState& state) {
  const double n2 = state.amplitudes.squaredNorm();
  return state.amplitudes.dot(op.mat * state.amplitudes) / n2;
}

double real_expectation(const OperatorMatrix& op, const QuantumState& state) {
  return expectation(op, state).real();
}

double variance(const OperatorMatrix& op, const QuantumState& state) {
  const double n2 = state.amplitudes.squaredNorm();
  const Eigen::VectorXcd ax = op.mat * state.amplitudes;
  const double ex2 = ax.squaredNorm() / n2;
  const cplx ex = state.amplitudes.dot(ax) / n2;
  return ex2 - std::norm(ex);
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  const SparseC c = SparseC(a.mat * b.mat) - SparseC(b.mat * a.mat);
  return c.norm();
}

} // namespace dsea
