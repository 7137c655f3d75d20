#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dsea/lattice.hpp"
#include "dsea/species.hpp"
#include "dsea/spinors.hpp"

namespace dsea {

enum class Band : int { negative = 0, positive = 1 };

/// One single-particle state (species, band, helicity, momentum).
struct SingleParticleMode {
  int species;
  Band band;
  int helicity;
  int momentum_index;
  double energy;               // E >= 0; the band carries the sign
  Eigen::Vector3d momentum;
  Eigen::VectorXcd spinor;     // unit-normalized
};

/// All single-particle modes over a lattice and species table, in the
/// frozen lexicographic order (species, band, helicity, momentum index)
/// that fixes the Jordan-Wigner sign convention.
class ModeTable {
public:
  ModeTable(const ModeLattice& lattice, const SpeciesTable& species,
            const DiracAlgebra& algebra);

  int size() const { return static_cast<int>(modes_.size()); }
  const SingleParticleMode& operator[](int i) const { return modes_[static_cast<size_t>(i)]; }
  const ModeLattice& lattice() const { return lattice_; }
  const SpeciesTable& species() const { return species_; }
  const DiracAlgebra& algebra() const { return algebra_; }

  int negative_count() const { return negative_count_; }

  /// Spinor-valued mode function phi_i(x) = spinor * exp(i p.x) / sqrt(L^d).
  Eigen::VectorXcd mode_function(int i, const Eigen::Vector3d& x) const;

private:
  ModeLattice lattice_;
  SpeciesTable species_;
  DiracAlgebra algebra_;
  std::vector<SingleParticleMode> modes_;
  int negative_count_ = 0;
};

} // namespace dsea
