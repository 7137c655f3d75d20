#pragma once

#include <string>
#include <vector>

#include "dsea/common.hpp"

namespace dsea {

struct Species {
  std::string id;
  double mass;   // 1/m
  double charge; // units of |e|
};

/// Table of fermion species. The default physical table has 24 entries:
/// six quarks in three colours plus six leptons.
class SpeciesTable {
public:
  explicit SpeciesTable(std::vector<Species> entries);

  static SpeciesTable single(double mass, double charge = 0.0, std::string id = "f");
  static SpeciesTable two(double mass_a, double mass_b, std::string id_a = "a",
                          std::string id_b = "b");
  /// Six quarks x three colours + six leptons, masses converted from eV.
  static SpeciesTable standard_model();

  int count() const { return static_cast<int>(entries_.size()); }
  const Species& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<Species>& entries() const { return entries_; }

private:
  std::vector<Species> entries_;
};

} // namespace dsea
