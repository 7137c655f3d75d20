#include "dsea/species.hpp"

#include <set>

namespace dsea {

SpeciesTable::SpeciesTable(std::vector<Species> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("species table must be non-empty");
  std::set<std::string> ids;
  for (const auto& s : entries_) {
    if (s.mass < 0) throw std::invalid_argument("species mass must be non-negative: " + s.id);
    if (!ids.insert(s.id).second)
      throw std::invalid_argument("duplicate species id: " + s.id);
  }
}

SpeciesTable SpeciesTable::single(double mass, double charge, std::string id) {
  return SpeciesTable({{std::move(id), mass, charge}});
}

SpeciesTable SpeciesTable::two(double mass_a, double mass_b, std::string id_a, std::string id_b) {
  return SpeciesTable({{std::move(id_a), mass_a, 0.0}, {std::move(id_b), mass_b, 0.0}});
}

SpeciesTable SpeciesTable::standard_model() {
  struct Q {
    const char* id;
    double mass_ev;
    double charge;
  };
  // PDG central values; quarks in three colours.
  const Q quarks[] = {
      {"u", 2.2e6, 2.0 / 3.0},   {"d", 4.7e6, -1.0 / 3.0}, {"s", 9.5e7, -1.0 / 3.0},
      {"c", 1.27e9, 2.0 / 3.0},  {"b", 4.18e9, -1.0 / 3.0}, {"t", 1.73e11, 2.0 / 3.0},
  };
  const Q leptons[] = {
      {"e", 5.11e5, -1.0},  {"mu", 1.057e8, -1.0},  {"tau", 1.777e9, -1.0},
      {"nu_e", 0.0, 0.0},   {"nu_mu", 0.0, 0.0},    {"nu_tau", 0.0, 0.0},
  };
  std::vector<Species> v;
  const char* colours[] = {"r", "g", "b"};
  for (const auto& q : quarks)
    for (const auto* c : colours)
      v.push_back({std::string(q.id) + "_" + c, ev_to_inverse_m(q.mass_ev), q.charge});
  for (const auto& l : leptons)
    v.push_back({l.id, ev_to_inverse_m(l.mass_ev), l.charge});
  return SpeciesTable(std::move(v));
}

} // namespace dsea
