#pragma once

#include "qvac/constants.hpp"
#include "qvac/quantity.hpp"
#include "qvac/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qvac {

struct ParticleSpecies {
  std::string name;
  Rational charge_ratio;  // q / e, non-zero
  int multiplicity = 1;   // internal degeneracy, e.g. colour
  std::optional<double> mass_mev;
};

class SpeciesTable {
 public:
  SpeciesTable() = default;
  /// Throws DuplicateName, ZeroCharge or InvalidParams for bad rows.
  SpeciesTable(std::vector<ParticleSpecies> rows, std::string source = {},
               std::uint32_t checksum = 0);

  const std::vector<ParticleSpecies>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }
  const std::string& source() const { return source_; }
  /// CRC-32 of the file contents.
  std::uint32_t checksum() const { return checksum_; }

 private:
  std::vector<ParticleSpecies> rows_;
  std::string source_;
  std::uint32_t checksum_ = 0;
};

/// Reads `name<TAB>charge_ratio<TAB>multiplicity[<TAB>mass_MeV]` rows; `#`
/// starts a comment line. Throws DuplicateName, MalformedRow or ZeroCharge.
SpeciesTable load_species(const std::filesystem::path& path);
SpeciesTable parse_species(const std::string& contents, std::string source = "<memory>");

/// Rest mass of a species row, if it carries one.
std::optional<Quantity> species_mass(const ParticleSpecies& s, const ConstantRegistry& registry);

/// Sum over rows of multiplicity * (q/e)^2, exact.
Rational charge_weighted_sum(const SpeciesTable& table);

enum class SpeciesModel { Simple, Sphere };

/// Permittivity ratio contributed by one unit of charge-weighted species at
/// gap ratio kappa: 4 pi alpha kappa (simple) or 3 alpha (2/5)^(3/2) kappa
/// (uniform sphere).
double per_pair_ratio(double gap_ratio, SpeciesModel model, const ConstantRegistry& registry);

/// Total permittivity from every species, `per_pair_ratio * sum * eps0`.
Quantity total_permittivity(const SpeciesTable& table, double gap_ratio,
                            const ConstantRegistry& registry,
                            SpeciesModel model = SpeciesModel::Simple);

/// Charge-weighted species count for which the total equals eps0.
double required_species_count(double gap_ratio, SpeciesModel model,
                              const ConstantRegistry& registry);

struct GapMatch {
  double gap_ratio;     // E_gap / m c^2
  Quantity gap_energy;  // for the electron mass
};

/// Energy gap at which the table's total permittivity equals eps0 exactly.
/// Throws EmptyTable when the charge-weighted sum is zero.
GapMatch gap_for_exact_match(const SpeciesTable& table, SpeciesModel model,
                             const ConstantRegistry& registry);

}  // namespace qvac
