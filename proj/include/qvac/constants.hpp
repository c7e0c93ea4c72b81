#pragma once

#include "qvac/quantity.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qvac {

struct ConstantRecord {
  std::string key;
  std::string symbol;
  Quantity value;
  std::string unit;
  std::string source;                     // data-file citation or "derived"
  std::optional<std::string> definition;  // formula note for derived records
};

/// Immutable registry of physical constants.
///
/// Base constants come from a tab-separated data file; the derived records
/// alpha, lambda_c and E_S are appended at load time.
class ConstantRegistry {
 public:
  /// Keys that every constants file must define.
  static const std::vector<std::string>& required_keys();

  /// Throws MissingConstant, MalformedLine or UnitParseError.
  static ConstantRegistry load(const std::filesystem::path& path);
  static ConstantRegistry parse(std::istream& in);

  /// Copy with one base constant replaced; derived records are recomputed.
  ConstantRegistry with_override(std::string_view key, const Quantity& value) const;

  bool contains(std::string_view key) const;
  const ConstantRecord& record(std::string_view key) const;
  const Quantity& get(std::string_view key) const { return record(key).value; }

  /// Records in file order followed by the derived ones.
  const std::vector<ConstantRecord>& records() const { return records_; }
  const std::string& codata_release() const { return release_; }

  /// Recomputes every derived record from the base records and throws if any
  /// stored magnitude differs by more than `tolerance` (relative).
  void verify_derived(double tolerance = kAlgebraTolerance) const;

 private:
  ConstantRegistry() = default;
  void append_derived();
  void index();

  std::string release_;
  std::vector<ConstantRecord> records_;
  std::map<std::string, std::size_t, std::less<>> by_key_;
};

/// Default location of the bundled data files.
std::filesystem::path default_data_dir();
std::filesystem::path default_constants_path();
std::filesystem::path default_species_path();

/// alpha = e^2 / (4 pi eps0 hbar c).
Quantity fine_structure_constant(const ConstantRegistry& registry);

/// Critical field m_e^2 c^3 / (e hbar).
Quantity schwinger_field(const ConstantRegistry& registry);

/// Reduced Compton wavelength hbar / (m c). Throws NonPositiveMass.
Quantity compton_wavelength(const Quantity& mass, const ConstantRegistry& registry);

}  // namespace qvac
