#pragma once

#include "qvac/quantity.hpp"
#include "qvac/species.hpp"
#include "qvac/vacuum_model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qvac {

enum class OutputFormat { Csv, Json, Svg };

/// Accepted names: "cube" (Maxwell-consistent cube), "sphere", "compton",
/// "half-compton". Returns nullopt for anything else.
std::optional<VolumeConvention> convention_from_name(std::string_view name);

struct SweepConfig {
  double kappa_min = 0.5;
  double kappa_max = 4.0;
  std::size_t count = 64;
  std::vector<std::string> conventions = {"cube", "sphere"};
  std::vector<double> g_factors = {2.0};
  std::optional<std::string> species_path;
  OutputFormat format = OutputFormat::Csv;
  UnitSystem units = UnitSystem::SI;
  std::optional<std::string> output_path;

  /// Throws InvalidParams naming the offending setting.
  void validate() const;
  std::vector<double> kappas() const;
};

struct ReportRow {
  double kappa;
  std::string convention;
  double g;
  double eps_tilde;  // SI F/m, or dimensionless in Gaussian output
  double mu_tilde;   // SI N/A^2, or dimensionless in Gaussian output
  double radius_m;
  double eps_ratio;
  double mu_ratio;
  bool maxwell_closed;
  std::optional<Rational> species_sum;
  double count_simple;
  double count_sphere;
  std::vector<std::string> warnings;
};

/// One report row for the electron pair at gap ratio `kappa`. Maxwell-
/// consistent conventions go through the closure; the others are evaluated
/// as given.
ReportRow compute_row(const VacuumModel& model, double kappa, std::string_view convention,
                      double g, UnitSystem units = UnitSystem::SI,
                      const SpeciesTable* species = nullptr);

/// Rows in kappa-major, convention, g-minor order. Grid points are evaluated
/// concurrently; the result equals the sequential evaluation.
std::vector<ReportRow> run_sweep(const VacuumModel& model, const SweepConfig& config,
                                 const SpeciesTable* species = nullptr);

/// Scientific notation with 12 significant digits.
std::string format_number(double v);

inline constexpr std::string_view kCsvHeader =
    "kappa,convention,g,eps_tilde,mu_tilde,radius_m,eps_ratio,mu_ratio,count_simple,count_sphere";

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_json(std::ostream& out, const std::vector<ReportRow>& rows);
/// eps_ratio against kappa on a log axis, one polyline per convention (rows
/// with the first g factor), plus the measured-eps0 reference at ratio 1.
void write_svg(std::ostream& out, const std::vector<ReportRow>& rows);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace qvac
