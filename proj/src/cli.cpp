#include "qvac/cli.hpp"

#include "qvac/constants.hpp"
#include "qvac/dimension_check.hpp"
#include "qvac/errors.hpp"
#include "qvac/report.hpp"
#include "qvac/species.hpp"
#include "qvac/unit_parser.hpp"
#include "qvac/unit_system.hpp"
#include "qvac/vacuum_model.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qvac {

namespace {

/// Bad flag value; reported with exit code 2.
struct UsageError : Error {
  using Error::Error;
};

struct GlobalOptions {
  std::string constants_path = default_constants_path().string();
  std::string species_path;
  std::string format = "csv";
  std::string out_path;
  std::string units = "si";
};

struct EstimateOptions {
  double gap_ratio = 2.0;
  std::string convention = "cube";
  double g = 2.0;
  std::string particle = "electron";
  std::string field;
  std::string frequency;
  std::string radius;
};

struct SweepOptions {
  double kappa_min = 0.5;
  double kappa_max = 4.0;
  std::size_t count = 64;
  double step = 0.0;
  std::string conventions = "cube,sphere";
  std::string g_factors = "2";
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

UnitSystem parse_units(const std::string& units) {
  if (units == "si") return UnitSystem::SI;
  if (units == "gaussian") return UnitSystem::Gaussian;
  throw UsageError("--units must be 'si' or 'gaussian'");
}

OutputFormat parse_format(const std::string& format) {
  if (format == "csv") return OutputFormat::Csv;
  if (format == "json") return OutputFormat::Json;
  if (format == "svg") return OutputFormat::Svg;
  throw UsageError("--format must be csv, json or svg");
}

/// "<number> <unit expression>", e.g. "1e6 V/m".
Quantity parse_quantity_flag(const std::string& flag, const std::string& text,
                             const Dimension& expected) {
  const auto begin = text.find_first_not_of(' ');
  if (begin == std::string::npos) throw UsageError(flag + ": empty value");
  const auto* first = text.data() + begin;
  const auto* last = text.data() + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) throw UsageError(flag + ": expected '<number> <unit>'");
  const std::string unit_text(ptr, last);
  ParsedUnit unit;
  try {
    unit = unit_text.find_first_not_of(' ') == std::string::npos ? ParsedUnit{}
                                                                  : parse_unit(unit_text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (unit.dimension != expected) {
    throw UsageError(flag + ": unit '" + unit_text + "' has dimension " +
                     format_dimension(unit.dimension) + ", expected " +
                     format_dimension(expected));
  }
  return Quantity(value * unit.scale, unit.dimension);
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot open output file: " + path);
      path_ = path;
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw Error("failed writing output file: " + path_);
  }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
  std::string path_;
};

void write_rows(std::ostream& out, const std::vector<ReportRow>& rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: write_csv(out, rows); break;
    case OutputFormat::Json: write_json(out, rows); break;
    case OutputFormat::Svg: write_svg(out, rows); break;
  }
}

void gaussian_note(std::ostream& err) {
  err << "note: Gaussian output: eps~ and mu~ are dimensionless; eps0 is replaced by the "
         "constant '1' in D = E + 4 pi P, which puts eps0 at 1/(4 pi) in P = eps0 E and mu0 "
         "at 4 pi\n";
}

void deviation_notes(std::ostream& err, double gap_ratio, const ConstantRegistry& reg) {
  const double simple = required_species_count(gap_ratio, SpeciesModel::Simple, reg);
  const double ratio = per_pair_ratio(gap_ratio, SpeciesModel::Simple, reg);
  err << fmt::format(
      "note: deviation factor 4 pi alpha kappa = {:.4f} at kappa = {:g}; a factor of about "
      "1/10 corresponds to kappa = 1 ({:.4f}), not kappa = 2 ({:.4f})\n",
      ratio, gap_ratio, per_pair_ratio(1.0, SpeciesModel::Simple, reg),
      per_pair_ratio(2.0, SpeciesModel::Simple, reg));
  err << fmt::format(
      "note: required charge-weighted species count (simple model) = {:.3f} at kappa = {:g}; "
      "the often-quoted 'around ten' pairs matches kappa = 1 ({:.3f}), while kappa = 2 gives "
      "{:.3f}\n",
      simple, gap_ratio, required_species_count(1.0, SpeciesModel::Simple, reg),
      required_species_count(2.0, SpeciesModel::Simple, reg));
}

int cmd_estimate(const GlobalOptions& g, const EstimateOptions& o, std::ostream& out,
                 std::ostream& err) {
  if (!(o.gap_ratio > 0.0)) throw UsageError("--gap-ratio must be > 0");
  if (!(o.g > 0.0)) throw UsageError("--g must be > 0");
  const auto format = parse_format(g.format);
  if (format == OutputFormat::Svg) throw UsageError("--format svg is only available for sweep");
  const auto units = parse_units(g.units);

  std::optional<VolumeConvention> conv;
  if (o.convention == "custom") {
    if (o.radius.empty()) throw UsageError("--convention custom requires --radius");
    const auto r = parse_quantity_flag("--radius", o.radius, dims::length());
    if (!(r.magnitude() > 0.0)) throw UsageError("--radius must be > 0");
    conv = VolumeConvention::custom_cube(r);
  } else {
    conv = convention_from_name(o.convention);
    if (!conv) throw UsageError("--convention: unknown convention '" + o.convention + "'");
  }
  std::optional<Quantity> field;
  std::optional<Quantity> frequency;
  if (!o.field.empty()) field = parse_quantity_flag("--field", o.field, dims::electric_field());
  if (!o.frequency.empty()) {
    frequency = parse_quantity_flag("--frequency", o.frequency, dims::frequency());
  }

  const auto reg = ConstantRegistry::load(g.constants_path);
  const VacuumModel model(reg);

  std::string mass_key;
  if (o.particle == "electron") mass_key = "m_e";
  else if (o.particle == "muon") mass_key = "m_muon";
  else if (o.particle == "tau") mass_key = "m_tau";
  else throw UsageError("--particle must be electron, muon or tau");

  auto params = OscillatorParams::with_gap_ratio(reg.get(mass_key), reg.get("e"), o.gap_ratio, reg);
  params.g_factor = o.g;
  params.volume = *conv;

  Diagnostics diag;
  if (field || frequency) {
    FieldProbe probe;
    if (field) probe.E = *field;
    if (frequency) probe.omega = *frequency;
    model.check_probe(params, probe, &diag);
  }

  const bool closed = conv->is_maxwell_consistent();
  const auto response = closed ? model.maxwell_closure(params) : model.evaluate(params);
  if (conv->shape() == VolumeConvention::Shape::CubeOfRadius && closed) {
    const auto fs = model.fine_structure_form(params);
    if (!relative_close(fs.eps_tilde.magnitude(), response.eps_tilde.magnitude(), kAlgebraTolerance)) {
      diag.warn("closure and closed-form permittivity disagree");
    }
  }

  ReportRow row{};
  row.kappa = o.gap_ratio;
  row.convention = conv->name();
  row.g = o.g;
  row.eps_tilde = convert_system(response.eps_tilde, QuantityKind::Permittivity, units).magnitude();
  row.mu_tilde = convert_system(response.mu_tilde, QuantityKind::Permeability, units).magnitude();
  row.radius_m = response.radius.magnitude();
  row.eps_ratio = response.eps_ratio;
  row.mu_ratio = response.mu_ratio;
  row.count_simple = required_species_count(o.gap_ratio, SpeciesModel::Simple, reg);
  row.count_sphere = required_species_count(o.gap_ratio, SpeciesModel::Sphere, reg);

  OutputTarget target(g.out_path, out);
  write_rows(target.stream(), {row}, format);
  target.close();

  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
  deviation_notes(err, o.gap_ratio, reg);
  if (units == UnitSystem::Gaussian) gaussian_note(err);
  return kExitOk;
}

int cmd_sweep(const GlobalOptions& g, const SweepOptions& o, bool step_given, std::ostream& out,
              std::ostream& err) {
  SweepConfig config;
  config.kappa_min = o.kappa_min;
  config.kappa_max = o.kappa_max;
  config.count = o.count;
  if (step_given) {
    if (!(o.step > 0.0)) throw UsageError("--step must be > 0");
    config.count = static_cast<std::size_t>(
                       std::floor((o.kappa_max - o.kappa_min) / o.step + 1e-9)) + 1;
  }
  config.conventions = split_list(o.conventions);
  config.g_factors.clear();
  for (const auto& gtext : split_list(o.g_factors)) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(gtext.data(), gtext.data() + gtext.size(), v);
    if (ec != std::errc{} || ptr != gtext.data() + gtext.size()) {
      throw UsageError("--g-factors: bad value '" + gtext + "'");
    }
    config.g_factors.push_back(v);
  }
  config.format = parse_format(g.format);
  config.units = parse_units(g.units);
  if (!g.species_path.empty()) config.species_path = g.species_path;
  if (!g.out_path.empty()) config.output_path = g.out_path;
  try {
    config.validate();
  } catch (const InvalidParams& e) {
    throw UsageError(e.what());
  }

  const auto reg = ConstantRegistry::load(g.constants_path);
  const VacuumModel model(reg);
  std::optional<SpeciesTable> species;
  if (config.species_path) species = load_species(*config.species_path);

  const auto rows = run_sweep(model, config, species ? &*species : nullptr);
  OutputTarget target(g.out_path, out);
  write_rows(target.stream(), rows, config.format);
  target.close();
  if (species && species->empty()) err << "warning: NoSpecies: species table is empty\n";
  if (config.units == UnitSystem::Gaussian) gaussian_note(err);
  return kExitOk;
}

int cmd_species(const GlobalOptions& g, double gap_ratio, std::ostream& out, std::ostream& err) {
  if (!(gap_ratio > 0.0)) throw UsageError("--gap-ratio must be > 0");
  const auto reg = ConstantRegistry::load(g.constants_path);
  const auto path = g.species_path.empty() ? default_species_path().string() : g.species_path;
  const auto table = load_species(path);
  const auto sum = charge_weighted_sum(table);

  OutputTarget target(g.out_path, out);
  auto& o = target.stream();
  o << "species_file: " << path << '\n';
  o << "species_rows: " << table.size() << '\n';
  o << fmt::format("checksum_crc32: {:08x}\n", table.checksum());
  o << "charge_weighted_sum: " << to_string(sum) << " (" << format_number(to_double(sum)) << ")\n";
  o << "gap_ratio: " << format_number(gap_ratio) << '\n';
  o << "total_permittivity: " << format_number(total_permittivity(table, gap_ratio, reg).magnitude())
    << " A s / (V m)\n";
  o << "total_permittivity_sphere: "
    << format_number(total_permittivity(table, gap_ratio, reg, SpeciesModel::Sphere).magnitude())
    << " A s / (V m)\n";
  o << "eps0: " << format_number(reg.get("eps0").magnitude()) << " A s / (V m)\n";
  for (const auto model : {SpeciesModel::Simple, SpeciesModel::Sphere}) {
    const char* name = model == SpeciesModel::Simple ? "simple" : "sphere";
    o << "required_count_" << name << ": "
      << format_number(required_species_count(gap_ratio, model, reg)) << '\n';
    if (sum == 0) {
      o << "gap_for_exact_match_" << name << ": n/a\n";
    } else {
      const auto match = gap_for_exact_match(table, model, reg);
      o << "gap_for_exact_match_" << name << ": kappa " << format_number(match.gap_ratio) << ", "
        << format_number(match.gap_energy.magnitude()) << " J\n";
    }
  }
  target.close();
  if (table.empty()) err << "warning: NoSpecies: species table is empty\n";
  deviation_notes(err, gap_ratio, reg);
  return kExitOk;
}

int cmd_check_dimensions(const GlobalOptions& g, std::ostream& out) {
  const auto reg = ConstantRegistry::load(g.constants_path);
  const auto checks = run_dimension_checks(reg);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.formula << "  [expected "
        << c.expected << ", got " << (c.actual.empty() ? "?" : c.actual) << "]";
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
    if (!c.passed) ++failed;
  }
  out << checks.size() - failed << "/" << checks.size() << " equations dimensionally consistent\n";
  return failed == 0 ? kExitOk : kExitRuntime;
}

int cmd_constants(const GlobalOptions& g, bool derived, std::ostream& out) {
  const auto reg = ConstantRegistry::load(g.constants_path);
  OutputTarget target(g.out_path, out);
  auto& o = target.stream();
  o << "# codata " << reg.codata_release() << '\n';
  for (const auto& r : reg.records()) {
    const bool is_derived = r.source == "derived";
    if (is_derived && !derived) continue;
    const double scale = parse_unit(r.unit).scale;
    o << r.key << '\t' << format_number(r.value.magnitude() / scale) << '\t' << r.unit << '\t'
      << r.source;
    if (r.definition) o << '\t' << *r.definition;
    o << '\n';
  }
  target.close();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-classical estimates of the vacuum permittivity and permeability"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--constants", global.constants_path, "Constants data file");
  app.add_option("--species", global.species_path, "Species data file");
  app.add_option("--format", global.format, "Output format: csv, json or svg");
  app.add_option("--out", global.out_path, "Output file (default: stdout)");
  app.add_option("--units", global.units, "Unit system for eps~ and mu~: si or gaussian");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Single-point estimate for one pair");
  estimate->add_option("--gap-ratio", est.gap_ratio, "E_gap / m c^2");
  estimate->add_option("--convention", est.convention,
                       "cube, sphere, compton, half-compton or custom");
  estimate->add_option("--g", est.g, "Lande g factor");
  estimate->add_option("--particle", est.particle, "electron, muon or tau");
  estimate->add_option("--field", est.field, "Probe field, e.g. \"1e6 V/m\"");
  estimate->add_option("--frequency", est.frequency, "Probe angular frequency, e.g. \"1e9 Hz\"");
  estimate->add_option("--radius", est.radius, "Radius for the custom convention");

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "Sweep gap ratio, convention and g factor");
  sweep->add_option("--kappa-min", sw.kappa_min, "Smallest gap ratio");
  sweep->add_option("--kappa-max", sw.kappa_max, "Largest gap ratio");
  sweep->add_option("--count", sw.count, "Number of gap ratios");
  auto* step_opt = sweep->add_option("--step", sw.step, "Gap-ratio step (overrides --count)");
  sweep->add_option("--conventions", sw.conventions, "Comma-separated conventions");
  sweep->add_option("--g-factors", sw.g_factors, "Comma-separated g factors");

  double species_gap = 2.0;
  auto* species = app.add_subcommand("species", "Species sums and required counts");
  species->add_option("--gap-ratio", species_gap, "E_gap / m c^2");

  auto* check = app.add_subcommand("check-dimensions", "Dimension-check every model equation");

  bool derived = false;
  auto* constants = app.add_subcommand("constants", "List the loaded constants");
  constants->add_flag("--derived", derived, "Include alpha, lambda_c and E_S");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(global, est, out, err);
    if (sweep->parsed()) return cmd_sweep(global, sw, step_opt->count() > 0, out, err);
    if (species->parsed()) return cmd_species(global, species_gap, out, err);
    if (check->parsed()) return cmd_check_dimensions(global, out);
    if (constants->parsed()) return cmd_constants(global, derived, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace qvac
