#include "qvac/species.hpp"

#include "qvac/errors.hpp"
#include "qvac/unit_parser.hpp"

#include <boost/crc.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qvac {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(trim(line.substr(start, tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

SpeciesTable::SpeciesTable(std::vector<ParticleSpecies> rows, std::string source,
                           std::uint32_t checksum)
    : rows_(std::move(rows)), source_(std::move(source)), checksum_(checksum) {
  std::set<std::string> names;
  for (const auto& r : rows_) {
    if (r.charge_ratio == 0) throw ZeroCharge("species '" + r.name + "' has zero charge");
    if (r.multiplicity < 1) throw InvalidParams("species '" + r.name + "' multiplicity < 1");
    if (!names.insert(r.name).second) throw DuplicateName("duplicate species '" + r.name + "'");
  }
}

SpeciesTable load_species(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open species file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_species(buffer.str(), path.string());
}

SpeciesTable parse_species(const std::string& contents, std::string source) {
  boost::crc_32_type crc;
  crc.process_bytes(contents.data(), contents.size());

  std::vector<ParticleSpecies> rows;
  std::set<std::string, std::less<>> names;
  std::istringstream in(contents);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() < 3 || fields.size() > 4) {
      throw MalformedRow(line_no, "expected 3 or 4 tab-separated fields");
    }
    ParticleSpecies s;
    s.name = std::string(fields[0]);
    if (s.name.empty()) throw MalformedRow(line_no, "empty name");

    const auto charge = parse_rational(fields[1]);
    if (!charge) throw MalformedRow(line_no, "bad charge ratio '" + std::string(fields[1]) + "'");
    if (*charge == 0) {
      throw ZeroCharge("line " + std::to_string(line_no) + ": species '" + s.name +
                       "' has zero charge");
    }
    s.charge_ratio = *charge;

    const auto& mult = fields[2];
    const auto [mptr, mec] = std::from_chars(mult.data(), mult.data() + mult.size(), s.multiplicity);
    if (mec != std::errc{} || mptr != mult.data() + mult.size() || s.multiplicity < 1) {
      throw MalformedRow(line_no, "multiplicity must be a positive integer");
    }

    if (fields.size() == 4 && !fields[3].empty()) {
      double mass = 0.0;
      const auto& m = fields[3];
      const auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), mass);
      if (ec != std::errc{} || ptr != m.data() + m.size() || !(mass > 0.0)) {
        throw MalformedRow(line_no, "mass must be a positive number of MeV");
      }
      s.mass_mev = mass;
    }
    if (!names.insert(s.name).second) {
      throw DuplicateName("line " + std::to_string(line_no) + ": duplicate species '" + s.name + "'");
    }
    rows.push_back(std::move(s));
  }
  return SpeciesTable(std::move(rows), std::move(source), crc.checksum());
}

std::optional<Quantity> species_mass(const ParticleSpecies& s, const ConstantRegistry& registry) {
  if (!s.mass_mev) return std::nullopt;
  const auto mev = parse_unit("MeV");
  const auto& c = registry.get("c");
  return Quantity(*s.mass_mev * mev.scale, mev.dimension) / (c * c);
}

Rational charge_weighted_sum(const SpeciesTable& table) {
  Rational sum(0);
  for (const auto& s : table.rows()) sum += Rational(s.multiplicity) * s.charge_ratio * s.charge_ratio;
  return sum;
}

double per_pair_ratio(double gap_ratio, SpeciesModel model, const ConstantRegistry& registry) {
  if (!(gap_ratio > 0.0)) throw InvalidParams("gap ratio must be positive");
  const double alpha = fine_structure_constant(registry).value();
  if (model == SpeciesModel::Simple) return 4.0 * std::numbers::pi * alpha * gap_ratio;
  return 3.0 * alpha * std::pow(2.0 / 5.0, 1.5) * gap_ratio;
}

Quantity total_permittivity(const SpeciesTable& table, double gap_ratio,
                            const ConstantRegistry& registry, SpeciesModel model) {
  const double sum = to_double(charge_weighted_sum(table));
  return per_pair_ratio(gap_ratio, model, registry) * sum * registry.get("eps0");
}

double required_species_count(double gap_ratio, SpeciesModel model,
                              const ConstantRegistry& registry) {
  if (!(gap_ratio > 0.0)) throw InvalidParams("gap ratio must be positive");
  const double alpha = fine_structure_constant(registry).value();
  if (model == SpeciesModel::Simple) return 1.0 / (4.0 * std::numbers::pi * alpha * gap_ratio);
  return std::pow(5.0 / 2.0, 1.5) / (3.0 * alpha * gap_ratio);
}

GapMatch gap_for_exact_match(const SpeciesTable& table, SpeciesModel model,
                             const ConstantRegistry& registry) {
  const auto sum = charge_weighted_sum(table);
  if (sum == 0) throw EmptyTable("no charged species to match eps0 with");
  // The required count scales as 1/kappa, so kappa = count(1) / sum.
  const double kappa = required_species_count(1.0, model, registry) / to_double(sum);
  const auto& m = registry.get("m_e");
  const auto& c = registry.get("c");
  return GapMatch{kappa, kappa * m * c * c};
}

}  // namespace qvac
