#include "qvac/constants.hpp"

#include "qvac/errors.hpp"
#include "qvac/unit_parser.hpp"

#include <charconv>
#include <fstream>
#include <numbers>

#ifndef QVAC_DATA_DIR
#define QVAC_DATA_DIR "data"
#endif

namespace qvac {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string symbol_for(std::string_view key) {
  static const std::map<std::string, std::string, std::less<>> kSymbols = {
      {"hbar", "ħ"},      {"eps0", "ε₀"}, {"mu0", "μ₀"},
      {"alpha", "α"},     {"lambda_c", "λ_c"},
  };
  const auto it = kSymbols.find(key);
  return it == kSymbols.end() ? std::string(key) : it->second;
}

struct DerivedValues {
  Quantity alpha;
  Quantity lambda_c;
  Quantity schwinger;
};

DerivedValues derive(const ConstantRegistry& r) {
  const auto& e = r.get("e");
  const auto& m = r.get("m_e");
  const auto& hbar = r.get("hbar");
  const auto& c = r.get("c");
  const auto& eps0 = r.get("eps0");
  return {
      e * e / (4.0 * std::numbers::pi * eps0 * hbar * c),
      hbar / (m * c),
      m * m * c * c * c / (e * hbar),
  };
}

}  // namespace

const std::vector<std::string>& ConstantRegistry::required_keys() {
  static const std::vector<std::string> kKeys = {
      "e",      "m_e",       "hbar",    "c",       "eps0",     "mu0",   "m_muon",
      "m_tau",  "m_up",      "m_down",  "m_strange", "m_charm", "m_bottom", "m_top",
  };
  return kKeys;
}

ConstantRegistry ConstantRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open constants file: " + path.string());
  return parse(in);
}

ConstantRegistry ConstantRegistry::parse(std::istream& in) {
  ConstantRegistry reg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("#codata")) {
      reg.release_ = std::string(trim(line.substr(7)));
      if (reg.release_.empty()) throw MalformedLine(line_no, "#codata header without a release");
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw MalformedLine(line_no, "expected 4 tab-separated fields, got " +
                                       std::to_string(fields.size()));
    }
    const auto key = trim(fields[0]);
    const auto magnitude_text = trim(fields[1]);
    const auto unit_text = trim(fields[2]);
    const auto source = trim(fields[3]);
    if (key.empty()) throw MalformedLine(line_no, "empty key");

    double magnitude = 0.0;
    const auto* end = magnitude_text.data() + magnitude_text.size();
    const auto [ptr, ec] = std::from_chars(magnitude_text.data(), end, magnitude);
    if (ec != std::errc{} || ptr != end) {
      throw MalformedLine(line_no, "bad magnitude '" + std::string(magnitude_text) + "'");
    }

    ParsedUnit unit;
    try {
      unit = parse_unit(unit_text);
    } catch (const Error& err) {
      throw UnitParseError("line " + std::to_string(line_no) + ": unit '" +
                           std::string(unit_text) + "': " + err.what());
    }
    if (reg.contains(key)) throw MalformedLine(line_no, "duplicate key '" + std::string(key) + "'");

    reg.records_.push_back(ConstantRecord{
        std::string(key),
        symbol_for(key),
        Quantity(magnitude * unit.scale, unit.dimension),
        std::string(unit_text),
        std::string(source),
        std::nullopt,
    });
    reg.by_key_[std::string(key)] = reg.records_.size() - 1;
  }
  if (reg.release_.empty()) throw MalformedLine(1, "missing '#codata <release>' header");
  for (const auto& k : required_keys()) {
    if (!reg.contains(k)) throw MissingConstant("missing constant '" + k + "'");
  }
  reg.append_derived();
  reg.verify_derived();
  return reg;
}

void ConstantRegistry::append_derived() {
  const auto d = derive(*this);
  const auto add = [this](std::string key, const Quantity& q, std::string definition) {
    records_.push_back(ConstantRecord{key, symbol_for(key), q, format_dimension(q.dimension()),
                                      "derived", std::move(definition)});
    by_key_[key] = records_.size() - 1;
  };
  add("alpha", d.alpha, "e^2 / (4 pi eps0 hbar c)");
  add("lambda_c", d.lambda_c, "hbar / (m_e c)");
  add("E_S", d.schwinger, "m_e^2 c^3 / (e hbar)");
}

void ConstantRegistry::index() {
  by_key_.clear();
  for (std::size_t i = 0; i < records_.size(); ++i) by_key_[records_[i].key] = i;
}

ConstantRegistry ConstantRegistry::with_override(std::string_view key,
                                                 const Quantity& value) const {
  ConstantRegistry copy;
  copy.release_ = release_;
  for (const auto& r : records_) {
    if (r.source == "derived") continue;
    copy.records_.push_back(r);
    if (r.key == key) copy.records_.back().value = value;
  }
  copy.index();
  if (!copy.contains(key)) throw MissingConstant("cannot override unknown constant '" + std::string(key) + "'");
  copy.append_derived();
  return copy;
}

bool ConstantRegistry::contains(std::string_view key) const { return by_key_.contains(key); }

const ConstantRecord& ConstantRegistry::record(std::string_view key) const {
  const auto it = by_key_.find(key);
  if (it == by_key_.end()) throw MissingConstant("missing constant '" + std::string(key) + "'");
  return records_[it->second];
}

void ConstantRegistry::verify_derived(double tolerance) const {
  const auto d = derive(*this);
  const std::pair<const char*, const Quantity*> checks[] = {
      {"alpha", &d.alpha}, {"lambda_c", &d.lambda_c}, {"E_S", &d.schwinger}};
  for (const auto& [key, fresh] : checks) {
    const auto& stored = get(key);
    if (stored.dimension() != fresh->dimension() ||
        !relative_close(stored.magnitude(), fresh->magnitude(), tolerance)) {
      throw Error(std::string("derived constant '") + key + "' does not match its definition");
    }
  }
}

std::filesystem::path default_data_dir() { return QVAC_DATA_DIR; }
std::filesystem::path default_constants_path() {
  return default_data_dir() / "constants_codata2014.tsv";
}
std::filesystem::path default_species_path() { return default_data_dir() / "species_sm.tsv"; }

Quantity fine_structure_constant(const ConstantRegistry& registry) { return registry.get("alpha"); }

Quantity schwinger_field(const ConstantRegistry& registry) {
  const auto& m = registry.get("m_e");
  const auto& c = registry.get("c");
  return m * m * c * c * c / (registry.get("e") * registry.get("hbar"));
}

Quantity compton_wavelength(const Quantity& mass, const ConstantRegistry& registry) {
  require_dimension(mass, dims::mass(), "compton_wavelength");
  if (mass.magnitude() <= 0.0) throw NonPositiveMass("mass must be positive");
  return registry.get("hbar") / (mass * registry.get("c"));
}

}  // namespace qvac
