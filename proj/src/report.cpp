#include "qvac/report.hpp"

#include "qvac/errors.hpp"
#include "qvac/unit_system.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <ostream>
#include <thread>

namespace qvac {

std::optional<VolumeConvention> convention_from_name(std::string_view name) {
  if (name == "cube") return VolumeConvention::cube(RadiusRule::MaxwellConsistent);
  if (name == "sphere") return VolumeConvention::sphere();
  if (name == "compton") return VolumeConvention::cube(RadiusRule::Compton);
  if (name == "half-compton") return VolumeConvention::cube(RadiusRule::HalfCompton);
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (!(kappa_min > 0.0)) throw InvalidParams("--kappa-min must be > 0");
  if (!(kappa_max >= kappa_min)) throw InvalidParams("--kappa-max must be >= --kappa-min");
  if (count < 2) throw InvalidParams("--count must be >= 2");
  if (conventions.empty()) throw InvalidParams("--conventions must name at least one convention");
  for (const auto& c : conventions) {
    if (!convention_from_name(c)) throw InvalidParams("--conventions: unknown convention '" + c + "'");
  }
  if (g_factors.empty()) throw InvalidParams("--g-factors must list at least one value");
  for (double g : g_factors) {
    if (!(g > 0.0)) throw InvalidParams("--g-factors: values must be > 0");
  }
}

std::vector<double> SweepConfig::kappas() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = kappa_min + (kappa_max - kappa_min) * static_cast<double>(i) /
                             static_cast<double>(count - 1);
  }
  return out;
}

ReportRow compute_row(const VacuumModel& model, double kappa, std::string_view convention,
                      double g, UnitSystem units, const SpeciesTable* species) {
  const auto conv = convention_from_name(convention);
  if (!conv) throw InvalidParams("unknown convention '" + std::string(convention) + "'");
  const auto& reg = model.registry();

  auto params = OscillatorParams::electron(kappa, reg);
  params.g_factor = g;
  params.volume = *conv;
  params.validate();

  const bool closed = conv->is_maxwell_consistent();
  const auto response = closed ? model.maxwell_closure(params) : model.evaluate(params);

  ReportRow row{};
  row.kappa = kappa;
  row.convention = std::string(convention);
  row.g = g;
  row.eps_tilde =
      convert_system(response.eps_tilde, QuantityKind::Permittivity, units).magnitude();
  row.mu_tilde =
      convert_system(response.mu_tilde, QuantityKind::Permeability, units).magnitude();
  row.radius_m = response.radius.magnitude();
  row.eps_ratio = response.eps_ratio;
  row.mu_ratio = response.mu_ratio;
  row.maxwell_closed = closed;
  row.count_simple = required_species_count(kappa, SpeciesModel::Simple, reg);
  row.count_sphere = required_species_count(kappa, SpeciesModel::Sphere, reg);
  if (species != nullptr) {
    row.species_sum = charge_weighted_sum(*species);
    if (species->empty()) row.warnings.push_back("NoSpecies: species table is empty");
  }
  return row;
}

std::vector<ReportRow> run_sweep(const VacuumModel& model, const SweepConfig& config,
                                 const SpeciesTable* species) {
  config.validate();
  struct Point {
    double kappa;
    const std::string* convention;
    double g;
  };
  std::vector<Point> grid;
  for (double kappa : config.kappas()) {
    for (const auto& conv : config.conventions) {
      for (double g : config.g_factors) grid.push_back({kappa, &conv, g});
    }
  }

  std::vector<std::optional<ReportRow>> slots(grid.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  std::vector<std::future<void>> tasks;
  for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
    const std::size_t end = std::min(grid.size(), begin + chunk);
    tasks.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        const auto& pt = grid[i];
        slots[i] = compute_row(model, pt.kappa, *pt.convention, pt.g, config.units, species);
      }
    }));
  }
  for (auto& t : tasks) t.get();

  std::vector<ReportRow> rows;
  rows.reserve(slots.size());
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

std::string format_number(double v) { return fmt::format("{:.11e}", v); }

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kCsvHeader << "\r\n";
  for (const auto& r : rows) {
    out << format_number(r.kappa) << ',' << csv_field(r.convention) << ',' << format_number(r.g)
        << ',' << format_number(r.eps_tilde) << ',' << format_number(r.mu_tilde) << ','
        << format_number(r.radius_m) << ',' << format_number(r.eps_ratio) << ','
        << format_number(r.mu_ratio) << ',' << format_number(r.count_simple) << ','
        << format_number(r.count_sphere) << "\r\n";
  }
}

namespace {

std::string json_string(std::string_view text) {
  std::string out = "\"";
  for (char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

}  // namespace

void write_json(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i == 0 ? "\n" : ",\n") << "  {\"kappa\": " << format_number(r.kappa)
        << ", \"convention\": " << json_string(r.convention) << ", \"g\": " << format_number(r.g)
        << ", \"eps_tilde\": " << format_number(r.eps_tilde)
        << ", \"mu_tilde\": " << format_number(r.mu_tilde)
        << ", \"radius_m\": " << format_number(r.radius_m)
        << ", \"eps_ratio\": " << format_number(r.eps_ratio)
        << ", \"mu_ratio\": " << format_number(r.mu_ratio)
        << ", \"count_simple\": " << format_number(r.count_simple)
        << ", \"count_sphere\": " << format_number(r.count_sphere) << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void write_svg(std::ostream& out, const std::vector<ReportRow>& rows) {
  constexpr double kWidth = 800;
  constexpr double kHeight = 500;
  constexpr double kLeft = 80;
  constexpr double kRight = 170;
  constexpr double kTop = 40;
  constexpr double kBottom = 60;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  // Series in order of first appearance, restricted to the first g factor.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  const double g0 = rows.empty() ? 2.0 : rows.front().g;
  for (const auto& r : rows) {
    if (r.g != g0) continue;
    if (!series.contains(r.convention)) order.push_back(r.convention);
    series[r.convention].emplace_back(r.kappa, r.eps_ratio);
  }

  double x_min = 0, x_max = 1, y_lo = 1, y_hi = 1;
  if (!rows.empty()) {
    x_min = x_max = rows.front().kappa;
    for (const auto& r : rows) {
      x_min = std::min(x_min, r.kappa);
      x_max = std::max(x_max, r.kappa);
      if (r.eps_ratio > 0) {
        y_lo = std::min(y_lo, r.eps_ratio);
        y_hi = std::max(y_hi, r.eps_ratio);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  const double dec_lo = std::floor(std::log10(y_lo));
  const double dec_hi = std::max(std::ceil(std::log10(y_hi)), dec_lo + 1);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) {
    return kTop + (dec_hi - std::log10(y)) / (dec_hi - dec_lo) * plot_h;
  };
  const auto f = [](double v) { return fmt::format("{:.2f}", v); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";

  // Axes.
  out << "    <line x1=\"" << f(kLeft) << "\" y1=\"" << f(kTop + plot_h) << "\" x2=\""
      << f(kLeft + plot_w) << "\" y2=\"" << f(kTop + plot_h) << "\" stroke=\"black\"/>\n"
      << "    <line x1=\"" << f(kLeft) << "\" y1=\"" << f(kTop) << "\" x2=\"" << f(kLeft)
      << "\" y2=\"" << f(kTop + plot_h) << "\" stroke=\"black\"/>\n";

  constexpr int kXTicks = 6;
  for (int i = 0; i <= kXTicks; ++i) {
    const double x = x_min + (x_max - x_min) * i / kXTicks;
    out << "    <line x1=\"" << f(px(x)) << "\" y1=\"" << f(kTop + plot_h) << "\" x2=\""
        << f(px(x)) << "\" y2=\"" << f(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
        << "    <text x=\"" << f(px(x)) << "\" y=\"" << f(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\">" << fmt::format("{:.3g}", x) << "</text>\n";
  }
  for (double d = dec_lo; d <= dec_hi; d += 1.0) {
    const double y = std::pow(10.0, d);
    out << "    <line x1=\"" << f(kLeft - 5) << "\" y1=\"" << f(py(y)) << "\" x2=\"" << f(kLeft)
        << "\" y2=\"" << f(py(y)) << "\" stroke=\"black\"/>\n"
        << "    <text x=\"" << f(kLeft - 8) << "\" y=\"" << f(py(y) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  out << "    <text x=\"" << f(kLeft + plot_w / 2) << "\" y=\"" << f(kHeight - 15)
      << "\" text-anchor=\"middle\">gap ratio E_gap / m c^2</text>\n"
      << "    <text x=\"20\" y=\"" << f(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << f(kTop + plot_h / 2) << ")\">eps~ / eps0</text>\n";

  // Measured eps0.
  out << "    <line x1=\"" << f(kLeft) << "\" y1=\"" << f(py(1.0)) << "\" x2=\""
      << f(kLeft + plot_w) << "\" y2=\"" << f(py(1.0))
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

  for (std::size_t i = 0; i < order.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    out << "    <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[order[i]]) {
      if (!(y > 0)) continue;
      out << (first ? "" : " ") << f(px(x)) << ',' << f(py(y));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kTop + 20 + 20 * static_cast<double>(i);
    out << "    <line x1=\"" << f(kWidth - kRight + 15) << "\" y1=\"" << f(ly) << "\" x2=\""
        << f(kWidth - kRight + 40) << "\" y2=\"" << f(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "    <text x=\"" << f(kWidth - kRight + 45) << "\" y=\"" << f(ly + 4) << "\">"
        << order[i] << "</text>\n";
  }
  const double ly = kTop + 20 + 20 * static_cast<double>(order.size());
  out << "    <line x1=\"" << f(kWidth - kRight + 15) << "\" y1=\"" << f(ly) << "\" x2=\""
      << f(kWidth - kRight + 40) << "\" y2=\"" << f(ly)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n"
      << "    <text x=\"" << f(kWidth - kRight + 45) << "\" y=\"" << f(ly + 4)
      << "\">measured eps0</text>\n";
  out << "  </g>\n</svg>\n";
}

}  // namespace qvac
