#include "qvac/dimension_check.hpp"

#include "qvac/errors.hpp"
#include "qvac/unit_parser.hpp"
#include "qvac/unit_system.hpp"
#include "qvac/vacuum_model.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace qvac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapRatio = 2.0;

struct CheckDef {
  const char* name;
  const char* formula;
  std::function<Dimension()> expected;
  std::function<Quantity()> evaluate;
};

std::function<Dimension()> unit(const char* text) {
  return [text] { return parse_unit(text).dimension; };
}

std::function<Dimension()> gaussian(QuantityKind kind) {
  return [kind] { return canonical_dimension(kind, UnitSystem::Gaussian); };
}

}  // namespace

std::vector<DimensionCheck> run_dimension_checks(const ConstantRegistry& reg) {
  const VacuumModel model(reg);
  const auto p = OscillatorParams::electron(kGapRatio, reg);
  const auto sphere = [&] {
    auto s = p;
    s.volume = VolumeConvention::sphere();
    return s;
  }();

  const auto E = Quantity(1.0, parse_unit("V / m").dimension);
  const auto B = Quantity(1.0, parse_unit("T").dimension);
  const auto B_rate = Quantity(1.0, parse_unit("T / s").dimension);
  const auto probe = FieldProbe::electric(E);
  const auto one = Quantity::dimensionless(1.0);

  // Shorthands re-read from the registry so corrupted units show up.
  const auto q = [&] { return reg.get("e"); };
  const auto m = [&] { return reg.get("m_e"); };
  const auto hbar = [&] { return reg.get("hbar"); };
  const auto c = [&] { return reg.get("c"); };
  const auto eps0 = [&] { return reg.get("eps0"); };
  const auto w0 = [&] { return model.resonance_frequency(p); };
  const auto r = [&] { return model.radius(p); };
  const auto gap = [&] { return p.energy_gap; };
  const auto alpha = [&] { return q() * q() / (4.0 * kPi * eps0() * hbar() * c()); };
  const auto kappa = [&] { return gap() / (m() * c() * c()); };

  const std::vector<CheckDef> defs = {
      {"polarization", "P = p / V", unit("C / m^2"),
       [&] { return model.induced_dipole_moment(p, probe) / model.effective_volume(p); }},
      {"electric-displacement", "D = eps0 E + P", unit("C / m^2"),
       [&] { return eps0() * E + model.vacuum_polarization(p, probe); }},
      {"oscillator-displacement", "x = q E / (m w0^2)", unit("m"),
       [&] { return q() * E / (m() * w0() * w0()); }},
      {"induced-dipole", "p = q^2 E / (m w0^2)", unit("C m"),
       [&] { return q() * q() * E / (m() * w0() * w0()); }},
      {"vacuum-polarization", "P0 = q^2 E / (m w0^2 r^3)", unit("C / m^2"),
       [&] { return q() * q() * E / (m() * w0() * w0() * r() * r() * r()); }},
      {"permittivity-estimate", "eps~ = q^2 / (m w0^2 r^3)", unit("F / m"),
       [&] { return q() * q() / (m() * w0() * w0() * r() * r() * r()); }},
      {"magnetic-H", "H = B / mu0 - M", unit("A / m"),
       [&] { return B / reg.get("mu0") - model.magnetization(p, B); }},
      {"magnetization", "M = moment / V", unit("A / m"),
       [&] { return model.pair_magnetic_moment(p, B) / model.effective_volume(p); }},
      {"induced-vortex-field", "E_i = -(r/2) dB/dt", unit("V / m"),
       [&] { return VacuumModel::induced_vortex_field(r(), B_rate); }},
      {"angular-momentum-kick", "dJ = q r^2 B / 2", unit("J s"),
       [&] { return q() * r() * r() * B / 2.0; }},
      {"gyromagnetic-moment", "moment = (g q / 2m) J", unit("A m^2"),
       [&] { return p.g_factor * q() / (2.0 * m()) * model.angular_momentum_kick(p, B); }},
      {"pair-magnetic-moment", "moment = q^2 r^2 B / m", unit("A m^2"),
       [&] { return q() * q() * r() * r() * B / m(); }},
      {"permeability-estimate", "mu~ = m r / q^2", unit("N / A^2"),
       [&] { return m() * r() / (q() * q()); }},
      {"light-speed-closure", "c^2 = 1 / (eps~ mu~) = (moment/B) / (p/E)", unit("m^2 / s^2"),
       [&] {
         const auto from_constants =
             one / (model.permittivity_estimate(p) * model.permeability_estimate(p));
         const auto from_dipoles = (model.pair_magnetic_moment(p, B) / B) /
                                   (model.induced_dipole_moment(p, probe) / E);
         require_dimension(from_dipoles, from_constants.dimension(), "dipole-ratio route");
         return from_constants;
       }},
      {"closure-radius", "r = c / w0", unit("m"), [&] { return c() / w0(); }},
      {"fine-structure-permittivity", "eps~ = (E_gap / m c^2)(q^2 / hbar c)", unit("F / m"),
       [&] { return kappa() * q() * q() / (hbar() * c()); }},
      {"alpha-permittivity", "eps~ = 4 pi alpha (E_gap / m c^2) eps0", unit("F / m"),
       [&] { return 4.0 * kPi * alpha() * kappa() * eps0(); }},
      {"total-permittivity", "eps~total = 4 pi alpha (E_gap / m c^2) sum (q_j/e)^2 eps0",
       unit("F / m"),
       [&] {
         const auto sum = Quantity::dimensionless(8.0);
         return 4.0 * kPi * alpha() * kappa() * sum * eps0();
       }},
      {"species-count", "sum (q_j/e)^2 = (1 / 4 pi alpha)(m c^2 / E_gap)", unit("1"),
       [&] { return one / (4.0 * kPi * alpha() * kappa()); }},
      {"sphere-mean-square-radius", "<rho^2> = 2/5 R^2", unit("m^2"),
       [&] { return VacuumModel::mean_square_orbit_radius(model.radius(sphere)); }},
      {"sphere-radius", "R = sqrt(5/2) hbar c / E_gap", unit("m"),
       [&] { return std::sqrt(5.0 / 2.0) * hbar() * c() / gap(); }},
      {"sphere-permittivity", "eps~ = 3 alpha (2/5)^(3/2) (E_gap / m c^2) eps0", unit("F / m"),
       [&] {
         const auto geometry = qty_pow(Quantity::dimensionless(2.0 / 5.0), Rational(3, 2));
         return 3.0 * alpha() * geometry * kappa() * eps0();
       }},
      {"sphere-species-count", "sum (q_j/e)^2 = (1 / 3 alpha)(5/2)^(3/2)(m c^2 / E_gap)",
       unit("1"),
       [&] {
         const auto geometry = qty_pow(Quantity::dimensionless(5.0 / 2.0), Rational(3, 2));
         return geometry / (3.0 * alpha() * kappa());
       }},
      {"critical-field", "E_S = m^2 c^3 / (e hbar)", unit("V / m"),
       [&] { return m() * m() * c() * c() * c() / (q() * hbar()); }},
      {"gaussian-displacement", "D = E + 4 pi P (Gaussian)",
       gaussian(QuantityKind::ElectricField),
       [&] {
         const auto e_g = convert_system(E, QuantityKind::ElectricField, UnitSystem::Gaussian);
         const auto p_g = convert_system(eps0() * E, QuantityKind::Polarization, UnitSystem::Gaussian);
         return e_g + 4.0 * kPi * p_g;
       }},
      {"gaussian-alpha", "alpha = e^2 / (hbar c) (Gaussian)", gaussian(QuantityKind::Dimensionless),
       [&] {
         const auto hz = Quantity(1.0, dims::frequency());
         const auto e_g = convert_system(q(), QuantityKind::Charge, UnitSystem::Gaussian);
         const auto hbar_g = convert_system(hbar() * hz, QuantityKind::Energy, UnitSystem::Gaussian) /
                             convert_system(hz, QuantityKind::Frequency, UnitSystem::Gaussian);
         const auto c_g = convert_system(c() / hz, QuantityKind::Length, UnitSystem::Gaussian) *
                          convert_system(hz, QuantityKind::Frequency, UnitSystem::Gaussian);
         return e_g * e_g / (hbar_g * c_g);
       }},
  };

  std::vector<DimensionCheck> out;
  out.reserve(defs.size());
  for (const auto& s : defs) {
    DimensionCheck check{s.name, s.formula, {}, {}, false, {}};
    try {
      const auto expected = s.expected();
      check.expected = format_dimension(expected);
      const auto value = s.evaluate();
      check.actual = format_dimension(value.dimension());
      check.passed = value.dimension() == expected;
    } catch (const std::exception& err) {
      check.detail = err.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace qvac
