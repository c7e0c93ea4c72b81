#include "qvac/vacuum_model.hpp"

#include "qvac/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qvac {

namespace {

constexpr double kPi = std::numbers::pi;
// The positron contributes as much as the electron to the magnetic response.
constexpr double kPairFactor = 2.0;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void require_non_negative(const Quantity& q, const char* what) {
  if (q.magnitude() < 0.0) throw InvalidParams(std::string(what) + " must be non-negative");
}

// sqrt(g/2): the closure radius shrinks by this factor relative to c/omega0.
double g_scale(const OscillatorParams& p) { return std::sqrt(p.g_factor / 2.0); }

}  // namespace

VolumeConvention VolumeConvention::cube(RadiusRule rule) {
  if (rule == RadiusRule::Custom) {
    throw InvalidParams("custom radius requires VolumeConvention::custom_cube");
  }
  return VolumeConvention(Shape::CubeOfRadius, rule, std::nullopt);
}

VolumeConvention VolumeConvention::custom_cube(const Quantity& radius) {
  require_dimension(radius, dims::length(), "custom radius");
  if (radius.magnitude() <= 0.0) throw InvalidParams("custom radius must be positive");
  return VolumeConvention(Shape::CubeOfRadius, RadiusRule::Custom, radius);
}

VolumeConvention VolumeConvention::sphere() {
  return VolumeConvention(Shape::SphereUniform, RadiusRule::MaxwellConsistent, std::nullopt);
}

std::string VolumeConvention::name() const {
  if (shape_ == Shape::SphereUniform) return "sphere";
  switch (rule_) {
    case RadiusRule::Compton: return "compton";
    case RadiusRule::HalfCompton: return "half-compton";
    case RadiusRule::MaxwellConsistent: return "cube";
    case RadiusRule::Custom: return "custom";
  }
  return "unknown";
}

OscillatorParams OscillatorParams::with_gap_ratio(const Quantity& mass, const Quantity& charge,
                                                  double gap_ratio,
                                                  const ConstantRegistry& registry) {
  if (!(gap_ratio > 0.0)) throw InvalidParams("gap ratio must be positive");
  const auto& c = registry.get("c");
  OscillatorParams p{mass, charge, gap_ratio * mass * c * c};
  p.validate();
  return p;
}

OscillatorParams OscillatorParams::electron(double gap_ratio, const ConstantRegistry& registry) {
  return with_gap_ratio(registry.get("m_e"), registry.get("e"), gap_ratio, registry);
}

void OscillatorParams::validate() const {
  require_dimension(mass, dims::mass(), "mass");
  require_dimension(charge, dims::charge(), "charge");
  require_dimension(energy_gap, dims::energy(), "energy gap");
  if (mass.magnitude() <= 0.0) throw InvalidParams("mass must be positive");
  if (charge.magnitude() == 0.0) throw InvalidParams("charge must be non-zero");
  if (energy_gap.magnitude() <= 0.0) throw InvalidParams("energy gap must be positive");
  if (!(g_factor > 0.0) || !std::isfinite(g_factor)) {
    throw InvalidParams("g factor must be positive");
  }
}

VacuumModel::VacuumModel(const ConstantRegistry& registry)
    : registry_(registry),
      hbar_(registry.get("hbar")),
      c_(registry.get("c")),
      eps0_(registry.get("eps0")),
      mu0_(registry.get("mu0")) {}

Quantity VacuumModel::resonance_frequency(const OscillatorParams& p) const {
  p.validate();
  return p.energy_gap / hbar_;
}

Quantity VacuumModel::critical_field(const OscillatorParams& p) const {
  return p.mass * p.mass * c_ * c_ * c_ / (abs(p.charge) * hbar_);
}

void VacuumModel::check_probe(const OscillatorParams& p, const FieldProbe& probe,
                              Diagnostics* diag) const {
  require_dimension(probe.E, dims::electric_field(), "probe E");
  require_dimension(probe.B, dims::magnetic_field(), "probe B");
  require_dimension(probe.omega, dims::frequency(), "probe omega");
  require_non_negative(probe.E, "E");
  require_non_negative(probe.B, "B");
  require_non_negative(probe.omega, "omega");

  const double field_fraction = (probe.E / critical_field(p)).value();
  if (field_fraction >= 1.0) {
    throw FieldTooStrong("E = " + sci(probe.E.magnitude()) + " V/m is not below the critical field " +
                         sci(critical_field(p).magnitude()) + " V/m");
  }
  if (field_fraction > kWeakFieldWarnFraction && diag != nullptr) {
    diag->warn("weak-field: E is " + sci(field_fraction) +
               " of the critical field; linear response may be inaccurate");
  }

  const double freq_fraction = (probe.omega / resonance_frequency(p)).value();
  if (freq_fraction >= 1.0) {
    throw NotQuasiStatic("drive frequency is not below the resonance omega0 = " +
                         sci(resonance_frequency(p).magnitude()) + " rad/s");
  }
  if (freq_fraction > kQuasiStaticWarnFraction && diag != nullptr) {
    diag->warn("quasi-static: omega is " + sci(freq_fraction) + " of omega0");
  }
}

Quantity VacuumModel::oscillator_displacement(const OscillatorParams& p, const FieldProbe& probe,
                                              Diagnostics* diag) const {
  check_probe(p, probe, diag);
  const auto w0 = resonance_frequency(p);
  return abs(p.charge) * probe.E / (p.mass * w0 * w0);
}

Quantity VacuumModel::induced_dipole_moment(const OscillatorParams& p, const FieldProbe& probe,
                                            Diagnostics* diag) const {
  return abs(p.charge) * oscillator_displacement(p, probe, diag);
}

Quantity VacuumModel::vacuum_polarization(const OscillatorParams& p, const FieldProbe& probe,
                                          Diagnostics* diag) const {
  return induced_dipole_moment(p, probe, diag) / effective_volume(p);
}

Quantity VacuumModel::permittivity_estimate(const OscillatorParams& p) const {
  const auto w0 = resonance_frequency(p);
  return p.charge * p.charge / (p.mass * w0 * w0 * effective_volume(p));
}

Quantity VacuumModel::electric_displacement(const Quantity& E, const Quantity& P) const {
  return eps0_ * E + P;
}

Quantity VacuumModel::radius(const OscillatorParams& p) const {
  p.validate();
  const auto& conv = p.volume;
  if (conv.shape() == VolumeConvention::Shape::SphereUniform) {
    return std::sqrt(5.0 / 2.0) * c_ / (resonance_frequency(p) * g_scale(p));
  }
  switch (conv.rule()) {
    case RadiusRule::Compton: return compton_wavelength(p.mass, registry_);
    case RadiusRule::HalfCompton: return compton_wavelength(p.mass, registry_) / 2.0;
    case RadiusRule::MaxwellConsistent: return c_ / (resonance_frequency(p) * g_scale(p));
    case RadiusRule::Custom: return *conv.custom_radius();
  }
  throw InvalidParams("unknown radius rule");
}

Quantity VacuumModel::effective_volume(const OscillatorParams& p) const {
  const auto r = radius(p);
  const auto cube = r * r * r;
  if (p.volume.shape() == VolumeConvention::Shape::SphereUniform) return (4.0 * kPi / 3.0) * cube;
  return cube;
}

Quantity VacuumModel::orbit_area(const OscillatorParams& p) const {
  const auto r = radius(p);
  if (p.volume.shape() == VolumeConvention::Shape::SphereUniform) {
    return mean_square_orbit_radius(r);
  }
  return r * r;
}

Quantity VacuumModel::mean_square_orbit_radius(const Quantity& R) {
  require_dimension(R, dims::length(), "sphere radius");
  if (R.magnitude() <= 0.0) throw InvalidParams("sphere radius must be positive");
  return (2.0 / 5.0) * R * R;
}

Quantity VacuumModel::magnetic_H(const Quantity& B, const Quantity& M) const {
  return B / mu0_ - M;
}

Quantity VacuumModel::induced_vortex_field(const Quantity& r, const Quantity& B_rate) {
  require_dimension(r, dims::length(), "orbit radius");
  require_dimension(B_rate, dims::magnetic_field() / dims::time(), "dB/dt");
  if (r.magnitude() <= 0.0) throw InvalidParams("orbit radius must be positive");
  return -(r / 2.0) * B_rate;
}

Quantity VacuumModel::angular_momentum_kick(const OscillatorParams& p, const Quantity& B) const {
  require_dimension(B, dims::magnetic_field(), "B");
  require_non_negative(B, "B");
  return abs(p.charge) * orbit_area(p) * B / 2.0;
}

Quantity VacuumModel::pair_magnetic_moment(const OscillatorParams& p, const Quantity& B) const {
  const auto gyromagnetic = p.g_factor * abs(p.charge) / (2.0 * p.mass);
  return kPairFactor * gyromagnetic * angular_momentum_kick(p, B);
}

Quantity VacuumModel::magnetization(const OscillatorParams& p, const Quantity& B) const {
  return pair_magnetic_moment(p, B) / effective_volume(p);
}

Quantity VacuumModel::permeability_estimate(const OscillatorParams& p) const {
  // B / M with M = 2 (g q / 2m)(q <rho^2> B / 2) / V.
  return 2.0 * p.mass * effective_volume(p) / (p.g_factor * p.charge * p.charge * orbit_area(p));
}

VacuumResponse VacuumModel::evaluate(const OscillatorParams& p) const {
  const auto eps = permittivity_estimate(p);
  const auto mu = permeability_estimate(p);
  const auto one = Quantity::dimensionless(1.0);
  return VacuumResponse{
      eps,
      mu,
      radius(p),
      one / sqrt(eps * mu),
      (eps / eps0_).value(),
      (mu / mu0_).value(),
  };
}

OscillatorParams VacuumModel::closed(const OscillatorParams& p) const {
  OscillatorParams out = p;
  if (p.volume.shape() == VolumeConvention::Shape::CubeOfRadius) {
    out.volume = VolumeConvention::cube(RadiusRule::MaxwellConsistent);
  }
  return out;
}

VacuumResponse VacuumModel::maxwell_closure(const OscillatorParams& p) const {
  return evaluate(closed(p));
}

FineStructureForm VacuumModel::fine_structure_form(const OscillatorParams& p) const {
  if (p.volume.shape() != VolumeConvention::Shape::CubeOfRadius ||
      p.volume.rule() != RadiusRule::MaxwellConsistent) {
    throw ConventionMismatch("the fine-structure form holds only for the Maxwell-consistent cube, not '" +
                             p.volume.name() + "'");
  }
  p.validate();
  const double gap_ratio = (p.energy_gap / (p.mass * c_ * c_)).value();
  const double g_correction = std::pow(p.g_factor / 2.0, 1.5);
  const auto q2 = p.charge * p.charge;
  const auto eps = gap_ratio * g_correction * q2 / (hbar_ * c_);
  const double alpha_q = (q2 / (4.0 * kPi * eps0_ * hbar_ * c_)).value();
  return FineStructureForm{eps, 4.0 * kPi * alpha_q * gap_ratio * g_correction};
}

}  // namespace qvac
