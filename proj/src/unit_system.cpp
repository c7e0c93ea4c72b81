#include "qvac/unit_system.hpp"

#include "qvac/errors.hpp"


namespace qvac {

namespace {

// Conventional constants of the SI <-> Gaussian mapping (exact by definition).
constexpr double kLightSpeed = 299792458.0;                     // m/s
constexpr double kLightSpeedCgs = kLightSpeed * 100.0;          // cm/s
constexpr double kStatcoulombPerCoulomb = kLightSpeed * 10.0;   // 2.998e9

Dimension gaussian(Rational length, Rational mass, Rational time) {
  return Dimension(Dimension::Exponents{length, mass, time, 0, 0, 0, 0});
}

struct KindEntry {
  Dimension si;
  Dimension gauss;
  double factor;
};

KindEntry entry(QuantityKind kind) {
  using R = Rational;
  switch (kind) {
    case QuantityKind::Charge:
      return {dims::charge(), gaussian(R(3, 2), R(1, 2), -1), kStatcoulombPerCoulomb};
    case QuantityKind::ElectricField:
      // 1 statV/cm = 1e-6 c V/m
      return {dims::electric_field(), gaussian(R(-1, 2), R(1, 2), -1), 1e6 / kLightSpeedCgs};
    case QuantityKind::MagneticField:
      return {dims::magnetic_field(), gaussian(R(-1, 2), R(1, 2), -1), 1e4};
    case QuantityKind::ElectricDipoleMoment:
      return {dims::electric_dipole(), gaussian(R(5, 2), R(1, 2), -1),
              kStatcoulombPerCoulomb * 100.0};
    case QuantityKind::MagneticDipoleMoment:
      return {dims::magnetic_dipole(), gaussian(R(5, 2), R(1, 2), -1), 1e3};
    case QuantityKind::Polarization:
      return {dims::polarization(), gaussian(R(-1, 2), R(1, 2), -1),
              kStatcoulombPerCoulomb * 1e-4};
    case QuantityKind::Magnetization:
      return {dims::magnetization(), gaussian(R(-1, 2), R(1, 2), -1), 1e-3};
    case QuantityKind::Permittivity:
      // eps0 -> 1/(4 pi), with eps0 = 1/(mu0 c^2) and mu0 = 4 pi 1e-7
      return {dims::permittivity(), Dimension::dimensionless(),
              1e-7 * kLightSpeed * kLightSpeed};
    case QuantityKind::Permeability:
      // mu0 -> 4 pi
      return {dims::permeability(), Dimension::dimensionless(), 1e7};
    case QuantityKind::Energy:
      return {dims::energy(), gaussian(2, 1, -2), 1e7};
    case QuantityKind::Length:
      return {dims::length(), gaussian(1, 0, 0), 1e2};
    case QuantityKind::Mass:
      return {dims::mass(), gaussian(0, 1, 0), 1e3};
    case QuantityKind::Frequency:
      return {dims::frequency(), gaussian(0, 0, -1), 1.0};
    case QuantityKind::Dimensionless:
      return {Dimension::dimensionless(), Dimension::dimensionless(), 1.0};
  }
  throw UnsupportedKind("unsupported quantity kind " +
                        std::to_string(static_cast<int>(kind)));
}

}  // namespace

std::string_view to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::Charge: return "Charge";
    case QuantityKind::ElectricField: return "ElectricField";
    case QuantityKind::MagneticField: return "MagneticField";
    case QuantityKind::ElectricDipoleMoment: return "ElectricDipoleMoment";
    case QuantityKind::MagneticDipoleMoment: return "MagneticDipoleMoment";
    case QuantityKind::Polarization: return "Polarization";
    case QuantityKind::Magnetization: return "Magnetization";
    case QuantityKind::Permittivity: return "Permittivity";
    case QuantityKind::Permeability: return "Permeability";
    case QuantityKind::Energy: return "Energy";
    case QuantityKind::Length: return "Length";
    case QuantityKind::Mass: return "Mass";
    case QuantityKind::Frequency: return "Frequency";
    case QuantityKind::Dimensionless: return "Dimensionless";
  }
  return "Unknown";
}

Dimension canonical_dimension(QuantityKind kind, UnitSystem system) {
  const auto e = entry(kind);
  return system == UnitSystem::SI ? e.si : e.gauss;
}

double si_to_gaussian_factor(QuantityKind kind) { return entry(kind).factor; }

Quantity convert_system(const Quantity& q, QuantityKind kind, UnitSystem target) {
  const auto e = entry(kind);
  const Dimension& expected = q.system() == UnitSystem::SI ? e.si : e.gauss;
  if (q.dimension() != expected) {
    throw KindMismatch("quantity [" + debug_string(q.dimension()) + "] is not a " +
                       std::string(to_string(kind)) + " in " + to_string(q.system()) +
                       " units");
  }
  if (q.system() == target) return q;
  if (target == UnitSystem::Gaussian) {
    return Quantity(q.magnitude() * e.factor, e.gauss, UnitSystem::Gaussian);
  }
  return Quantity(q.magnitude() / e.factor, e.si, UnitSystem::SI);
}

}  // namespace qvac
