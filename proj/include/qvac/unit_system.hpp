#pragma once

#include "qvac/quantity.hpp"

#include <array>
#include <string_view>

namespace qvac {

/// Physical kinds with a defined SI <-> Gaussian conversion.
///
/// Gaussian dimensions are not a one-to-one image of SI dimensions, so
/// conversion is keyed by kind rather than by raw dimension.
enum class QuantityKind {
  Charge,
  ElectricField,
  MagneticField,
  ElectricDipoleMoment,
  MagneticDipoleMoment,
  Polarization,
  Magnetization,
  Permittivity,
  Permeability,
  Energy,
  Length,
  Mass,
  Frequency,
  Dimensionless,
};

inline constexpr std::array kAllQuantityKinds = {
    QuantityKind::Charge,        QuantityKind::ElectricField,
    QuantityKind::MagneticField, QuantityKind::ElectricDipoleMoment,
    QuantityKind::MagneticDipoleMoment, QuantityKind::Polarization,
    QuantityKind::Magnetization, QuantityKind::Permittivity,
    QuantityKind::Permeability,  QuantityKind::Energy,
    QuantityKind::Length,        QuantityKind::Mass,
    QuantityKind::Frequency,     QuantityKind::Dimensionless,
};

std::string_view to_string(QuantityKind kind);

/// Canonical dimension of `kind` in `system`.
Dimension canonical_dimension(QuantityKind kind, UnitSystem system);

/// Multiply an SI magnitude by this to get the Gaussian magnitude.
///
/// Permittivity and permeability are mapped onto the convention in which
/// the vacuum permittivity becomes 1/(4 pi) and the vacuum permeability
/// 4 pi, i.e. both become dimensionless in Gaussian form.
double si_to_gaussian_factor(QuantityKind kind);

/// Re-expresses q in the `target` system. Throws KindMismatch when q's
/// dimension is not the canonical one for `kind` in q's own system.
Quantity convert_system(const Quantity& q, QuantityKind kind, UnitSystem target);

}  // namespace qvac
