#pragma once

#include "qvac/constants.hpp"
#include "qvac/quantity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qvac {

enum class RadiusRule { Compton, HalfCompton, MaxwellConsistent, Custom };

/// How the effective volume per virtual pair is assigned.
class VolumeConvention {
 public:
  enum class Shape { CubeOfRadius, SphereUniform };

  /// Cube V = r^3 with r from `rule` (not Custom).
  static VolumeConvention cube(RadiusRule rule);
  /// Cube with an explicit radius; throws InvalidParams unless positive length.
  static VolumeConvention custom_cube(const Quantity& radius);
  /// Uniformly charged ball V = 4 pi/3 R^3 with the Maxwell-consistent R.
  static VolumeConvention sphere();

  Shape shape() const { return shape_; }
  RadiusRule rule() const { return rule_; }
  const std::optional<Quantity>& custom_radius() const { return custom_radius_; }

  bool is_maxwell_consistent() const {
    return shape_ == Shape::SphereUniform || rule_ == RadiusRule::MaxwellConsistent;
  }

  std::string name() const;

 private:
  VolumeConvention(Shape shape, RadiusRule rule, std::optional<Quantity> radius)
      : shape_(shape), rule_(rule), custom_radius_(std::move(radius)) {}

  Shape shape_;
  RadiusRule rule_;
  std::optional<Quantity> custom_radius_;
};

/// Inputs of the virtual-pair oscillator.
struct OscillatorParams {
  Quantity mass;
  Quantity charge;
  Quantity energy_gap;  // hbar * omega0
  double g_factor = 2.0;
  VolumeConvention volume = VolumeConvention::cube(RadiusRule::MaxwellConsistent);

  /// Pair of particle `mass` and `charge` with energy gap `gap_ratio` * m c^2.
  static OscillatorParams with_gap_ratio(const Quantity& mass, const Quantity& charge,
                                         double gap_ratio, const ConstantRegistry& registry);
  /// Electron-positron pair.
  static OscillatorParams electron(double gap_ratio, const ConstantRegistry& registry);

  /// Throws InvalidParams or DimensionMismatch.
  void validate() const;
};

/// Probe fields. Defaults are zero (static, field-free).
struct FieldProbe {
  Quantity E = Quantity(0.0, dims::electric_field());
  Quantity B = Quantity(0.0, dims::magnetic_field());
  Quantity omega = Quantity(0.0, dims::frequency());

  static FieldProbe electric(const Quantity& e) {
    FieldProbe p;
    p.E = e;
    return p;
  }
};

struct VacuumResponse {
  Quantity eps_tilde;
  Quantity mu_tilde;
  Quantity radius;  // r for cubes, R for the sphere
  Quantity implied_light_speed;
  double eps_ratio;
  double mu_ratio;
};

struct FineStructureForm {
  Quantity eps_tilde;
  double eps_ratio;
};

/// Collects regime warnings raised while evaluating the model.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Weak-field and quasi-static thresholds, relative to E_S and omega0.
inline constexpr double kWeakFieldWarnFraction = 1e-2;
inline constexpr double kQuasiStaticWarnFraction = 1e-1;

/// Semi-classical linear response of the vacuum to weak, slow fields.
///
/// Every virtual pair is a harmonic oscillator of natural frequency
/// omega0 = E_gap / hbar; its induced electric and magnetic dipoles per
/// effective volume give estimates of eps0 and mu0. Estimators return
/// positive magnitudes. All members are const and the object may be shared
/// across threads.
class VacuumModel {
 public:
  explicit VacuumModel(const ConstantRegistry& registry);

  const ConstantRegistry& registry() const { return registry_; }

  Quantity resonance_frequency(const OscillatorParams& p) const;
  /// m^2 c^3 / (|q| hbar) for the pair's own particle.
  Quantity critical_field(const OscillatorParams& p) const;

  /// Throws FieldTooStrong (E >= E_S) or NotQuasiStatic (omega >= omega0);
  /// records warnings above the soft thresholds.
  void check_probe(const OscillatorParams& p, const FieldProbe& probe,
                   Diagnostics* diag = nullptr) const;

  // Electric sector.
  Quantity oscillator_displacement(const OscillatorParams& p, const FieldProbe& probe,
                                   Diagnostics* diag = nullptr) const;
  Quantity induced_dipole_moment(const OscillatorParams& p, const FieldProbe& probe,
                                 Diagnostics* diag = nullptr) const;
  Quantity vacuum_polarization(const OscillatorParams& p, const FieldProbe& probe,
                               Diagnostics* diag = nullptr) const;
  Quantity permittivity_estimate(const OscillatorParams& p) const;
  /// D = eps0 E + P.
  Quantity electric_displacement(const Quantity& E, const Quantity& P) const;

  // Geometry.
  /// r for cube conventions, R for the sphere.
  Quantity radius(const OscillatorParams& p) const;
  Quantity effective_volume(const OscillatorParams& p) const;
  /// Mean squared orbit radius: r^2 for cubes, 2/5 R^2 for the sphere.
  Quantity orbit_area(const OscillatorParams& p) const;
  static Quantity mean_square_orbit_radius(const Quantity& R);

  // Magnetic sector.
  /// H = B / mu0 - M.
  Quantity magnetic_H(const Quantity& B, const Quantity& M) const;
  /// Signed E_i = -(r/2) dB/dt; opposes the change of B.
  static Quantity induced_vortex_field(const Quantity& r, const Quantity& B_rate);
  Quantity angular_momentum_kick(const OscillatorParams& p, const Quantity& B) const;
  /// Electron plus positron moment: 2 (g q / 2m) dJ.
  Quantity pair_magnetic_moment(const OscillatorParams& p, const Quantity& B) const;
  Quantity magnetization(const OscillatorParams& p, const Quantity& B) const;
  Quantity permeability_estimate(const OscillatorParams& p) const;

  // Closure.
  /// Response for the convention exactly as given.
  VacuumResponse evaluate(const OscillatorParams& p) const;
  /// Copy of p whose radius solves eps~ mu~ = 1/c^2 within its shape family.
  OscillatorParams closed(const OscillatorParams& p) const;
  VacuumResponse maxwell_closure(const OscillatorParams& p) const;

  /// Closed-form eps~ = (E_gap / m c^2)(q^2 / hbar c) and its ratio
  /// 4 pi alpha_q E_gap / m c^2 to eps0, scaled by (g/2)^(3/2) when g != 2.
  /// Throws ConventionMismatch unless p is a Maxwell-consistent cube.
  FineStructureForm fine_structure_form(const OscillatorParams& p) const;

 private:
  ConstantRegistry registry_;
  Quantity hbar_;
  Quantity c_;
  Quantity eps0_;
  Quantity mu0_;
};

}  // namespace qvac
