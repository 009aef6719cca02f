#ifndef EXOLIM_COLLAPSE_HPP
#define EXOLIM_COLLAPSE_HPP

#include "exolim/constants.hpp"
#include "exolim/spectrum.hpp"

#include <string_view>

namespace exolim {

/// How the collapse noise couples to the electron.
enum class Coupling {
  NonMassProportional,
  /// Noise couples to mass density; emission suppressed by (m_e/m_N)^2.
  MassProportional,
};

Coupling parse_coupling(std::string_view tag);
std::string_view to_string(Coupling c) noexcept;

inline constexpr double kDefaultCorrelationLengthM = 1e-7;

/// Photon energies above this break the non-relativistic emission formula.
inline constexpr double kNonRelativisticLimitKev = 100.0;

struct CslParams {
  double lambda_rate = 0.0; ///< s^-1
  double correlation_length_m = kDefaultCorrelationLengthM;
  Coupling coupling = Coupling::NonMassProportional;
  double charge_sq_over_4pi = kChargeSqOver4PiAdler;

  void validate() const;
};

/// Detector exposure, used to turn a per-electron rate into spectrum units.
/// Germanium defaults; four valence electrons per atom are treated as
/// quasi-free emitters.
struct ExposureConfig {
  double detector_mass_kg = 0.0;
  double atomic_mass_g_per_mol = 72.63;
  double emitting_electrons_per_atom = 4.0;
  double atomic_number = 32.0;
  double live_time_days = 0.0;

  void validate() const;
};

/// Spontaneous emission rate per electron per keV at photon energy E (keV),
/// in s^-1 keV^-1:
///
///   (e^2/4pi) / pi * lambda / (a^2 m_e^2 E)
///
/// with a and m_e in natural keV units, times (m_e/m_N)^2 for the
/// mass-proportional coupling. Energies outside (0, 100 keV) throw unless
/// `enforce_non_relativistic` is false.
double csl_rate_density(double e_gamma_kev, const CslParams& params,
                        const PhysicalConstants& constants = default_constants(),
                        bool enforce_non_relativistic = true);

/// E * csl_rate_density(E): the per-electron coefficient of 1/E, in s^-1.
double csl_rate_coefficient(const CslParams& params,
                            const PhysicalConstants& constants = default_constants());

/// mass / atomic mass * N_A * emitting electrons per atom.
double electrons_in_detector(const ExposureConfig& exposure,
                             const PhysicalConstants& constants = default_constants());

/// Amplitude of alpha/E in the units of a spectrum with the given
/// normalization, for the rate implied by `params`.
double alpha_from_lambda(const CslParams& params, const ExposureConfig& exposure,
                         SpectrumUnit unit,
                         const PhysicalConstants& constants = default_constants());

/// Inverse of alpha_from_lambda. `model.lambda_rate` is ignored; its
/// coupling, correlation length and charge normalization are used.
double lambda_from_alpha(double alpha, const CslParams& model, const ExposureConfig& exposure,
                         SpectrumUnit unit,
                         const PhysicalConstants& constants = default_constants());

inline double lambda_from_alpha(double alpha, Coupling coupling, const ExposureConfig& exposure,
                                SpectrumUnit unit,
                                const PhysicalConstants& constants = default_constants()) {
  CslParams model;
  model.coupling = coupling;
  return lambda_from_alpha(alpha, model, exposure, unit, constants);
}

} // namespace exolim

#endif
