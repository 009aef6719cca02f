#include "exolim/collapse.hpp"

#include "exolim/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace exolim {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

// Number of electrons times the observation time, divided by whatever the
// spectrum normalization divides out. Multiplies a per-electron rate (s^-1)
// into spectrum units.
double exposure_factor(const ExposureConfig& exposure, SpectrumUnit unit,
                       const PhysicalConstants& constants) {
  exposure.validate();
  const double electrons = electrons_in_detector(exposure, constants);
  switch (unit) {
  case SpectrumUnit::Counts:
  case SpectrumUnit::CountsPerKev:
    return electrons * exposure.live_time_days * kSecondsPerDay;
  case SpectrumUnit::CountsPerDay:
  case SpectrumUnit::CountsPerKevDay:
    return electrons * kSecondsPerDay;
  case SpectrumUnit::CountsPerKgDay:
  case SpectrumUnit::CountsPerKevKgDay:
    return electrons / exposure.detector_mass_kg * kSecondsPerDay;
  }
  throw ConfigError("unknown spectrum unit");
}

} // namespace

Coupling parse_coupling(std::string_view tag) {
  if (tag == "nmp" || tag == "non-mass-proportional") return Coupling::NonMassProportional;
  if (tag == "mp" || tag == "mass-proportional") return Coupling::MassProportional;
  throw ConfigError("unknown coupling '" + std::string(tag) + "' (expected nmp or mp)");
}

std::string_view to_string(Coupling c) noexcept {
  return c == Coupling::MassProportional ? "mass-proportional" : "non-mass-proportional";
}

void CslParams::validate() const {
  if (!(lambda_rate >= 0.0) || !std::isfinite(lambda_rate))
    throw DomainError("lambda_rate must be finite and non-negative");
  if (!positive(correlation_length_m)) throw DomainError("correlation length must be positive");
  if (!positive(charge_sq_over_4pi)) throw DomainError("charge normalization must be positive");
}

void ExposureConfig::validate() const {
  if (!positive(detector_mass_kg)) throw ConfigError("detector_mass_kg must be positive");
  if (!positive(atomic_mass_g_per_mol)) throw ConfigError("atomic_mass_g_per_mol must be positive");
  if (!positive(emitting_electrons_per_atom))
    throw ConfigError("emitting_electrons_per_atom must be positive");
  if (!positive(atomic_number)) throw ConfigError("atomic_number must be positive");
  if (emitting_electrons_per_atom > atomic_number)
    throw ConfigError("emitting_electrons_per_atom exceeds the atomic number");
  if (!positive(live_time_days)) throw ConfigError("live_time_days must be positive");
}

double csl_rate_coefficient(const CslParams& params, const PhysicalConstants& constants) {
  params.validate();
  const double a = length_to_inverse_kev(params.correlation_length_m, constants);
  const double m = constants.electron_mass_kev();
  double coeff = params.charge_sq_over_4pi / std::numbers::pi * params.lambda_rate / (a * a * m * m);
  if (params.coupling == Coupling::MassProportional)
    coeff *= constants.electron_nucleon_mass_ratio_sq();
  return coeff;
}

double csl_rate_density(double e_gamma_kev, const CslParams& params,
                        const PhysicalConstants& constants, bool enforce_non_relativistic) {
  if (!positive(e_gamma_kev))
    throw DomainError("photon energy must be positive, got " + std::to_string(e_gamma_kev));
  if (enforce_non_relativistic && !(e_gamma_kev < kNonRelativisticLimitKev))
    throw DomainError("photon energy " + std::to_string(e_gamma_kev) +
                      " keV violates the non-relativistic bound E < 100 keV");
  return csl_rate_coefficient(params, constants) / e_gamma_kev;
}

double electrons_in_detector(const ExposureConfig& exposure, const PhysicalConstants& constants) {
  if (!positive(exposure.detector_mass_kg) || !positive(exposure.atomic_mass_g_per_mol) ||
      !positive(exposure.emitting_electrons_per_atom))
    throw ConfigError("invalid exposure for electron count");
  const double grams = exposure.detector_mass_kg * 1000.0;
  return grams / exposure.atomic_mass_g_per_mol * constants.avogadro() *
         exposure.emitting_electrons_per_atom;
}

double alpha_from_lambda(const CslParams& params, const ExposureConfig& exposure,
                         SpectrumUnit unit, const PhysicalConstants& constants) {
  return csl_rate_coefficient(params, constants) * exposure_factor(exposure, unit, constants);
}

double lambda_from_alpha(double alpha, const CslParams& model, const ExposureConfig& exposure,
                         SpectrumUnit unit, const PhysicalConstants& constants) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be finite and non-negative");
  CslParams unit_rate = model;
  unit_rate.lambda_rate = 1.0;
  return alpha / alpha_from_lambda(unit_rate, exposure, unit, constants);
}

} // namespace exolim
