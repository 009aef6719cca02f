#include "exolim/constants.hpp"

#include "exolim/error.hpp"

#include <cmath>
#include <string>

namespace exolim {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Io: return "io";
  case ErrorKind::Parse: return "parse";
  case ErrorKind::Validation: return "validation";
  case ErrorKind::Domain: return "domain";
  case ErrorKind::Config: return "config";
  case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

namespace {

void check_bound(const char* name, double value, double centre, double tol) {
  if (!std::isfinite(value) || value <= 0.0)
    throw ValidationError(std::string(name) + " must be finite and positive");
  if (std::abs(value - centre) > tol)
    throw ValidationError(std::string(name) + " = " + std::to_string(value) +
                          " outside sanity bound " + std::to_string(centre) + " +- " +
                          std::to_string(tol));
}

void check_positive(const char* name, double value) {
  if (!std::isfinite(value) || value <= 0.0)
    throw ValidationError(std::string(name) + " must be finite and positive");
}

} // namespace

PhysicalConstants::PhysicalConstants(const Values& v) : v_(v) {
  check_bound("fine_structure", v.fine_structure, 7.29e-3, 0.01e-3);
  check_bound("electron_mass_kev", v.electron_mass_kev, 511.0, 1.0);
  check_bound("nucleon_mass_kev", v.nucleon_mass_kev, 938272.0, 1000.0);
  check_positive("hbar_c_kev_nm", v.hbar_c_kev_nm);
  check_positive("elementary_charge_coulomb", v.elementary_charge_coulomb);
  check_positive("avogadro", v.avogadro);
}

double PhysicalConstants::electron_nucleon_mass_ratio_sq() const noexcept {
  const double r = v_.electron_mass_kev / v_.nucleon_mass_kev;
  return r * r;
}

nlohmann::json PhysicalConstants::to_json() const {
  auto entry = [](double value, const char* unit) {
    return nlohmann::json{{"value", value}, {"unit", unit}};
  };
  return {
      {"electron_mass", entry(v_.electron_mass_kev, "keV")},
      {"nucleon_mass", entry(v_.nucleon_mass_kev, "keV")},
      {"fine_structure", entry(v_.fine_structure, "1")},
      {"hbar_c", entry(v_.hbar_c_kev_nm, "keV nm")},
      {"elementary_charge", entry(v_.elementary_charge_coulomb, "C")},
      {"avogadro", entry(v_.avogadro, "1/mol")},
      {"charge_sq_over_4pi_adler", entry(kChargeSqOver4PiAdler, "1")},
      {"cu_kalpha", entry(lines::kCuKalpha, "keV")},
      {"cu_kalpha_forbidden", entry(lines::kCuKalphaForbidden, "keV")},
      {"cu_kbeta", entry(lines::kCuKbeta, "keV")},
  };
}

const PhysicalConstants& default_constants() {
  static const PhysicalConstants instance;
  return instance;
}

double fwhm_per_sigma() noexcept { return 2.0 * std::sqrt(2.0 * std::log(2.0)); }

double length_to_inverse_kev(double length_m, const PhysicalConstants& c) {
  if (!(length_m > 0.0) || !std::isfinite(length_m))
    throw DomainError("length must be positive, got " + std::to_string(length_m));
  return length_m / c.hbar_c_kev_m();
}

double inverse_kev_to_length(double inverse_kev, const PhysicalConstants& c) {
  if (!(inverse_kev > 0.0) || !std::isfinite(inverse_kev))
    throw DomainError("inverse energy must be positive");
  return inverse_kev * c.hbar_c_kev_m();
}

double fwhm_to_sigma(double fwhm) {
  if (!(fwhm > 0.0) || !std::isfinite(fwhm))
    throw DomainError("FWHM must be positive, got " + std::to_string(fwhm));
  return fwhm / fwhm_per_sigma();
}

double sigma_to_fwhm(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("sigma must be positive");
  return sigma * fwhm_per_sigma();
}

} // namespace exolim
