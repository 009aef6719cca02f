#ifndef EXOLIM_CONSTANTS_HPP
#define EXOLIM_CONSTANTS_HPP

#include <nlohmann/json.hpp>

namespace exolim {

/// Physical constants in the units the pipelines use (keV, m, C).
///
/// Defaults are CODATA 2018. The nucleon mass is the proton mass. Construction
/// checks every field against loose sanity bounds so a mistyped override
/// (MeV instead of keV, say) fails immediately.
class PhysicalConstants {
public:
  struct Values {
    double electron_mass_kev = 510.99895000;
    double nucleon_mass_kev = 938272.08816;
    double fine_structure = 7.2973525693e-3;
    double hbar_c_kev_nm = 0.1973269804;
    double elementary_charge_coulomb = 1.602176634e-19;
    double avogadro = 6.02214076e23;
  };

  PhysicalConstants() : PhysicalConstants(Values{}) {}
  explicit PhysicalConstants(const Values& v);

  double electron_mass_kev() const noexcept { return v_.electron_mass_kev; }
  double nucleon_mass_kev() const noexcept { return v_.nucleon_mass_kev; }
  double fine_structure() const noexcept { return v_.fine_structure; }
  double hbar_c_kev_nm() const noexcept { return v_.hbar_c_kev_nm; }
  double hbar_c_kev_m() const noexcept { return v_.hbar_c_kev_nm * 1e-9; }
  double elementary_charge_coulomb() const noexcept { return v_.elementary_charge_coulomb; }
  double avogadro() const noexcept { return v_.avogadro; }

  /// (m_e / m_N)^2, the suppression of the mass-proportional coupling.
  double electron_nucleon_mass_ratio_sq() const noexcept;

  const Values& values() const noexcept { return v_; }

  /// key -> {value, unit}
  nlohmann::json to_json() const;

private:
  Values v_;
};

/// Shared default instance.
const PhysicalConstants& default_constants();

/// Charge normalization e^2/(4 pi) = 1/137.04 in natural units, the value
/// the original spontaneous-radiation estimate used once the 4 pi is restored.
inline constexpr double kChargeSqOver4PiAdler = 1.0 / 137.04;

inline constexpr double kSecondsPerDay = 86400.0;

/// 2 sqrt(2 ln 2), FWHM over sigma for a Gaussian.
double fwhm_per_sigma() noexcept;

/// Length in metres to natural units (1/keV) through hbar*c.
double length_to_inverse_kev(double length_m, const PhysicalConstants& c = default_constants());
double inverse_kev_to_length(double inverse_kev, const PhysicalConstants& c = default_constants());

double fwhm_to_sigma(double fwhm);
double sigma_to_fwhm(double sigma);

/// Copper K-shell line energies in keV.
namespace lines {
inline constexpr double kCuKalpha = 8.040;
/// 2P -> 1S into an already doubly occupied 1S shell.
inline constexpr double kCuKalphaForbidden = 7.729;
/// Not quoted alongside the other two; standard tabulated value.
inline constexpr double kCuKbeta = 8.905;
} // namespace lines

/// Published limits, kept for the consistency checks in the test suites.
namespace published {
inline constexpr double kLambdaLimitNonMassProportional = 1.4e-17;
inline constexpr double kLambdaLimitMassProportional = 4.7e-11;
inline constexpr double kLambdaLimitFu = 0.55e-16;
inline constexpr double kAlphaFit = 110.0;
inline constexpr double kAlphaFitError = 7.0;
inline constexpr double kReducedChi2 = 1.1;
inline constexpr double kPepLimitVip = 4.7e-29;
inline constexpr double kPepLimitRambergSnow = 1.7e-26;
inline constexpr double kVipResolutionFwhmKev = 0.320;
inline constexpr double kVipCurrentAmp = 40.0;
} // namespace published

} // namespace exolim

#endif
