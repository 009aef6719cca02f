#ifndef EXOLIM_PEP_HPP
#define EXOLIM_PEP_HPP

#include "exolim/constants.hpp"
#include "exolim/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exolim {

/// Inputs of the current-on / current-off counting bound.
///
/// Geometry and efficiencies have no defaults: they describe a specific
/// apparatus and must come from the run configuration.
struct RsConfig {
  double current_amp = 0.0;
  double time_on_s = 0.0;
  double time_off_s = 0.0;
  /// Effective path D of a conduction electron through the strip.
  double strip_length_m = 0.0;
  /// Scattering length mu of electrons in copper.
  double mean_free_path_m = 0.0;
  /// Fraction of close encounters that end in the forbidden K-alpha cascade.
  double capture_fraction = 0.1;
  double detection_efficiency = 0.0;
  double geometric_acceptance = 0.0;
  double roi_center_kev = lines::kCuKalphaForbidden;
  double roi_half_width_kev = 0.0;
  double n_sigma = 3.0;
  /// Only used for the ROI/allowed-line separation warning.
  std::optional<double> resolution_fwhm_kev;

  /// Throws ConfigError on invalid values, returns non-fatal warnings.
  std::vector<std::string> validate() const;

  /// Live-time ratio on/off used to scale the background spectrum.
  double live_time_ratio() const { return time_on_s / time_off_s; }
};

struct PepLimit {
  double signal_upper_counts = 0.0;
  double n_new_electrons = 0.0;
  double n_interactions = 0.0;
  double capture_fraction = 0.0;
  double detection_efficiency = 0.0;
  double geometric_acceptance = 0.0;
  double beta2_over_2 = 0.0;
  double n_sigma = 0.0;
};

/// Electrons injected by a current over a time: I t / e.
double new_electrons(double current_amp, double time_s,
                     const PhysicalConstants& constants = default_constants());

/// Minimum number of atomic encounters along the strip: D / mu, unrounded.
/// Throws DomainError when the strip is shorter than one mean free path.
double min_interactions(double strip_length_m, double mean_free_path_m);

/// Upper bound on the signal counts in the ROI:
///
///   delta = on - ratio * off,  s_delta = sqrt(s_on^2 + ratio^2 s_off^2)
///   bound = max(delta, 0) + n_sigma * s_delta
double signal_upper_limit(const RoiCounts& on, const RoiCounts& off, double ratio,
                          double n_sigma);

/// beta^2/2 < s_upper / (N_new * N_int * capture * efficiency * acceptance).
PepLimit beta2_limit(double s_upper, const RsConfig& cfg,
                     const PhysicalConstants& constants = default_constants());

/// Full counting analysis on an on/off spectrum pair.
struct PepAnalysis {
  RoiCounts on;
  RoiCounts off;
  double ratio = 0.0;
  double excess = 0.0;
  double excess_sigma = 0.0;
  /// excess > n_sigma * excess_sigma
  bool excess_significant = false;
  PepLimit limit;
  std::vector<std::string> warnings;
};

PepAnalysis analyze_pep(const BinnedSpectrum& on, const BinnedSpectrum& off, const RsConfig& cfg,
                        const PhysicalConstants& constants = default_constants());

} // namespace exolim

#endif
