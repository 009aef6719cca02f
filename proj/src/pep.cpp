#include "exolim/pep.hpp"

#include "exolim/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace exolim {

namespace {

void require_positive(const char* name, double v) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw ConfigError(std::string(name) + " must be finite and positive");
}

void require_fraction(const char* name, double v) {
  require_positive(name, v);
  if (v > 1.0) throw ConfigError(std::string(name) + " must not exceed 1");
}

} // namespace

std::vector<std::string> RsConfig::validate() const {
  require_positive("current_amp", current_amp);
  require_positive("time_on_s", time_on_s);
  require_positive("time_off_s", time_off_s);
  require_positive("strip_length_m", strip_length_m);
  require_positive("mean_free_path_m", mean_free_path_m);
  require_fraction("capture_fraction", capture_fraction);
  require_fraction("detection_efficiency", detection_efficiency);
  require_fraction("geometric_acceptance", geometric_acceptance);
  require_positive("roi_center_kev", roi_center_kev);
  require_positive("roi_half_width_kev", roi_half_width_kev);
  require_positive("n_sigma", n_sigma);

  std::vector<std::string> warnings;
  if (resolution_fwhm_kev) {
    require_positive("resolution_fwhm_kev", *resolution_fwhm_kev);
    const double sigma = fwhm_to_sigma(*resolution_fwhm_kev);
    if (std::abs(roi_center_kev - lines::kCuKalpha) <= sigma)
      warnings.push_back("ROI center lies within one resolution sigma of the allowed Cu K-alpha line");
  }
  return warnings;
}

double new_electrons(double current_amp, double time_s, const PhysicalConstants& constants) {
  if (!(current_amp > 0.0) || !(time_s > 0.0))
    throw DomainError("current and time must be positive");
  return current_amp * time_s / constants.elementary_charge_coulomb();
}

double min_interactions(double strip_length_m, double mean_free_path_m) {
  if (!(strip_length_m > 0.0) || !(mean_free_path_m > 0.0))
    throw DomainError("strip length and mean free path must be positive");
  if (strip_length_m < mean_free_path_m)
    throw DomainError("strip shorter than one mean free path");
  return strip_length_m / mean_free_path_m;
}

double signal_upper_limit(const RoiCounts& on, const RoiCounts& off, double ratio,
                          double n_sigma) {
  if (!(n_sigma > 0.0)) throw DomainError("n_sigma must be positive");
  if (!(ratio > 0.0)) throw DomainError("normalization ratio must be positive");
  const double delta = on.counts - ratio * off.counts;
  const double sigma = std::sqrt(on.sigma * on.sigma + ratio * ratio * off.sigma * off.sigma);
  return std::max(delta, 0.0) + n_sigma * sigma;
}

PepLimit beta2_limit(double s_upper, const RsConfig& cfg, const PhysicalConstants& constants) {
  if (!(s_upper > 0.0) || !std::isfinite(s_upper))
    throw DomainError("signal upper limit must be positive");
  require_positive("current_amp", cfg.current_amp);
  require_positive("time_on_s", cfg.time_on_s);
  require_fraction("capture_fraction", cfg.capture_fraction);
  require_fraction("detection_efficiency", cfg.detection_efficiency);
  require_fraction("geometric_acceptance", cfg.geometric_acceptance);

  PepLimit out;
  out.signal_upper_counts = s_upper;
  out.n_new_electrons = new_electrons(cfg.current_amp, cfg.time_on_s, constants);
  out.n_interactions = min_interactions(cfg.strip_length_m, cfg.mean_free_path_m);
  out.capture_fraction = cfg.capture_fraction;
  out.detection_efficiency = cfg.detection_efficiency;
  out.geometric_acceptance = cfg.geometric_acceptance;
  out.n_sigma = cfg.n_sigma;
  out.beta2_over_2 = s_upper / (out.n_new_electrons * out.n_interactions * out.capture_fraction *
                                out.detection_efficiency * out.geometric_acceptance);
  return out;
}

PepAnalysis analyze_pep(const BinnedSpectrum& on, const BinnedSpectrum& off, const RsConfig& cfg,
                        const PhysicalConstants& constants) {
  PepAnalysis a;
  a.warnings = cfg.validate();
  a.ratio = cfg.live_time_ratio();
  // Same binning is required of the pair even though only ROI sums are used.
  (void)subtract(on, off, a.ratio);
  a.on = counts_in_roi(on, cfg.roi_center_kev, cfg.roi_half_width_kev);
  a.off = counts_in_roi(off, cfg.roi_center_kev, cfg.roi_half_width_kev);
  a.excess = a.on.counts - a.ratio * a.off.counts;
  a.excess_sigma = std::sqrt(a.on.sigma * a.on.sigma + a.ratio * a.ratio * a.off.sigma * a.off.sigma);
  a.excess_significant = a.excess > cfg.n_sigma * a.excess_sigma;
  a.limit = beta2_limit(signal_upper_limit(a.on, a.off, a.ratio, cfg.n_sigma), cfg, constants);
  return a;
}

} // namespace exolim
