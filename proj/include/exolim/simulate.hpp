#ifndef EXOLIM_SIMULATE_HPP
#define EXOLIM_SIMULATE_HPP

#include "exolim/constants.hpp"
#include "exolim/spectrum.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace exolim {

/// Uniform bins [e_min, e_max) of width `width`. The range must hold an
/// integral number of bins.
struct Binning {
  double e_min = 0.0;
  double e_max = 0.0;
  double width = 0.0;

  std::size_t count() const;
  std::vector<double> edges() const;
};

struct Line {
  double center_kev = 0.0;
  double intensity = 0.0; ///< expected counts in the full line
};

struct FlatContinuum {
  double level_per_kev = 0.0;
};

struct OneOverEContinuum {
  double alpha = 0.0;
};

using Continuum = std::variant<FlatContinuum, OneOverEContinuum>;

/// Uncertainty stored with a sampled spectrum.
enum class SigmaAssignment {
  /// sqrt(observed counts), empty bins get kEmptyBinSigma.
  Observed,
  /// sqrt(expected counts) from the generating model.
  Expected,
};

SigmaAssignment parse_sigma_assignment(std::string_view tag);
std::string_view to_string(SigmaAssignment s) noexcept;

struct SimConfig {
  Binning binning;
  std::vector<Line> lines;
  double resolution_fwhm_kev = published::kVipResolutionFwhmKev;
  std::vector<Continuum> continua;
  std::uint64_t seed = 0;
  bool poisson = true;
  SigmaAssignment sigma = SigmaAssignment::Observed;

  /// Throws ValidationError; returns warnings (lines outside the range).
  std::vector<std::string> validate() const;
};

/// Gaussian detector response is cut at this many sigma and renormalized.
inline constexpr double kResponseCutSigma = 8.0;

/// Fraction of a unit Gaussian line (center, sigma) falling in [lo, hi],
/// using CDF differences on the numerically stable side.
double gaussian_bin_fraction(double center, double sigma, double lo, double hi);

/// Bin-integrated expectation of lines + continua. sigma = sqrt(mean).
BinnedSpectrum expected_spectrum(const SimConfig& cfg);

/// Deterministic pseudo-random source: std::mt19937_64 seeded with the raw
/// 64-bit seed, uniform doubles from the top 53 bits.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// In [0, 1).
  double uniform();
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// Poisson deviate. Sequential inversion below mean 10, Hoermann's PTRS
/// transformed rejection above. Independent of the standard library's
/// distribution implementations so output is portable.
std::uint64_t sample_poisson(double mean, Rng& rng);

/// Poisson-sampled spectrum. Same (config, seed) gives bit-identical output.
/// With `poisson` unset returns the expectation.
BinnedSpectrum sample_spectrum(const SimConfig& cfg);

/// Cu fluorescence test spectrum in the style of the on/off measurement.
struct VipSpectrumConfig {
  Binning binning{5.0, 11.0, 0.02};
  double kalpha_intensity = 2000.0;
  double kbeta_intensity = 300.0;
  double continuum_per_kev = 100.0;
  double resolution_fwhm_kev = published::kVipResolutionFwhmKev;
  std::uint64_t seed = 0;
  bool poisson = true;
  SigmaAssignment sigma = SigmaAssignment::Observed;
};

/// Config with the allowed K-alpha and K-beta lines, a flat continuum, and,
/// when `current_on`, a forbidden line at 7.729 keV of the given intensity.
SimConfig vip_like_config(bool current_on, double forbidden_intensity,
                          const VipSpectrumConfig& vip = {});

BinnedSpectrum vip_like_spectrum(bool current_on, double forbidden_intensity,
                                 const VipSpectrumConfig& vip = {});

} // namespace exolim

#endif
