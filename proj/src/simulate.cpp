#include "exolim/simulate.hpp"

#include "exolim/error.hpp"

#include <cmath>
#include <string>

namespace exolim {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// P(a < Z < b) for standard normal Z without catastrophic cancellation in
// either tail.
double normal_interval(double a, double b) {
  if (a >= 0.0) return 0.5 * (std::erfc(a / kSqrt2) - std::erfc(b / kSqrt2));
  if (b <= 0.0) return 0.5 * (std::erfc(-b / kSqrt2) - std::erfc(-a / kSqrt2));
  return 0.5 * (std::erf(b / kSqrt2) - std::erf(a / kSqrt2));
}

double continuum_integral(const Continuum& c, double lo, double hi) {
  if (const auto* flat = std::get_if<FlatContinuum>(&c)) return flat->level_per_kev * (hi - lo);
  const auto& inv = std::get<OneOverEContinuum>(c);
  return inv.alpha * std::log(hi / lo);
}

std::uint64_t poisson_inversion(double mean, Rng& rng) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// W. Hoermann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(double mean, Rng& rng) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * log_mean - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

} // namespace

SigmaAssignment parse_sigma_assignment(std::string_view tag) {
  if (tag == "observed") return SigmaAssignment::Observed;
  if (tag == "expected") return SigmaAssignment::Expected;
  throw ConfigError("unknown sigma assignment '" + std::string(tag) + "'");
}

std::string_view to_string(SigmaAssignment s) noexcept {
  return s == SigmaAssignment::Expected ? "expected" : "observed";
}

std::size_t Binning::count() const {
  if (!(width > 0.0) || !(e_min < e_max) || !std::isfinite(e_min) || !std::isfinite(e_max))
    throw ValidationError("binning needs width > 0 and e_min < e_max");
  const double n = (e_max - e_min) / width;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::abs(n - rounded) > 1e-6)
    throw ValidationError("binning range is not an integral number of bins");
  return static_cast<std::size_t>(rounded);
}

std::vector<double> Binning::edges() const {
  const std::size_t n = count();
  std::vector<double> e(n + 1);
  for (std::size_t i = 0; i < n; ++i) e[i] = e_min + static_cast<double>(i) * width;
  e[n] = e_max;
  return e;
}

std::vector<std::string> SimConfig::validate() const {
  (void)binning.count();
  if (!(resolution_fwhm_kev > 0.0)) throw ValidationError("resolution_fwhm_kev must be positive");
  std::vector<std::string> warnings;
  for (const auto& line : lines) {
    if (!(line.intensity >= 0.0) || !std::isfinite(line.intensity))
      throw ValidationError("line intensity must be finite and non-negative");
    if (line.center_kev < binning.e_min || line.center_kev > binning.e_max)
      warnings.push_back("line at " + std::to_string(line.center_kev) +
                         " keV lies outside the binning range");
  }
  for (const auto& c : continua) {
    if (const auto* flat = std::get_if<FlatContinuum>(&c)) {
      if (!(flat->level_per_kev >= 0.0)) throw ValidationError("flat continuum must be non-negative");
    } else {
      const auto& inv = std::get<OneOverEContinuum>(c);
      if (!(inv.alpha >= 0.0)) throw ValidationError("1/E continuum amplitude must be non-negative");
      if (!(binning.e_min > 0.0)) throw ValidationError("1/E continuum needs e_min > 0");
    }
  }
  return warnings;
}

double gaussian_bin_fraction(double center, double sigma, double lo, double hi) {
  const double cut = kResponseCutSigma * sigma;
  lo = std::max(lo, center - cut);
  hi = std::min(hi, center + cut);
  if (!(lo < hi)) return 0.0;
  static const double kept = std::erf(kResponseCutSigma / kSqrt2);
  return normal_interval((lo - center) / sigma, (hi - center) / sigma) / kept;
}

BinnedSpectrum expected_spectrum(const SimConfig& cfg) {
  (void)cfg.validate();
  const auto edges = cfg.binning.edges();
  const double sigma = fwhm_to_sigma(cfg.resolution_fwhm_kev);
  std::vector<Bin> bins(edges.size() - 1);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    double mu = 0.0;
    for (const auto& line : cfg.lines)
      mu += line.intensity * gaussian_bin_fraction(line.center_kev, sigma, lo, hi);
    for (const auto& c : cfg.continua) mu += continuum_integral(c, lo, hi);
    bins[i] = {lo, hi, mu, std::sqrt(mu)};
  }
  return BinnedSpectrum(std::move(bins), {}, SpectrumUnit::Counts, "expected");
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? poisson_inversion(mean, rng) : poisson_ptrs(mean, rng);
}

BinnedSpectrum sample_spectrum(const SimConfig& cfg) {
  const BinnedSpectrum expected = expected_spectrum(cfg);
  if (!cfg.poisson) return expected;
  Rng rng(cfg.seed);
  std::vector<Bin> bins(expected.bins().begin(), expected.bins().end());
  for (auto& b : bins) {
    const double mu = b.counts;
    b.counts = static_cast<double>(sample_poisson(mu, rng));
    if (cfg.sigma == SigmaAssignment::Expected)
      b.sigma = mu > 0.0 ? std::sqrt(mu) : kEmptyBinSigma;
    else
      b.sigma = b.counts > 0.0 ? std::sqrt(b.counts) : kEmptyBinSigma;
  }
  return BinnedSpectrum(std::move(bins), {}, SpectrumUnit::Counts, "sampled");
}

SimConfig vip_like_config(bool current_on, double forbidden_intensity,
                          const VipSpectrumConfig& vip) {
  if (!(forbidden_intensity >= 0.0)) throw DomainError("forbidden intensity must be >= 0");
  SimConfig cfg;
  cfg.binning = vip.binning;
  cfg.resolution_fwhm_kev = vip.resolution_fwhm_kev;
  cfg.lines = {{lines::kCuKalpha, vip.kalpha_intensity}, {lines::kCuKbeta, vip.kbeta_intensity}};
  if (current_on && forbidden_intensity > 0.0)
    cfg.lines.push_back({lines::kCuKalphaForbidden, forbidden_intensity});
  if (vip.continuum_per_kev > 0.0) cfg.continua.push_back(FlatContinuum{vip.continuum_per_kev});
  cfg.seed = vip.seed;
  cfg.poisson = vip.poisson;
  cfg.sigma = vip.sigma;
  return cfg;
}

BinnedSpectrum vip_like_spectrum(bool current_on, double forbidden_intensity,
                                 const VipSpectrumConfig& vip) {
  return sample_spectrum(vip_like_config(current_on, forbidden_intensity, vip))
      .with_label(current_on ? "current-on" : "current-off");
}

} // namespace exolim
