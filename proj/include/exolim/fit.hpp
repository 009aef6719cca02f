#ifndef EXOLIM_FIT_HPP
#define EXOLIM_FIT_HPP

#include "exolim/spectrum.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace exolim {

/// How the alpha/E model is turned into a per-bin expectation.
enum class BinModel {
  /// alpha * ln(e_high/e_low): the exact bin integral.
  Integrated,
  /// alpha * width / center. Kept for comparison only.
  Center,
};

/// Where the per-bin variances in the chi^2 come from.
enum class VarianceModel {
  /// The sigma column of the spectrum.
  Declared,
  /// Poisson variance of the fitted model itself (Pearson chi^2). Only
  /// meaningful for raw counts.
  Model,
};

BinModel parse_bin_model(std::string_view tag);
VarianceModel parse_variance_model(std::string_view tag);
std::string_view to_string(BinModel m) noexcept;
std::string_view to_string(VarianceModel m) noexcept;

struct FitOptions {
  BinModel bin_model = BinModel::Integrated;
  VarianceModel variance = VarianceModel::Declared;
};

inline constexpr double kDefaultConfidenceLevel = 0.90;

struct FitResult {
  double alpha_hat = 0.0;
  double sigma_alpha = 0.0;
  double chi2 = 0.0;
  int ndf = 0;
  std::optional<double> alpha_upper;
  std::optional<double> confidence_level;

  double reduced_chi2() const { return ndf > 0 ? chi2 / ndf : 0.0; }
};

/// Integral of alpha/E over [e_low, e_high].
double model_bin_integral(double alpha, double e_low, double e_high);

/// alpha/E evaluated at the bin center, times the width.
double model_bin_center(double alpha, double e_low, double e_high);

/// Expected content of one bin per unit alpha.
double model_shape(const Bin& bin, BinModel model);

/// Weighted least-squares amplitude of alpha/E. The model is linear in
/// alpha, so the chi^2 minimum is closed form:
///
///   alpha_hat   = sum(n f / s^2) / sum(f^2 / s^2)
///   sigma_alpha = 1 / sqrt(sum(f^2 / s^2))
///
/// Bins with zero declared sigma carry no weight and are not counted in ndf.
/// Throws NumericalError when fewer than two bins carry weight.
FitResult fit_one_over_e(const BinnedSpectrum& spec, const FitOptions& opts = {});

/// chi^2 at a fixed amplitude, using the declared sigmas.
double chi2_at(const BinnedSpectrum& spec, double alpha, BinModel model = BinModel::Integrated);

/// `cl` quantile of Gaussian(alpha_hat, sigma_alpha) restricted to alpha >= 0
/// (flat prior on the physical region). cl must lie in (0.5, 1).
double bayesian_upper_limit(double alpha_hat, double sigma_alpha, double cl);

/// Returns `fit` with alpha_upper and confidence_level filled in.
FitResult with_upper_limit(FitResult fit, double cl);

struct Residual {
  double e_center = 0.0;
  double data = 0.0;
  double model = 0.0;
  double pull = 0.0; ///< (data - model) / sigma, 0 for unweighted bins
};

std::vector<Residual> residuals(const BinnedSpectrum& spec, const FitResult& fit,
                                BinModel model = BinModel::Integrated);

} // namespace exolim

#endif
