#include "exolim/fit.hpp"

#include "exolim/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace exolim {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Standard normal lower-tail probability.
double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// z such that P(Z > z) = q.
double normal_upper_quantile(double q) { return kSqrt2 * boost::math::erfc_inv(2.0 * q); }

} // namespace

BinModel parse_bin_model(std::string_view tag) {
  if (tag == "integrated") return BinModel::Integrated;
  if (tag == "center") return BinModel::Center;
  throw ConfigError("unknown bin model '" + std::string(tag) + "'");
}

VarianceModel parse_variance_model(std::string_view tag) {
  if (tag == "declared") return VarianceModel::Declared;
  if (tag == "model") return VarianceModel::Model;
  throw ConfigError("unknown variance model '" + std::string(tag) + "'");
}

std::string_view to_string(BinModel m) noexcept {
  return m == BinModel::Center ? "center" : "integrated";
}

std::string_view to_string(VarianceModel m) noexcept {
  return m == VarianceModel::Model ? "model" : "declared";
}

double model_bin_integral(double alpha, double e_low, double e_high) {
  if (!(e_low > 0.0) || !(e_high > e_low))
    throw DomainError("bin edges must satisfy 0 < e_low < e_high");
  return alpha * std::log(e_high / e_low);
}

double model_bin_center(double alpha, double e_low, double e_high) {
  if (!(e_low > 0.0) || !(e_high > e_low))
    throw DomainError("bin edges must satisfy 0 < e_low < e_high");
  return alpha * (e_high - e_low) / (0.5 * (e_low + e_high));
}

double model_shape(const Bin& bin, BinModel model) {
  return model == BinModel::Integrated ? model_bin_integral(1.0, bin.e_low, bin.e_high)
                                       : model_bin_center(1.0, bin.e_low, bin.e_high);
}

FitResult fit_one_over_e(const BinnedSpectrum& spec, const FitOptions& opts) {
  if (spec.size() < 2) throw NumericalError("fit needs at least two bins");

  FitResult r;
  if (opts.variance == VarianceModel::Model) {
    // With s_i^2 = alpha f_i the weighted normal equation reduces to
    // sum(n) / sum(f), the Poisson maximum-likelihood amplitude.
    double sum_n = 0.0, sum_f = 0.0;
    for (const auto& b : spec.bins()) {
      sum_n += b.counts;
      sum_f += model_shape(b, opts.bin_model);
    }
    if (!(sum_n > 0.0)) throw NumericalError("model variance needs a non-empty spectrum");
    r.alpha_hat = sum_n / sum_f;
    r.sigma_alpha = std::sqrt(r.alpha_hat / sum_f);
    for (const auto& b : spec.bins()) {
      const double mu = r.alpha_hat * model_shape(b, opts.bin_model);
      r.chi2 += (b.counts - mu) * (b.counts - mu) / mu;
    }
    r.ndf = static_cast<int>(spec.size()) - 1;
    return r;
  }

  double sum_nf = 0.0, sum_ff = 0.0;
  int weighted = 0;
  for (const auto& b : spec.bins()) {
    if (!std::isfinite(b.sigma)) throw NumericalError("non-finite bin sigma");
    if (b.sigma <= 0.0) continue;
    const double f = model_shape(b, opts.bin_model);
    const double w = 1.0 / (b.sigma * b.sigma);
    sum_nf += b.counts * f * w;
    sum_ff += f * f * w;
    ++weighted;
  }
  if (weighted < 2 || !(sum_ff > 0.0) || !std::isfinite(sum_ff))
    throw NumericalError("degenerate weights: fewer than two bins carry information");

  r.alpha_hat = sum_nf / sum_ff;
  r.sigma_alpha = 1.0 / std::sqrt(sum_ff);
  for (const auto& b : spec.bins()) {
    if (b.sigma <= 0.0) continue;
    const double d = (b.counts - r.alpha_hat * model_shape(b, opts.bin_model)) / b.sigma;
    r.chi2 += d * d;
  }
  r.ndf = weighted - 1;
  return r;
}

double chi2_at(const BinnedSpectrum& spec, double alpha, BinModel model) {
  double chi2 = 0.0;
  for (const auto& b : spec.bins()) {
    if (b.sigma <= 0.0) continue;
    const double d = (b.counts - alpha * model_shape(b, model)) / b.sigma;
    chi2 += d * d;
  }
  return chi2;
}

double bayesian_upper_limit(double alpha_hat, double sigma_alpha, double cl) {
  if (!(cl > 0.5 && cl < 1.0))
    throw DomainError("confidence level must lie in (0.5, 1), got " + std::to_string(cl));
  if (!(sigma_alpha > 0.0) || !std::isfinite(sigma_alpha) || !std::isfinite(alpha_hat))
    throw DomainError("upper limit needs finite alpha_hat and positive sigma_alpha");

  // Posterior tail above u equals (1 - cl) of the posterior mass on alpha >= 0:
  //   1 - Phi((u - a)/s) = (1 - cl) * Phi(a/s)
  const double z = alpha_hat / sigma_alpha;
  const double mass = normal_cdf(z);
  const double tail = (1.0 - cl) * mass;
  if (tail > std::numeric_limits<double>::min() * 1e3)
    return alpha_hat + sigma_alpha * normal_upper_quantile(tail);

  // Far below zero the truncated posterior is exponential with rate |z|/s.
  return -std::log1p(-cl) * sigma_alpha / (-z);
}

FitResult with_upper_limit(FitResult fit, double cl) {
  fit.alpha_upper = bayesian_upper_limit(fit.alpha_hat, fit.sigma_alpha, cl);
  fit.confidence_level = cl;
  return fit;
}

std::vector<Residual> residuals(const BinnedSpectrum& spec, const FitResult& fit, BinModel model) {
  std::vector<Residual> out;
  out.reserve(spec.size());
  for (const auto& b : spec.bins()) {
    Residual r;
    r.e_center = b.center();
    r.data = b.counts;
    r.model = fit.alpha_hat * model_shape(b, model);
    r.pull = b.sigma > 0.0 ? (r.data - r.model) / b.sigma : 0.0;
    out.push_back(r);
  }
  return out;
}

} // namespace exolim
