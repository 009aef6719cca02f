#include "exolim/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exolim::kernels {

namespace {

// Holds the first exception thrown inside a parallel region.
class ExceptionSlot {
public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

private:
  std::mutex mutex_;
  std::exception_ptr ptr_;
};

struct Weighted {
  std::vector<double> counts, shape, inv_sigma;
};

Weighted weighted_bins(const BinnedSpectrum& spec, BinModel model) {
  Weighted w;
  for (const auto& b : spec.bins()) {
    if (b.sigma <= 0.0) continue;
    w.counts.push_back(b.counts);
    w.shape.push_back(model_shape(b, model));
    w.inv_sigma.push_back(1.0 / b.sigma);
  }
  return w;
}

double chi2_of(const Weighted& w, double alpha) {
  double chi2 = 0.0;
  for (std::size_t i = 0; i < w.counts.size(); ++i) {
    const double d = (w.counts[i] - alpha * w.shape[i]) * w.inv_sigma[i];
    chi2 += d * d;
  }
  return chi2;
}

ReplicaOutcome run_one(const ReplicaStudy& study, std::size_t i) {
  SimConfig cfg = study.base;
  cfg.seed = study.base.seed + i;
  const auto spec = select_range(sample_spectrum(cfg), study.fit_lo, study.fit_hi);

  ReplicaOutcome out;
  out.seed = cfg.seed;
  out.fit = with_upper_limit(fit_one_over_e(spec, study.fit), study.confidence_level);
  out.grid_alpha = std::numeric_limits<double>::quiet_NaN();
  if (study.grid_check)
    out.grid_alpha = chi2_grid_minimum(spec, study.grid_lo, study.grid_step, study.grid_points,
                                       study.fit.bin_model, Exec::Serial)
                         .alpha;
  return out;
}

} // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> chi2_profile(const BinnedSpectrum& spec, std::span<const double> alphas,
                                 BinModel model, Exec exec) {
  const Weighted w = weighted_bins(spec, model);
  std::vector<double> out(alphas.size());
  const auto n = static_cast<std::ptrdiff_t>(alphas.size());
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = chi2_of(w, alphas[i]);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = chi2_of(w, alphas[i]);
  return out;
}

GridMinimum chi2_grid_minimum(const BinnedSpectrum& spec, double lo, double step,
                              std::size_t points, BinModel model, Exec exec) {
  const Weighted w = weighted_bins(spec, model);
  const auto n = static_cast<std::ptrdiff_t>(points);
  auto alpha_at = [&](std::ptrdiff_t i) { return lo + static_cast<double>(i) * step; };

  GridMinimum best{alpha_at(0), std::numeric_limits<double>::infinity(), 0};
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double c = chi2_of(w, alpha_at(i));
      if (c < best.chi2) best = {alpha_at(i), c, static_cast<std::size_t>(i)};
    }
    return best;
  }

#pragma omp parallel
  {
    GridMinimum local{alpha_at(0), std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double c = chi2_of(w, alpha_at(i));
      if (c < local.chi2) local = {alpha_at(i), c, static_cast<std::size_t>(i)};
    }
#pragma omp critical(exolim_grid_min)
    {
      if (local.chi2 < best.chi2 || (local.chi2 == best.chi2 && local.index < best.index))
        best = local;
    }
  }
  return best;
}

std::vector<ReplicaOutcome> run_replicas(const ReplicaStudy& study, Exec exec) {
  std::vector<ReplicaOutcome> out(study.replicas);
  const auto n = static_cast<std::ptrdiff_t>(study.replicas);
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_one(study, static_cast<std::size_t>(i));
    return out;
  }
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    slot.run([&] { out[i] = run_one(study, static_cast<std::size_t>(i)); });
  slot.rethrow();
  return out;
}

double fraction_within(std::span<const ReplicaOutcome> outcomes, double truth, double n_sigma) {
  if (outcomes.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& o : outcomes)
    if (std::abs(o.fit.alpha_hat - truth) <= n_sigma * o.fit.sigma_alpha) ++hits;
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double coverage(std::span<const ReplicaOutcome> outcomes, double truth) {
  if (outcomes.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& o : outcomes)
    if (o.fit.alpha_upper && *o.fit.alpha_upper > truth) ++hits;
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double max_grid_deviation(std::span<const ReplicaOutcome> outcomes) {
  double worst = 0.0;
  for (const auto& o : outcomes) {
    const double d = std::abs(o.fit.alpha_hat - o.grid_alpha);
    if (std::isnan(d)) return d;
    worst = std::max(worst, d);
  }
  return worst;
}

double mean_reduced_chi2(std::span<const ReplicaOutcome> outcomes) {
  if (outcomes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& o : outcomes) sum += o.fit.reduced_chi2();
  return sum / static_cast<double>(outcomes.size());
}

} // namespace exolim::kernels
