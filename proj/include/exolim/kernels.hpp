#ifndef EXOLIM_KERNELS_HPP
#define EXOLIM_KERNELS_HPP

// Data-parallel loops of the toolkit. Each kernel has a serial path, kept as
// the reference the OpenMP path is tested against; results are identical
// regardless of thread count or scheduling.

#include "exolim/fit.hpp"
#include "exolim/simulate.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace exolim::kernels {

enum class Exec { Serial, Parallel };

/// chi^2 (declared sigmas) at every amplitude in `alphas`.
std::vector<double> chi2_profile(const BinnedSpectrum& spec, std::span<const double> alphas,
                                 BinModel model = BinModel::Integrated, Exec exec = Exec::Parallel);

struct GridMinimum {
  double alpha = 0.0;
  double chi2 = 0.0;
  std::size_t index = 0;
};

/// Brute-force minimum of chi^2 over alpha = lo + i*step, i < points.
/// Ties go to the lowest index.
GridMinimum chi2_grid_minimum(const BinnedSpectrum& spec, double lo, double step,
                              std::size_t points, BinModel model = BinModel::Integrated,
                              Exec exec = Exec::Parallel);

/// Repeated simulate -> select -> fit -> upper limit. Replica i uses seed
/// `base.seed + i`.
struct ReplicaStudy {
  SimConfig base;
  std::size_t replicas = 0;
  double fit_lo = 0.0;
  double fit_hi = 0.0;
  FitOptions fit;
  double confidence_level = kDefaultConfidenceLevel;
  /// Also locate each replica's chi^2 minimum on a grid.
  bool grid_check = false;
  double grid_lo = 0.0;
  double grid_step = 0.01;
  std::size_t grid_points = 30001;
};

struct ReplicaOutcome {
  std::uint64_t seed = 0;
  FitResult fit;
  /// Grid minimum, NaN when grid_check is off.
  double grid_alpha = 0.0;
};

std::vector<ReplicaOutcome> run_replicas(const ReplicaStudy& study, Exec exec = Exec::Parallel);

/// Fraction of replicas with |alpha_hat - truth| <= n_sigma * sigma_alpha.
double fraction_within(std::span<const ReplicaOutcome> outcomes, double truth, double n_sigma);
/// Fraction of replicas whose upper limit exceeds truth.
double coverage(std::span<const ReplicaOutcome> outcomes, double truth);
/// Largest |alpha_hat - grid_alpha|.
double max_grid_deviation(std::span<const ReplicaOutcome> outcomes);
double mean_reduced_chi2(std::span<const ReplicaOutcome> outcomes);

/// Threads the parallel paths will use.
int max_threads();

} // namespace exolim::kernels

#endif
