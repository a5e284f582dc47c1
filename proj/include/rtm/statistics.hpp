#pragma once

#include <cstdint>
#include <vector>

#include "rtm/ensembles.hpp"
#include "rtm/mp_law.hpp"

namespace rtm {

struct MomentEstimate {
  int m = 0;
  double mean = 0;
  double std_error = 0;
};

// Per-sample value is D^{-1} sum lambda_i^m (the normalized trace power), so
// the mean estimates e^m. Needs at least two samples for the standard error.
MomentEstimate empirical_moment(const std::vector<SpectralSample>& samples, int m);

struct ExtremeStats {
  double lambda_max_mean = 0;
  double lambda_max_std = 0;
  double lambda_min_mean = 0;  // over the nonzero spectrum when x < 1
  double lambda_min_std = 0;
  double lambda_min_least = 0;  // smallest observed across all trials
  long long trials = 0;
};

ExtremeStats extreme_stats(const std::vector<SpectralSample>& samples);

// Pooled empirical CDF of the nonzero spectrum (x < 1) or the full spectrum
// (x >= 1) against the law's nonzero-spectrum CDF.
double ks_distance(const std::vector<SpectralSample>& samples, const MpLaw& law);
double ks_distance_points(std::vector<double> pooled, const MpLaw& law);

struct ConcentrationRow {
  int d = 0;
  long long p = 0;
  double lambda_max_std = 0;
};

// Sample standard deviation of lambda_max at fixed x across a list of d.
std::vector<ConcentrationRow> concentration_experiment(EnsembleKind kind, double x, const std::vector<int>& d_list,
                                                       int k, long long trials, std::uint64_t master_seed,
                                                       int threads = 1);

}  // namespace rtm
