#include "rtm/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtm {

namespace {

std::pair<double, double> mean_and_sample_std(const std::vector<double>& v) {
  const auto n = static_cast<double>(v.size());
  double mean = 0;
  for (double e : v) mean += e;
  mean /= n;
  double ss = 0;
  for (double e : v) ss += (e - mean) * (e - mean);
  const double std_dev = v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return {mean, std_dev};
}

}  // namespace

MomentEstimate empirical_moment(const std::vector<SpectralSample>& samples, int m) {
  if (samples.empty()) throw std::domain_error("empirical_moment: no samples");
  if (m < 0) throw std::domain_error("empirical_moment: negative order");
  std::vector<double> per_trial;
  per_trial.reserve(samples.size());
  for (const auto& s : samples) {
    double acc = 0;
    for (double e : s.eigenvalues) acc += std::pow(e, m);
    per_trial.push_back(acc / static_cast<double>(s.eigenvalues.size()));
  }
  const auto [mean, sd] = mean_and_sample_std(per_trial);
  MomentEstimate est;
  est.m = m;
  est.mean = mean;
  est.std_error = samples.size() > 1 ? sd / std::sqrt(static_cast<double>(samples.size())) : 0.0;
  return est;
}

ExtremeStats extreme_stats(const std::vector<SpectralSample>& samples) {
  if (samples.empty()) throw std::domain_error("extreme_stats: no samples");
  const double x = samples.front().spec.x();
  std::vector<double> maxima, minima;
  maxima.reserve(samples.size());
  minima.reserve(samples.size());
  for (const auto& s : samples) {
    maxima.push_back(s.lambda_max());
    if (x < 1) {
      const auto nz = s.nonzero();
      if (nz.empty()) throw std::domain_error("extreme_stats: sample with empty nonzero spectrum");
      minima.push_back(nz.back());
    } else {
      minima.push_back(s.lambda_min_full());
    }
  }
  ExtremeStats st;
  st.trials = static_cast<long long>(samples.size());
  std::tie(st.lambda_max_mean, st.lambda_max_std) = mean_and_sample_std(maxima);
  std::tie(st.lambda_min_mean, st.lambda_min_std) = mean_and_sample_std(minima);
  st.lambda_min_least = *std::min_element(minima.begin(), minima.end());
  return st;
}

double ks_distance_points(std::vector<double> pooled, const MpLaw& law) {
  if (pooled.empty()) throw std::domain_error("ks_distance: empty spectrum");
  std::sort(pooled.begin(), pooled.end());
  const auto n = static_cast<double>(pooled.size());
  double ks = 0;
  for (size_t i = 0; i < pooled.size(); ++i) {
    const double f = law.cdf(pooled[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i) / n - f));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return ks;
}

double ks_distance(const std::vector<SpectralSample>& samples, const MpLaw& law) {
  if (samples.empty()) throw std::domain_error("ks_distance: no samples");
  std::vector<double> pooled;
  for (const auto& s : samples) {
    if (s.spec.x() < 1) {
      const auto nz = s.nonzero();
      pooled.insert(pooled.end(), nz.begin(), nz.end());
    } else {
      pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    }
  }
  return ks_distance_points(std::move(pooled), law);
}

std::vector<ConcentrationRow> concentration_experiment(EnsembleKind kind, double x, const std::vector<int>& d_list,
                                                       int k, long long trials, std::uint64_t master_seed,
                                                       int threads) {
  if (trials < 2) throw std::domain_error("concentration_experiment: need at least 2 trials for a spread");
  if (!(x > 0)) throw std::domain_error("concentration_experiment: x must be positive");
  std::vector<ConcentrationRow> rows;
  rows.reserve(d_list.size());
  for (int d : d_list) {
    EnsembleSpec spec;
    spec.kind = kind;
    spec.d = d;
    spec.k = k;
    double dk = 1;
    for (int i = 0; i < k; ++i) dk *= d;
    spec.p = std::llround(x * dk);
    spec.master_seed = master_seed;
    const auto samples = run_trials(spec, trials, threads);
    std::vector<double> maxima;
    maxima.reserve(samples.size());
    for (const auto& s : samples) maxima.push_back(s.lambda_max());
    double mean = 0;
    for (double v : maxima) mean += v;
    mean /= static_cast<double>(maxima.size());
    double ss = 0;
    for (double v : maxima) ss += (v - mean) * (v - mean);
    ConcentrationRow row;
    row.d = d;
    row.p = spec.p;
    row.lambda_max_std = std::sqrt(ss / (static_cast<double>(maxima.size()) - 1));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rtm
