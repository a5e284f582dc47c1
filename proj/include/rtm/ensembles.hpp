#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rtm/moment_engine.hpp"
#include "rtm/rng.hpp"

namespace rtm {

enum class StateKind { Unit, GaussianNorm };

// Unit: Haar-random unit vector in C^d. GaussianNorm: i.i.d. complex Gaussian
// entries with E|v_i|^2 = 1/d, so E||v||^2 = 1.
Eigen::VectorXcd sample_state(int d, StateKind kind, PhiloxRng& rng);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Normalized;
  long long p = 1;
  int d = 2;
  int k = 1;
  int d_a = 0;  // PartialTrace only
  int d_b = 0;
  std::uint64_t master_seed = 0;

  long long dimension() const;  // D = d^k (d_a^k for PartialTrace)
  double x() const;             // p / D
  void validate() const;        // throws on bad parameters or guard violations
};

struct SpectralSample {
  std::vector<double> eigenvalues;  // all D of them, sorted descending
  long long trial = 0;
  std::uint64_t stream = 0;  // RNG stream the trial used
  double residual = 0;       // max ||A q - lambda q|| / max(1, |lambda|_max)
  EnsembleSpec spec;

  double lambda_max() const { return eigenvalues.empty() ? 0 : eigenvalues.front(); }
  double lambda_min_full() const { return eigenvalues.empty() ? 0 : eigenvalues.back(); }
  // Numerical zeros of a rank-deficient matrix sit well below this threshold.
  double zero_threshold() const { return 1e-10 * std::max(1.0, lambda_max()); }
  std::vector<double> nonzero() const;
  double trace() const;
};

enum class SpectrumRoute {
  Auto,   // Gram when p <= D, dense otherwise
  Dense,  // build the D x D covariance
  Gram,   // build the p x p Gram matrix (same nonzero spectrum)
};

// Factor vectors for one trial: factors[s][j] is subsystem j of state s.
using FactorSet = std::vector<std::vector<Eigen::VectorXcd>>;

FactorSet sample_factors(const EnsembleSpec& spec, long long trial);
Eigen::VectorXcd product_vector(const std::vector<Eigen::VectorXcd>& factors);
Eigen::MatrixXcd covariance_from_factors(const FactorSet& f);  // D x D
Eigen::MatrixXcd gram_from_factors(const FactorSet& f);        // p x p
// PartialTrace covariance: each factor is a reduced operator of a random
// bipartite pure state, tensored across the k subsystems.
Eigen::MatrixXcd ptrace_covariance(const EnsembleSpec& spec, long long trial);

SpectralSample spectrum(const EnsembleSpec& spec, long long trial, SpectrumRoute route = SpectrumRoute::Auto);

// Deterministic for fixed (spec, trials) regardless of thread count: trial i
// always uses RNG stream i and results are stored by index.
std::vector<SpectralSample> run_trials(const EnsembleSpec& spec, long long trials, int threads = 1);

}  // namespace rtm
