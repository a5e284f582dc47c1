#include "rtm/ensembles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

constexpr long long kMaxDimension = 4096;
constexpr long long kMaxStates = 1000000;

long long int_power(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > kMaxDimension * kMaxDimension) return r;  // saturate past any guard
    r *= base;
  }
  return r;
}

}  // namespace

Eigen::VectorXcd sample_state(int d, StateKind kind, PhiloxRng& rng) {
  if (d < 1) throw std::domain_error("sample_state: d must be positive");
  Eigen::VectorXcd v(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v[i] = scale * rng.complex_gaussian();
  if (kind == StateKind::Unit) v /= v.norm();
  return v;
}

long long EnsembleSpec::dimension() const {
  return int_power(kind == EnsembleKind::PartialTrace ? d_a : d, k);
}

double EnsembleSpec::x() const { return static_cast<double>(p) / static_cast<double>(dimension()); }

void EnsembleSpec::validate() const {
  if (p < 1) throw std::domain_error("EnsembleSpec: p must be positive");
  if (k < 1) throw std::domain_error("EnsembleSpec: k must be positive");
  if (kind == EnsembleKind::PartialTrace) {
    if (d_a < 2 || d_b < 2) throw std::domain_error("EnsembleSpec: PartialTrace needs d_a, d_b >= 2");
  } else if (d < 2) {
    throw std::domain_error("EnsembleSpec: d must be >= 2");
  }
  if (kind == EnsembleKind::Repeated) {
    const auto root = static_cast<long long>(std::llround(std::pow(static_cast<double>(p), 1.0 / k)));
    bool ok = false;
    for (long long c = std::max(1LL, root - 2); c <= root + 2 && !ok; ++c) ok = int_power(c, k) == p;
    if (!ok) throw std::domain_error("EnsembleSpec: Repeated needs p to be a perfect k-th power");
  }
  if (dimension() > kMaxDimension) {
    throw ResourceError("EnsembleSpec: matrix dimension " + std::to_string(dimension()) + " exceeds guard " +
                        std::to_string(kMaxDimension));
  }
  if (p > kMaxStates) throw ResourceError("EnsembleSpec: p exceeds guard " + std::to_string(kMaxStates));
}

std::vector<double> SpectralSample::nonzero() const {
  const double thr = zero_threshold();
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (double e : eigenvalues) {
    if (e > thr) out.push_back(e);
  }
  return out;
}

double SpectralSample::trace() const {
  double t = 0;
  for (double e : eigenvalues) t += e;  // fixed index order keeps runs reproducible
  return t;
}

FactorSet sample_factors(const EnsembleSpec& spec, long long trial) {
  spec.validate();
  PhiloxRng rng(spec.master_seed, static_cast<std::uint64_t>(trial));
  FactorSet f(static_cast<size_t>(spec.p), std::vector<Eigen::VectorXcd>(static_cast<size_t>(spec.k)));
  switch (spec.kind) {
    case EnsembleKind::Normalized:
    case EnsembleKind::Gaussian: {
      const StateKind sk = spec.kind == EnsembleKind::Normalized ? StateKind::Unit : StateKind::GaussianNorm;
      for (long long s = 0; s < spec.p; ++s) {
        for (int j = 0; j < spec.k; ++j) f[static_cast<size_t>(s)][static_cast<size_t>(j)] = sample_state(spec.d, sk, rng);
      }
      break;
    }
    case EnsembleKind::Repeated: {
      // Pool j holds p^{j/k} fresh unit vectors; state s points at pool entry
      // ceil(s / p^{1 - j/k}).
      const auto root = static_cast<long long>(std::llround(std::pow(static_cast<double>(spec.p), 1.0 / spec.k)));
      std::vector<std::vector<Eigen::VectorXcd>> pools(static_cast<size_t>(spec.k));
      for (int j = 1; j <= spec.k; ++j) {
        const long long size = int_power(root, j);
        pools[static_cast<size_t>(j) - 1].reserve(static_cast<size_t>(size));
        for (long long i = 0; i < size; ++i) {
          pools[static_cast<size_t>(j) - 1].push_back(sample_state(spec.d, StateKind::Unit, rng));
        }
      }
      for (long long s = 1; s <= spec.p; ++s) {
        for (int j = 1; j <= spec.k; ++j) {
          const long long div = int_power(root, spec.k - j);
          const long long idx = (s + div - 1) / div;  // 1-based pool index
          f[static_cast<size_t>(s) - 1][static_cast<size_t>(j) - 1] = pools[static_cast<size_t>(j) - 1][static_cast<size_t>(idx) - 1];
        }
      }
      break;
    }
    case EnsembleKind::PartialTrace:
      throw std::domain_error("sample_factors: PartialTrace has no rank-one factor form; use ptrace_covariance");
  }
  return f;
}

Eigen::VectorXcd product_vector(const std::vector<Eigen::VectorXcd>& factors) {
  Eigen::VectorXcd v = factors.front();
  for (size_t j = 1; j < factors.size(); ++j) {
    const auto& w = factors[j];
    Eigen::VectorXcd next(v.size() * w.size());
    for (Eigen::Index a = 0; a < v.size(); ++a) next.segment(a * w.size(), w.size()) = v[a] * w;
    v = std::move(next);
  }
  return v;
}

Eigen::MatrixXcd covariance_from_factors(const FactorSet& f) {
  const auto p = static_cast<Eigen::Index>(f.size());
  const Eigen::Index dim = product_vector(f.front()).size();
  Eigen::MatrixXcd v(dim, p);
  for (Eigen::Index s = 0; s < p; ++s) v.col(s) = product_vector(f[static_cast<size_t>(s)]);
  return v * v.adjoint();
}

Eigen::MatrixXcd gram_from_factors(const FactorSet& f) {
  const auto p = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXcd g(p, p);
  for (Eigen::Index s = 0; s < p; ++s) {
    for (Eigen::Index t = s; t < p; ++t) {
      std::complex<double> inner{1.0, 0.0};
      for (size_t j = 0; j < f[static_cast<size_t>(s)].size(); ++j) {
        inner *= f[static_cast<size_t>(s)][j].dot(f[static_cast<size_t>(t)][j]);
      }
      g(s, t) = inner;
      g(t, s) = std::conj(inner);
    }
  }
  return g;
}

Eigen::MatrixXcd ptrace_covariance(const EnsembleSpec& spec, long long trial) {
  spec.validate();
  if (spec.kind != EnsembleKind::PartialTrace) throw std::domain_error("ptrace_covariance: kind must be PartialTrace");
  PhiloxRng rng(spec.master_seed, static_cast<std::uint64_t>(trial));
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (long long s = 0; s < spec.p; ++s) {
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < spec.k; ++j) {
      const Eigen::VectorXcd psi = sample_state(spec.d_a * spec.d_b, StateKind::Unit, rng);
      // reshape to d_a x d_b and trace out the second factor
      Eigen::MatrixXcd a(spec.d_a, spec.d_b);
      for (int i = 0; i < spec.d_a; ++i) {
        for (int l = 0; l < spec.d_b; ++l) a(i, l) = psi[i * spec.d_b + l];
      }
      const Eigen::MatrixXcd rho = a * a.adjoint();
      Eigen::MatrixXcd next(phi.rows() * spec.d_a, phi.cols() * spec.d_a);
      for (Eigen::Index r = 0; r < phi.rows(); ++r) {
        for (Eigen::Index c = 0; c < phi.cols(); ++c) next.block(r * spec.d_a, c * spec.d_a, spec.d_a, spec.d_a) = phi(r, c) * rho;
      }
      phi = std::move(next);
    }
    m += phi;
  }
  return m;
}

SpectralSample spectrum(const EnsembleSpec& spec, long long trial, SpectrumRoute route) {
  spec.validate();
  const long long dim = spec.dimension();

  Eigen::MatrixXcd a;
  if (spec.kind == EnsembleKind::PartialTrace) {
    a = ptrace_covariance(spec, trial);
  } else {
    const FactorSet f = sample_factors(spec, trial);
    const bool gram = route == SpectrumRoute::Gram || (route == SpectrumRoute::Auto && spec.p <= dim);
    if (gram && spec.p > dim) throw std::domain_error("spectrum: Gram route needs p <= D");
    a = gram ? gram_from_factors(f) : covariance_from_factors(f);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectrum: eigensolver failed to converge (trial " + std::to_string(trial) + ", " +
                       to_string(spec.kind) + ", p=" + std::to_string(spec.p) + ", D=" + std::to_string(dim) + ")");
  }

  SpectralSample out;
  out.trial = trial;
  out.stream = static_cast<std::uint64_t>(trial);
  out.spec = spec;

  const Eigen::VectorXd vals = solver.eigenvalues();
  const double scale = std::max(1.0, std::max(std::abs(vals[0]), std::abs(vals[vals.size() - 1])));
  const Eigen::MatrixXcd resid = a * solver.eigenvectors() - solver.eigenvectors() * vals.asDiagonal();
  out.residual = resid.colwise().norm().maxCoeff() / scale;
  if (out.residual > 1e-8) {
    throw NumericError("spectrum: eigenpair residual " + std::to_string(out.residual) + " over budget (trial " +
                       std::to_string(trial) + ")");
  }

  out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  out.eigenvalues.resize(static_cast<size_t>(dim), 0.0);  // pad the Gram route back to D entries
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<double>());
  return out;
}

std::vector<SpectralSample> run_trials(const EnsembleSpec& spec, long long trials, int threads) {
  spec.validate();
  if (trials < 1) throw std::domain_error("run_trials: trials must be positive");
  std::vector<SpectralSample> out(static_cast<size_t>(trials));
  const int workers = std::max(1, static_cast<int>(std::min<long long>(threads, trials)));
  if (workers == 1) {
    for (long long t = 0; t < trials; ++t) out[static_cast<size_t>(t)] = spectrum(spec, t);
    return out;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<long long> next{0};
  auto work = [&]() {
    for (;;) {
      const long long t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        out[static_cast<size_t>(t)] = spectrum(spec, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace rtm
