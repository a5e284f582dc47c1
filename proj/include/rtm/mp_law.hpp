#pragma once

#include <vector>

namespace rtm {

// The limiting spectral law with edges (1 ± sqrt(x))^2.
//
// density() is the textbook form sqrt((l+ - l)(l - l-)) / (2 pi x l) on the
// support. Its integral is min(1, 1/x); the full spectral measure of the
// ensemble is x * density plus an atom of mass max(0, 1 - x) at zero, which
// is what moment() integrates (so moment(m) -> beta_m(x)). cdf() is the
// probability law of the nonzero spectrum alone, which is what the KS
// statistic compares against.
class MpLaw {
 public:
  explicit MpLaw(double x);

  double x() const { return x_; }
  double lambda_minus() const { return lam_minus_; }
  double lambda_plus() const { return lam_plus_; }

  double density(double lambda) const;

  // Limiting moment of the full spectral measure; moment(0) = 1.
  // Adaptive quadrature to absolute tolerance 1e-9.
  double moment(int m) const;

  double continuous_mass() const;  // integral of density()
  double total_mass() const;       // atom + x * continuous mass

  double cdf(double lambda) const;        // nonzero-spectrum CDF, in [0,1]
  double quantile(double u) const;        // inverse of cdf on (0,1)

 private:
  double theta_of(double lambda) const;
  double prefix_at(double theta) const;

  double x_ = 1;
  double lam_minus_ = 0;
  double lam_plus_ = 4;
  double center_ = 2;
  double half_width_ = 2;
  std::vector<double> theta_grid_;
  std::vector<double> prefix_;  // cumulative integral of the printed density
};

}  // namespace rtm
