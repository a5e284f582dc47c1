#include "rtm/mp_law.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "rtm/errors.hpp"

namespace rtm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kGridPoints = 10000;

double simpson(const std::function<double(double)>& f, double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = simpson(f, a, mid);
  const double right = simpson(f, mid, b);
  const double delta = left + right - whole;
  // symmetric integrands can fool the first error estimates, so never accept
  // before a few subdivision levels
  if ((depth >= 3 && std::abs(delta) <= 15.0 * tol) || depth >= 40) return left + right + delta / 15.0;
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth + 1) + adaptive_step(f, mid, b, right, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = adaptive_step(f, a, b, simpson(f, a, b), tol, 0);
  if (!std::isfinite(r)) throw NumericError("adaptive quadrature produced a non-finite value");
  return r;
}

}  // namespace

MpLaw::MpLaw(double x) : x_(x) {
  if (!(x > 0)) throw std::domain_error("MpLaw: x must be positive");
  const double s = std::sqrt(x);
  lam_minus_ = (1 - s) * (1 - s);
  lam_plus_ = (1 + s) * (1 + s);
  center_ = 0.5 * (lam_minus_ + lam_plus_);
  half_width_ = 0.5 * (lam_plus_ - lam_minus_);

  // Under lambda = c + h sin(theta) the edge square roots become h cos(theta),
  // so the mass integrand h^2 cos^2(theta) / (2 pi x lambda(theta)) is smooth
  // on the whole support, including x = 1 where the left edge touches zero.
  theta_grid_.resize(kGridPoints + 1);
  prefix_.resize(kGridPoints + 1);
  const double h2 = half_width_ * half_width_;
  auto mass_integrand = [&](double theta) {
    const double lam = center_ + half_width_ * std::sin(theta);
    if (x_ == 1.0) {
      // c = h: cos^2/(c + h sin) simplifies to (1 - sin)/h
      return h2 * (1 - std::sin(theta)) / (2 * kPi * x_ * half_width_);
    }
    const double c = std::cos(theta);
    return h2 * c * c / (2 * kPi * x_ * lam);
  };
  prefix_[0] = 0;
  for (int i = 0; i <= kGridPoints; ++i) {
    theta_grid_[static_cast<size_t>(i)] = -0.5 * kPi + kPi * i / kGridPoints;
  }
  for (int i = 1; i <= kGridPoints; ++i) {
    prefix_[static_cast<size_t>(i)] =
        prefix_[static_cast<size_t>(i) - 1] +
        simpson(mass_integrand, theta_grid_[static_cast<size_t>(i) - 1], theta_grid_[static_cast<size_t>(i)]);
  }
}

double MpLaw::density(double lambda) const {
  if (lambda <= lam_minus_ || lambda >= lam_plus_) return 0;
  return std::sqrt((lam_plus_ - lambda) * (lambda - lam_minus_)) / (2 * kPi * x_ * lambda);
}

double MpLaw::moment(int m) const {
  if (m < 0) throw std::domain_error("MpLaw::moment: negative order");
  if (m == 0) return 1;
  const double h2 = half_width_ * half_width_;
  auto f = [&](double theta) {
    const double lam = center_ + half_width_ * std::sin(theta);
    const double c = std::cos(theta);
    return h2 / (2 * kPi) * std::pow(lam, m - 1) * c * c;
  };
  return adaptive_simpson(f, -0.5 * kPi, 0.5 * kPi, 1e-9);
}

double MpLaw::continuous_mass() const { return prefix_.back(); }

double MpLaw::total_mass() const { return std::max(0.0, 1.0 - x_) + x_ * continuous_mass(); }

double MpLaw::theta_of(double lambda) const {
  const double t = std::clamp((lambda - center_) / half_width_, -1.0, 1.0);
  return std::asin(t);
}

double MpLaw::prefix_at(double theta) const {
  theta = std::clamp(theta, -0.5 * kPi, 0.5 * kPi);
  const double pos = (theta + 0.5 * kPi) / kPi * kGridPoints;
  const auto cell = static_cast<size_t>(std::clamp(pos, 0.0, static_cast<double>(kGridPoints - 1)));
  const double theta0 = theta_grid_[cell];
  const double h2 = half_width_ * half_width_;
  auto mass_integrand = [&](double th) {
    const double lam = center_ + half_width_ * std::sin(th);
    if (x_ == 1.0) return h2 * (1 - std::sin(th)) / (2 * kPi * x_ * half_width_);
    const double c = std::cos(th);
    return h2 * c * c / (2 * kPi * x_ * lam);
  };
  return prefix_[cell] + simpson(mass_integrand, theta0, theta);
}

double MpLaw::cdf(double lambda) const {
  if (lambda <= lam_minus_) return 0;
  if (lambda >= lam_plus_) return 1;
  return prefix_at(theta_of(lambda)) / continuous_mass();
}

double MpLaw::quantile(double u) const {
  if (!(u > 0 && u < 1)) throw std::domain_error("MpLaw::quantile: u must lie in (0,1)");
  const double target = u * continuous_mass();
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
  const auto hi = static_cast<size_t>(std::clamp<std::ptrdiff_t>(it - prefix_.begin(), 1, kGridPoints));
  const size_t lo = hi - 1;
  const double span = prefix_[hi] - prefix_[lo];
  const double frac = span > 0 ? (target - prefix_[lo]) / span : 0.5;
  const double theta = theta_grid_[lo] + frac * (theta_grid_[hi] - theta_grid_[lo]);
  return center_ + half_width_ * std::sin(theta);
}

}  // namespace rtm
