#pragma once

#include <utility>
#include <vector>

namespace beamloop {

// AoD distribution on (0, 2pi]. Immutable once built.
class Prior {
 public:
  enum class Kind { uniform, truncated_gaussian, piecewise_linear };

  static Prior uniform();
  // Gaussian N(mean, sigma^2) restricted to (0, 2pi] and renormalized.
  static Prior truncated_gaussian(double mean, double sigma);
  // N(pi, 1) on (0, 2pi].
  static Prior semi_gaussian();
  // Density linear between knots (angle, density). Angles strictly increase
  // from 0 to 2pi; densities are rescaled to integrate to one.
  static Prior piecewise_linear(std::vector<std::pair<double, double>> knots);

  Kind kind() const noexcept { return kind_; }
  double mean() const noexcept { return mean_; }
  double sigma() const noexcept { return sigma_; }
  // Normalized knots for a piecewise-linear prior, empty otherwise.
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

  // `psi` is wrapped onto (0, 2pi].
  double pdf(double psi) const;
  // Probability of (0, x] for x in [0, 2pi]; clamped outside.
  double cdf(double x) const;
  // CDF extended to the real line, growing by one per turn. The mass of the
  // arc (a, b] with a <= b <= a + 2pi is unwrapped_cdf(b) - unwrapped_cdf(a).
  double unwrapped_cdf(double x) const;
  // Smallest x in [0, 2pi] with cdf(x) >= u.
  double quantile(double u) const;
  double max_density() const;

 private:
  Prior() = default;

  Kind kind_ = Kind::uniform;
  double mean_ = 0.0;
  double sigma_ = 1.0;
  double lower_ = 0.0;  // Phi(-mean / sigma)
  double norm_ = 1.0;   // Phi((2pi - mean) / sigma) - lower_
  std::vector<std::pair<double, double>> knots_;
  std::vector<double> cumulative_;  // mass up to each knot
};

}  // namespace beamloop
