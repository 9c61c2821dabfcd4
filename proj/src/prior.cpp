#include "beamloop/prior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "beamloop/beam_geometry.hpp"

namespace beamloop {

namespace {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

Prior Prior::uniform() { return Prior(); }

Prior Prior::truncated_gaussian(double mean, double sigma) {
  if (!std::isfinite(mean) || !std::isfinite(sigma) || sigma <= 0.0) {
    throw std::invalid_argument("truncated gaussian needs a finite mean and a positive sigma");
  }
  Prior p;
  p.kind_ = Kind::truncated_gaussian;
  p.mean_ = mean;
  p.sigma_ = sigma;
  p.lower_ = std_normal_cdf(-mean / sigma);
  p.norm_ = std_normal_cdf((kTwoPi - mean) / sigma) - p.lower_;
  if (!(p.norm_ > 0.0)) throw std::invalid_argument("truncated gaussian has no mass on the circle");
  return p;
}

Prior Prior::semi_gaussian() { return truncated_gaussian(std::numbers::pi, 1.0); }

Prior Prior::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw std::invalid_argument("piecewise prior needs at least two knots");
  if (knots.front().first != 0.0 || std::abs(knots.back().first - kTwoPi) > 1e-12) {
    throw std::invalid_argument("piecewise prior knots must span [0, 2pi]");
  }
  knots.back().first = kTwoPi;
  double area = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const auto [x, f] = knots[k];
    if (!std::isfinite(x) || !std::isfinite(f) || f < 0.0) {
      throw std::invalid_argument("piecewise prior densities must be finite and non-negative");
    }
    if (k > 0) {
      if (!(x > knots[k - 1].first)) throw std::invalid_argument("piecewise prior angles must increase");
      area += 0.5 * (f + knots[k - 1].second) * (x - knots[k - 1].first);
    }
  }
  if (!(area > 0.0)) throw std::invalid_argument("piecewise prior has zero mass");

  Prior p;
  p.kind_ = Kind::piecewise_linear;
  for (auto& knot : knots) knot.second /= area;
  p.cumulative_.assign(knots.size(), 0.0);
  for (std::size_t k = 1; k < knots.size(); ++k) {
    p.cumulative_[k] =
        p.cumulative_[k - 1] + 0.5 * (knots[k].second + knots[k - 1].second) * (knots[k].first - knots[k - 1].first);
  }
  p.knots_ = std::move(knots);
  return p;
}

double Prior::pdf(double psi) const {
  double x = wrap_angle(psi);
  if (x == 0.0) x = kTwoPi;
  switch (kind_) {
    case Kind::uniform:
      return 1.0 / kTwoPi;
    case Kind::truncated_gaussian: {
      const double z = (x - mean_) / sigma_;
      return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(kTwoPi) * norm_);
    }
    case Kind::piecewise_linear: {
      auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                                 [](const std::pair<double, double>& k, double v) { return k.first < v; });
      if (it == knots_.begin()) return it->second;
      const auto& [x1, f1] = *it;
      const auto& [x0, f0] = *(it - 1);
      return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
    }
  }
  return 0.0;
}

double Prior::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (x >= kTwoPi) return 1.0;
  switch (kind_) {
    case Kind::uniform:
      return x / kTwoPi;
    case Kind::truncated_gaussian:
      return std::clamp((std_normal_cdf((x - mean_) / sigma_) - lower_) / norm_, 0.0, 1.0);
    case Kind::piecewise_linear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                 [](double v, const std::pair<double, double>& k) { return v < k.first; });
      const auto k = static_cast<std::size_t>(it - knots_.begin()) - 1;
      const auto& [x0, f0] = knots_[k];
      const auto& [x1, f1] = knots_[k + 1];
      const double t = x - x0;
      return std::min(1.0, cumulative_[k] + f0 * t + 0.5 * (f1 - f0) * t * t / (x1 - x0));
    }
  }
  return 0.0;
}

double Prior::unwrapped_cdf(double x) const {
  const double turns = std::floor(x / kTwoPi);
  return turns + cdf(x - turns * kTwoPi);
}

double Prior::quantile(double u) const {
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return kTwoPi;
  switch (kind_) {
    case Kind::uniform:
      return u * kTwoPi;
    case Kind::truncated_gaussian: {
      double lo = 0.0, hi = kTwoPi;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < u ? lo : hi) = mid;
      }
      return hi;
    }
    case Kind::piecewise_linear: {
      auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin(), 1)) - 1;
      const auto& [x0, f0] = knots_[k];
      const auto& [x1, f1] = knots_[k + 1];
      const double slope = (f1 - f0) / (x1 - x0);
      const double r = u - cumulative_[k];
      // Root of slope/2 t^2 + f0 t = r in the cancellation-free form.
      const double disc = std::max(0.0, f0 * f0 + 2.0 * slope * r);
      const double denom = f0 + std::sqrt(disc);
      const double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
      return std::clamp(x0 + t, x0, x1);
    }
  }
  return 0.0;
}

double Prior::max_density() const {
  switch (kind_) {
    case Kind::uniform:
      return 1.0 / kTwoPi;
    case Kind::truncated_gaussian:
      return pdf(std::clamp(mean_, 1e-300, kTwoPi));
    case Kind::piecewise_linear: {
      double m = 0.0;
      for (const auto& knot : knots_) m = std::max(m, knot.second);
      return m;
    }
  }
  return 0.0;
}

}  // namespace beamloop
