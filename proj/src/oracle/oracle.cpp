// Copyright 2026 The SIVI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sivi/oracle/oracle.hpp"

#include <cmath>
#include <string>

#include "sivi/numkit/errors.hpp"
#include "sivi/numkit/kernels.hpp"

namespace sivi {

Vector StochasticOracle::exact_mean(const Vector&) const {
  throw UnsupportedError("oracle has no closed-form mean");
}

Vector StochasticOracle::sample_mean(const Vector& x, std::int64_t n, RngStream& rng) const {
  return batch_mean(*this, x, n, rng);
}

AffineMap::AffineMap(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size()) {
    throw DimensionError("AffineMap: matrix has " + std::to_string(a_.rows()) +
                         " rows, offset has " + std::to_string(b_.size()) + " entries");
  }
}

Vector AffineMap::evaluate(const Vector& x) const { return multiply(a_, x) + b_; }

AdditiveNoiseOracle::AdditiveNoiseOracle(std::unique_ptr<MeanMap> map, double sigma)
    : map_(std::move(map)), sigma_(sigma) {
  if (!map_) throw ConstructionError("AdditiveNoiseOracle: null map");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw ConstructionError("AdditiveNoiseOracle: sigma must be finite and >= 0");
  }
}

AdditiveNoiseOracle::AdditiveNoiseOracle(const AdditiveNoiseOracle& other)
    : map_(other.map_->clone()), sigma_(other.sigma_) {}

Vector AdditiveNoiseOracle::exact_mean(const Vector& x) const { return map_->evaluate(x); }

Vector AdditiveNoiseOracle::sample(const Vector& x, RngStream& rng) const {
  Vector g = map_->evaluate(x);
  if (sigma_ > 0.0) {
    for (double& v : g) v += sigma_ * rng.gaussian();
  }
  return g;
}

Vector AdditiveNoiseOracle::sample_mean(const Vector& x, std::int64_t n, RngStream& rng) const {
  if (n < 1) throw DomainError("sample_mean: batch size must be >= 1");
  Vector g = map_->evaluate(x);
  if (sigma_ > 0.0) {
    const double s = sigma_ / std::sqrt(static_cast<double>(n));
    for (double& v : g) v += s * rng.gaussian();
  }
  return g;
}

std::unique_ptr<StochasticOracle> AdditiveNoiseOracle::clone() const {
  return std::make_unique<AdditiveNoiseOracle>(*this);
}

std::int64_t batch_size(const BatchSchedule& schedule, std::int64_t k) {
  if (k < 0) throw DomainError("batch_size: k must be >= 0");
  if (!(schedule.delta > 0.0)) throw DomainError("batch_size: delta must be > 0");
  const double p = std::pow(static_cast<double>(k + 1), 2.0 + 2.0 * schedule.delta);
  // pow() of an exact integer power can land an ulp above the integer;
  // ceil() must not round that up.
  const double nearest = std::round(p);
  double n = std::abs(p - nearest) <= 1e-12 * p ? nearest : std::ceil(p);
  if (schedule.cap && n > static_cast<double>(*schedule.cap)) return *schedule.cap;
  if (n >= 0x1.0p62) throw DomainError("batch_size: N_k overflows; set a cap");
  return static_cast<std::int64_t>(n);
}

Vector batch_mean(const StochasticOracle& oracle, const Vector& x, std::int64_t n, RngStream& rng) {
  if (n < 1) throw DomainError("batch_mean: batch size must be >= 1");
  // Running mean m_j = m_{j-1} + (g_j - m_{j-1}) / j; constant draws stay exact.
  Vector mean(oracle.dimension(), 0.0);
  Vector diff(oracle.dimension());
  for (std::int64_t j = 0; j < n; ++j) {
    const Vector g = oracle.sample(x, rng);
    if (g.size() != mean.size()) throw DimensionError("batch_mean: oracle returned wrong dimension");
    if (!all_finite(g.span())) throw NumericError("batch_mean: non-finite oracle draw", j);
    simd::axpby(1.0, g.span(), -1.0, mean.span(), diff.span());
    simd::axpy(1.0 / static_cast<double>(j + 1), diff.span(), mean.span());
  }
  return mean;
}

double VarianceDecayFit::nu_sq() const { return std::exp(intercept); }

VarianceDecayFit verify_variance_decay(const StochasticOracle& oracle, const Vector& x,
                                       const std::vector<std::int64_t>& batch_sizes, int reps,
                                       RngStream& rng) {
  if (!oracle.has_exact_mean()) {
    throw UnsupportedError("verify_variance_decay: oracle has no exact mean");
  }
  if (batch_sizes.size() < 3) throw DomainError("verify_variance_decay: need >= 3 batch sizes");
  for (std::size_t i = 0; i < batch_sizes.size(); ++i) {
    if (batch_sizes[i] < 1 || (i > 0 && batch_sizes[i] <= batch_sizes[i - 1])) {
      throw DomainError("verify_variance_decay: batch sizes must be positive and increasing");
    }
  }
  if (reps < 30) throw DomainError("verify_variance_decay: need >= 30 reps");

  const Vector mean = oracle.exact_mean(x);
  VarianceDecayFit fit;
  for (std::int64_t n : batch_sizes) {
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) acc += norm_sq(batch_mean(oracle, x, n, rng) - mean);
    fit.mean_sq_dev.push_back(acc / reps);
  }

  fit.degenerate = true;
  for (double v : fit.mean_sq_dev) fit.degenerate = fit.degenerate && v == 0.0;
  if (fit.degenerate) return fit;
  for (double v : fit.mean_sq_dev) {
    if (!(v > 0.0)) throw NumericError("verify_variance_decay: zero deviation at some N", 0);
  }

  const double m = static_cast<double>(batch_sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < batch_sizes.size(); ++i) {
    const double lx = std::log(static_cast<double>(batch_sizes[i]));
    const double ly = std::log(fit.mean_sq_dev[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

}  // namespace sivi
