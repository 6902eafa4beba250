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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sivi/numkit/linalg.hpp"
#include "sivi/numkit/rng.hpp"

namespace sivi {

// Stochastic first-order oracle: one call to sample() is one draw of
// G(x, xi). exact_mean(), when present, is F(x) = E[G(x, xi)].
//
// Implementations may keep caches (warm starts, memoised evaluations), so an
// instance is single-owner; clone() gives an independent copy for a
// concurrent replication.
class StochasticOracle {
 public:
  virtual ~StochasticOracle() = default;

  virtual std::size_t dimension() const = 0;
  virtual Vector sample(const Vector& x, RngStream& rng) const = 0;

  virtual bool has_exact_mean() const { return false; }
  // Throws UnsupportedError unless has_exact_mean().
  virtual Vector exact_mean(const Vector& x) const;

  // A draw from the law of the mean of n independent samples. The default
  // averages n calls to sample(); oracles whose averaged law is known in
  // closed form may draw it directly.
  virtual Vector sample_mean(const Vector& x, std::int64_t n, RngStream& rng) const;

  // Noise standard deviation per coordinate when G = F + sigma * xi with xi
  // standard normal; nullopt for any other structure.
  virtual std::optional<double> additive_gaussian_sigma() const { return std::nullopt; }

  virtual std::unique_ptr<StochasticOracle> clone() const = 0;
};

// A deterministic map x -> F(x). May carry mutable caches; see clone().
class MeanMap {
 public:
  virtual ~MeanMap() = default;
  virtual std::size_t input_dimension() const = 0;
  virtual std::size_t output_dimension() const = 0;
  virtual Vector evaluate(const Vector& x) const = 0;
  virtual std::unique_ptr<MeanMap> clone() const = 0;
};

// F(x) = A x + b.
class AffineMap final : public MeanMap {
 public:
  AffineMap(Matrix a, Vector b);
  std::size_t input_dimension() const override { return a_.cols(); }
  std::size_t output_dimension() const override { return a_.rows(); }
  Vector evaluate(const Vector& x) const override;
  std::unique_ptr<MeanMap> clone() const override { return std::make_unique<AffineMap>(*this); }

  const Matrix& matrix() const { return a_; }
  const Vector& offset() const { return b_; }

 private:
  Matrix a_;
  Vector b_;
};

// G(x, xi) = F(x) + sigma * xi, xi ~ N(0, I). With sigma = 0 no draws are
// consumed. sample_mean() draws F(x) + sigma / sqrt(n) * xi, which has
// exactly the law of the n-sample average.
class AdditiveNoiseOracle final : public StochasticOracle {
 public:
  AdditiveNoiseOracle(std::unique_ptr<MeanMap> map, double sigma);
  AdditiveNoiseOracle(const AdditiveNoiseOracle& other);

  std::size_t dimension() const override { return map_->output_dimension(); }
  Vector sample(const Vector& x, RngStream& rng) const override;
  bool has_exact_mean() const override { return true; }
  Vector exact_mean(const Vector& x) const override;
  Vector sample_mean(const Vector& x, std::int64_t n, RngStream& rng) const override;
  std::optional<double> additive_gaussian_sigma() const override { return sigma_; }
  std::unique_ptr<StochasticOracle> clone() const override;

  double sigma() const { return sigma_; }
  const MeanMap& map() const { return *map_; }

 private:
  std::unique_ptr<MeanMap> map_;
  double sigma_;
};

// N_k = min(cap, ceil((k + 1)^(2 + 2 delta))). Without a cap,
// sum_k 1/sqrt(N_k) converges for every delta > 0.
struct BatchSchedule {
  double delta = 0.5;
  std::optional<std::int64_t> cap;
};

std::int64_t batch_size(const BatchSchedule& schedule, std::int64_t k);

// Mean of n draws of oracle.sample(x, rng), taken one at a time. Throws
// NumericError carrying the draw index when a draw is not finite.
Vector batch_mean(const StochasticOracle& oracle, const Vector& x, std::int64_t n, RngStream& rng);

struct VarianceDecayFit {
  double slope = 0.0;
  double intercept = 0.0;  // log of the nu^2 estimate
  bool degenerate = false;  // every mean squared deviation was zero
  std::vector<double> mean_sq_dev;  // one per batch size
  double nu_sq() const;
};

// Least-squares fit of log(mean ||batch_mean - F(x)||^2) against log N over
// `reps` independent batches per N, with batches drawn one sample at a time.
// i.i.d. averaging predicts slope -1 and intercept log(nu^2).
VarianceDecayFit verify_variance_decay(const StochasticOracle& oracle, const Vector& x,
                                       const std::vector<std::int64_t>& batch_sizes, int reps,
                                       RngStream& rng);

}  // namespace sivi
