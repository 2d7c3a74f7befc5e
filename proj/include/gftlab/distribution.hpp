// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gftlab/rng.hpp"

namespace gftlab {

enum class DistributionKind { Discrete, Uniform, PiecewiseLinearQuantile };

/// A value distribution described by its generalized inverse CDF,
/// b(q) = inf{x : Pr[b <= x] >= q}. Immutable once constructed.
class QuantileDistribution {
public:
    /// Support as (value, weight) pairs in any order. Duplicate values are
    /// merged and zero weights dropped. Weights must be nonnegative and sum
    /// to 1 within 1e-12.
    static QuantileDistribution discrete(std::vector<std::pair<double, double>> support,
                                         std::string name = {});
    static QuantileDistribution uniform(double lo, double hi, std::string name = {});
    /// Breakpoints (q, v) with strictly increasing q in [0, 1] and
    /// nondecreasing v; linear in between, constant beyond the end points.
    static QuantileDistribution piecewise_linear(std::vector<std::pair<double, double>> points,
                                                 std::string name = {});

    DistributionKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

    /// Throws std::domain_error unless 0 < q < 1.
    double quantile(double q) const;
    /// Pr[X <= x].
    double cdf(double x) const;

    double sample(StreamRng& rng) const { return quantile(rng.uniform_open()); }

    // Discrete: sorted support values, their weights and running sums (last is exactly 1).
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& cumulative() const noexcept { return cumulative_; }
    // Uniform bounds.
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    // PiecewiseLinearQuantile breakpoints.
    const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

private:
    QuantileDistribution() = default;

    DistributionKind kind_ = DistributionKind::Uniform;
    std::string name_;
    std::vector<double> values_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    double lo_ = 0.0;
    double hi_ = 1.0;
    std::vector<std::pair<double, double>> points_;
};

inline constexpr std::size_t kDefaultFsdGrid = 10001;
inline constexpr std::size_t kDefaultOverlapTrials = 1'000'000;

/// True iff fb(q) >= fs(q) for every checked q. Exact for two Discrete
/// distributions (checked on every piece of the merged step functions);
/// otherwise checked at q = k/(grid_size+1), k = 1..grid_size.
bool check_fsd(const QuantileDistribution& fb, const QuantileDistribution& fs,
               std::size_t grid_size = kDefaultFsdGrid);

struct OverlapEstimate {
    double r = 0.0;
    double halfwidth = 0.0;  ///< 1.96 standard errors; 0 when exact
    bool exact = false;
};

/// r = Pr[b >= s] for independent b ~ fb, s ~ fs. Closed form when fb is
/// Discrete (sum over its atoms of w * Pr[s <= atom]) or both are Uniform;
/// Monte Carlo otherwise.
OverlapEstimate overlap_r(const QuantileDistribution& fb, const QuantileDistribution& fs,
                          std::size_t trials = kDefaultOverlapTrials, std::uint64_t seed = 0);

struct QuantileBoundCheck {
    bool holds = true;
    /// r is 0 or 1; for r = 0 the bound is vacuous and not evaluated.
    bool degenerate = false;
    double r = 0.0;
    double buyer_value = 0.0;   ///< fb(1 - r/2)
    double seller_value = 0.0;  ///< fs(r/2)
};

/// Checks fb(1 - r/2) >= fs(r/2) at the given overlap.
QuantileBoundCheck verify_r_quantile_bound(const QuantileDistribution& fb,
                                           const QuantileDistribution& fs, double r);
QuantileBoundCheck verify_r_quantile_bound(const QuantileDistribution& fb,
                                           const QuantileDistribution& fs);

}  // namespace gftlab
