// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gftlab {
namespace {

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// Integral of the uniform CDF on [lo, hi] from -inf to x.
double integrated_uniform_cdf(double lo, double hi, double x)
{
    if (x <= lo) return 0.0;
    const double width = hi - lo;
    if (width <= 0.0) return x - lo;
    if (x >= hi) return width / 2.0 + (x - hi);
    return (x - lo) * (x - lo) / (2.0 * width);
}

}  // namespace

QuantileDistribution QuantileDistribution::discrete(std::vector<std::pair<double, double>> support,
                                                    std::string name)
{
    if (support.empty()) throw std::invalid_argument("discrete distribution needs a support");
    double total = 0.0;
    for (const auto& [v, w] : support) {
        require_finite(v, "support value");
        require_finite(w, "weight");
        if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");

    std::sort(support.begin(), support.end());
    QuantileDistribution d;
    d.kind_ = DistributionKind::Discrete;
    d.name_ = std::move(name);
    for (const auto& [v, w] : support) {
        if (w == 0.0) continue;
        if (!d.values_.empty() && d.values_.back() == v) {
            d.weights_.back() += w;
        } else {
            d.values_.push_back(v);
            d.weights_.push_back(w);
        }
    }
    double running = 0.0;
    for (double w : d.weights_) {
        running += w;
        d.cumulative_.push_back(running);
    }
    d.cumulative_.back() = 1.0;
    return d;
}

QuantileDistribution QuantileDistribution::uniform(double lo, double hi, std::string name)
{
    require_finite(lo, "lo");
    require_finite(hi, "hi");
    if (lo > hi) throw std::invalid_argument("uniform needs lo <= hi");
    QuantileDistribution d;
    d.kind_ = DistributionKind::Uniform;
    d.name_ = std::move(name);
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

QuantileDistribution QuantileDistribution::piecewise_linear(
    std::vector<std::pair<double, double>> points, std::string name)
{
    if (points.size() < 2) throw std::invalid_argument("piecewise-linear quantile needs >= 2 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [q, v] = points[i];
        require_finite(q, "breakpoint quantile");
        require_finite(v, "breakpoint value");
        if (q < 0.0 || q > 1.0) throw std::invalid_argument("breakpoint quantiles must lie in [0, 1]");
        if (i > 0 && !(q > points[i - 1].first))
            throw std::invalid_argument("breakpoint quantiles must be strictly increasing");
        if (i > 0 && v < points[i - 1].second)
            throw std::invalid_argument("breakpoint values must be nondecreasing");
    }
    QuantileDistribution d;
    d.kind_ = DistributionKind::PiecewiseLinearQuantile;
    d.name_ = std::move(name);
    d.points_ = std::move(points);
    return d;
}

double QuantileDistribution::quantile(double q) const
{
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
    switch (kind_) {
    case DistributionKind::Discrete: {
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), q);
        return values_[static_cast<std::size_t>(it - cumulative_.begin())];
    }
    case DistributionKind::Uniform:
        return lo_ + q * (hi_ - lo_);
    case DistributionKind::PiecewiseLinearQuantile: {
        if (q <= points_.front().first) return points_.front().second;
        if (q >= points_.back().first) return points_.back().second;
        auto it = std::upper_bound(points_.begin(), points_.end(), q,
                                   [](double x, const auto& p) { return x < p.first; });
        const auto& [q1, v1] = *it;
        const auto& [q0, v0] = *(it - 1);
        return v0 + (q - q0) / (q1 - q0) * (v1 - v0);
    }
    }
    return 0.0;
}

double QuantileDistribution::cdf(double x) const
{
    switch (kind_) {
    case DistributionKind::Discrete: {
        auto it = std::upper_bound(values_.begin(), values_.end(), x);
        if (it == values_.begin()) return 0.0;
        return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
    }
    case DistributionKind::Uniform:
        if (x < lo_) return 0.0;
        if (x >= hi_) return 1.0;
        return (x - lo_) / (hi_ - lo_);
    case DistributionKind::PiecewiseLinearQuantile: {
        if (x < points_.front().second) return 0.0;
        if (x >= points_.back().second) return 1.0;
        double result = points_.front().first;
        for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
            const auto [q0, v0] = points_[k];
            const auto [q1, v1] = points_[k + 1];
            if (v1 <= x) {
                result = q1;
            } else {
                if (v0 <= x) result = q0 + (x - v0) / (v1 - v0) * (q1 - q0);
                break;
            }
        }
        return result;
    }
    }
    return 0.0;
}

bool check_fsd(const QuantileDistribution& fb, const QuantileDistribution& fs, std::size_t grid_size)
{
    if (fb.kind() == DistributionKind::Discrete && fs.kind() == DistributionKind::Discrete) {
        // Both quantile functions are constant on every piece between merged
        // cumulative breakpoints; probing each piece's midpoint is exact.
        std::vector<double> cuts{0.0};
        cuts.insert(cuts.end(), fb.cumulative().begin(), fb.cumulative().end());
        cuts.insert(cuts.end(), fs.cumulative().begin(), fs.cumulative().end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double q = 0.5 * (cuts[k] + cuts[k + 1]);
            if (!(q > 0.0 && q < 1.0)) continue;
            if (fb.quantile(q) < fs.quantile(q)) return false;
        }
        return true;
    }
    if (grid_size < 2) throw std::invalid_argument("FSD grid needs at least 2 points");
    const double step = 1.0 / static_cast<double>(grid_size + 1);
    for (std::size_t k = 1; k <= grid_size; ++k) {
        const double q = static_cast<double>(k) * step;
        if (fb.quantile(q) < fs.quantile(q)) return false;
    }
    return true;
}

OverlapEstimate overlap_r(const QuantileDistribution& fb, const QuantileDistribution& fs,
                          std::size_t trials, std::uint64_t seed)
{
    if (fb.kind() == DistributionKind::Discrete) {
        double r = 0.0;
        for (std::size_t k = 0; k < fb.values().size(); ++k)
            r += fb.weights()[k] * fs.cdf(fb.values()[k]);
        return {std::clamp(r, 0.0, 1.0), 0.0, true};
    }
    if (fb.kind() == DistributionKind::Uniform && fs.kind() == DistributionKind::Uniform) {
        double r = 0.0;
        if (fb.hi() == fb.lo()) {
            r = fs.cdf(fb.lo());
        } else {
            r = (integrated_uniform_cdf(fs.lo(), fs.hi(), fb.hi()) -
                 integrated_uniform_cdf(fs.lo(), fs.hi(), fb.lo())) /
                (fb.hi() - fb.lo());
        }
        return {std::clamp(r, 0.0, 1.0), 0.0, true};
    }

    if (trials < 1) throw std::invalid_argument("overlap estimate needs at least one trial");
    StreamRng rng(StreamKey{seed, 0x6f7665726c6170ULL, 0});
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const double b = fb.sample(rng);
        const double s = fs.sample(rng);
        if (b >= s) ++hits;
    }
    const double n = static_cast<double>(trials);
    const double r = static_cast<double>(hits) / n;
    return {r, 1.96 * std::sqrt(r * (1.0 - r) / n), false};
}

QuantileBoundCheck verify_r_quantile_bound(const QuantileDistribution& fb,
                                           const QuantileDistribution& fs, double r)
{
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("overlap must lie in [0, 1]");
    QuantileBoundCheck out;
    out.r = r;
    out.degenerate = (r == 0.0 || r == 1.0);
    if (r == 0.0) return out;
    out.buyer_value = fb.quantile(1.0 - r / 2.0);
    out.seller_value = fs.quantile(r / 2.0);
    out.holds = out.buyer_value >= out.seller_value;
    return out;
}

QuantileBoundCheck verify_r_quantile_bound(const QuantileDistribution& fb,
                                           const QuantileDistribution& fs)
{
    return verify_r_quantile_bound(fb, fs, overlap_r(fb, fs).r);
}

}  // namespace gftlab
