// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gftlab/distribution.hpp"
#include "gftlab/market.hpp"
#include "gftlab/rng.hpp"

namespace gftlab {

// ---------------------------------------------------------------------------
// Shared-quantile coupling (buyer distribution dominates the seller one).
//
// N = m + n + 2c uniform quantiles are sorted descending, q_1 >= ... >= q_N,
// and a uniformly random labeling assigns exactly m old buyers, n old
// sellers, c new buyers and c new sellers to the positions.
// ---------------------------------------------------------------------------

enum class Label : std::uint8_t { OldBuyer, NewBuyer, OldSeller, NewSeller };

struct QuantileVector {
    std::vector<double> q;  ///< descending, each in (0, 1)
};

struct Assignment {
    std::vector<Label> labels;  ///< labels[k] belongs to position k + 1
};

struct CoupledDraw {
    QuantileVector quantiles;
    Assignment assignment;
};

/// Draws sorted quantiles and a uniform labeling (Fisher-Yates over the label
/// multiset). Equal quantiles keep draw order. Reuses `out`'s storage.
void sample_coupled(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng, CoupledDraw& out);
CoupledDraw sample_coupled(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng);
/// Unequal augmentation: `new_buyers` and `new_sellers` new labels.
void sample_coupled(std::size_t m, std::size_t n, std::size_t new_buyers, std::size_t new_sellers,
                    StreamRng& rng, CoupledDraw& out);

/// True iff the labeling has exactly (m, n, c, c) old-buyer, old-seller,
/// new-buyer, new-seller labels.
bool is_valid_assignment(const Assignment& a, std::size_t m, std::size_t n, std::size_t c);

struct RealizedMarkets {
    Profile original;
    /// Original agents first (same order), then the new agents.
    Profile augmented;
};

/// Values fb(q) at buyer positions and fs(q) at seller positions.
RealizedMarkets realize(const QuantileVector& q, const Assignment& a, const QuantileDistribution& fb,
                        const QuantileDistribution& fs);

/// Inclusive range of 1-based positions.
struct IndexRange {
    std::size_t first = 1;
    std::size_t last = 0;

    bool contains(std::size_t pos) const noexcept { return pos >= first && pos <= last; }
    std::size_t size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

/// I1 = top p positions, I2 the next p, J1 = bottom p, J2 the p before J1.
struct IndexSets {
    std::size_t total = 0;  ///< N
    std::size_t width = 0;  ///< p
    IndexRange i1, i2, j1, j2;

    /// p = ceil(n / 10); requires n >= 20 (which makes the four sets disjoint).
    static IndexSets for_market(std::size_t m, std::size_t n, std::size_t c);
    /// Explicit width for small exhaustive checks; requires p >= 1 and 4p <= N.
    static IndexSets with_width(std::size_t total, std::size_t p);

    bool disjoint() const noexcept { return 4 * width <= total; }
};

/// Label counts inside each index set.
struct WindowCounts {
    std::size_t new_buyers_i1 = 0;
    std::size_t old_buyers_i1 = 0;
    std::size_t old_buyers_i2 = 0;
    std::size_t new_sellers_j1 = 0;
    std::size_t old_sellers_j2 = 0;
};

WindowCounts window_counts(const Assignment& a, const IndexSets& s);

/// Good event: >= 2 new buyers in I1, >= 1 old buyer in I2, >= 2 new sellers
/// in J1, >= 1 old seller in J2.
bool event_e1_fsd(const Assignment& a, const IndexSets& s);
/// Every new seller sits in the top 2n + 2c positions.
bool new_sellers_in_top(const Assignment& a, std::size_t n, std::size_t c);
/// Bad event: not E1 and every new seller in the top 2n + 2c positions.
bool event_e2_fsd(const Assignment& a, const IndexSets& s, std::size_t m, std::size_t n, std::size_t c);

// ---------------------------------------------------------------------------
// Independent-quantile coupling (general distributions).
// ---------------------------------------------------------------------------

/// Per-agent quantiles; buyers sorted descending, sellers ascending.
struct LabeledQuantiles {
    std::vector<double> old_buyers;
    std::vector<double> new_buyers;
    std::vector<double> old_sellers;
    std::vector<double> new_sellers;
};

/// Independent U(0,1) per agent, drawn in the order old buyers, old
/// sellers, new buyers, new sellers. Reuses `out`'s storage.
void sample_independent(std::size_t m, std::size_t n, std::size_t new_buyers, std::size_t new_sellers,
                        StreamRng& rng, LabeledQuantiles& out);
LabeledQuantiles sample_independent(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng);

RealizedMarkets realize(const LabeledQuantiles& lq, const QuantileDistribution& fb,
                        const QuantileDistribution& fs);

/// Interval width p = r n / (100 m); I_k = (1 - kp, 1 - (k-1)p], J_k = [(k-1)p, kp).
struct IntervalScheme {
    double r = 0.0;
    double p = 0.0;

    /// Requires 0 < r < 1 and m, n >= 1.
    static IntervalScheme make(double r, std::size_t m, std::size_t n);

    bool in_i(std::size_t k, double q) const noexcept;
    bool in_j(std::size_t k, double q) const noexcept;
    /// q in I_1 u ... u I_k, i.e. q > 1 - kp.
    bool in_i_upto(std::size_t k, double q) const noexcept { return q > 1.0 - static_cast<double>(k) * p; }
    /// q in J_1 u ... u J_k, i.e. q < kp.
    bool in_j_upto(std::size_t k, double q) const noexcept { return q < static_cast<double>(k) * p; }
};

/// |I1 n B_new| >= 2, |I2 n B_old| >= 1, |J1 n S_new| >= 2, |J2 n S_old| >= 1.
bool event_e1_cont(const LabeledQuantiles& lq, const IntervalScheme& scheme);
/// Concentration: |I<=2 n B_old| <= 4pm, |(1-r/2,1] n B_old| >= rn/4,
/// |J<=2 n S_old| <= 4pm, |[0,r/2) n S_old| >= rn/4.
bool event_e3_cont(const LabeledQuantiles& lq, const IntervalScheme& scheme, std::size_t m, std::size_t n);
/// Not E1, and either every new seller lies in (r/2, 1] or fewer than n + c
/// old buyers lie in (1 - r/2, 1].
bool event_e2_cont(const LabeledQuantiles& lq, const IntervalScheme& scheme, std::size_t m, std::size_t n,
                   std::size_t c);

}  // namespace gftlab
