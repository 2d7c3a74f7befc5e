// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/coupling.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace gftlab {

void sample_coupled(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng, CoupledDraw& out)
{
    sample_coupled(m, n, c, c, rng, out);
}

void sample_coupled(std::size_t m, std::size_t n, std::size_t new_buyers, std::size_t new_sellers,
                    StreamRng& rng, CoupledDraw& out)
{
    const std::size_t total = m + n + new_buyers + new_sellers;
    auto& q = out.quantiles.q;
    q.resize(total);
    for (double& x : q) x = rng.uniform_open();
    std::stable_sort(q.begin(), q.end(), std::greater<>());

    auto& labels = out.assignment.labels;
    labels.clear();
    labels.reserve(total);
    labels.insert(labels.end(), m, Label::OldBuyer);
    labels.insert(labels.end(), n, Label::OldSeller);
    labels.insert(labels.end(), new_buyers, Label::NewBuyer);
    labels.insert(labels.end(), new_sellers, Label::NewSeller);
    for (std::size_t k = total; k > 1; --k) {
        const std::size_t j = static_cast<std::size_t>(rng.below(k));
        std::swap(labels[k - 1], labels[j]);
    }
}

CoupledDraw sample_coupled(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng)
{
    CoupledDraw d;
    sample_coupled(m, n, c, rng, d);
    return d;
}

bool is_valid_assignment(const Assignment& a, std::size_t m, std::size_t n, std::size_t c)
{
    std::size_t counts[4] = {0, 0, 0, 0};
    for (Label l : a.labels) ++counts[static_cast<std::size_t>(l)];
    return counts[static_cast<std::size_t>(Label::OldBuyer)] == m &&
           counts[static_cast<std::size_t>(Label::OldSeller)] == n &&
           counts[static_cast<std::size_t>(Label::NewBuyer)] == c &&
           counts[static_cast<std::size_t>(Label::NewSeller)] == c;
}

RealizedMarkets realize(const QuantileVector& q, const Assignment& a, const QuantileDistribution& fb,
                        const QuantileDistribution& fs)
{
    if (q.q.size() != a.labels.size())
        throw std::invalid_argument("quantile vector and assignment lengths differ");
    RealizedMarkets out;
    std::vector<double> new_buyers;
    std::vector<double> new_sellers;
    for (std::size_t k = 0; k < q.q.size(); ++k) {
        switch (a.labels[k]) {
        case Label::OldBuyer: out.original.buyers.push_back(fb.quantile(q.q[k])); break;
        case Label::NewBuyer: new_buyers.push_back(fb.quantile(q.q[k])); break;
        case Label::OldSeller: out.original.sellers.push_back(fs.quantile(q.q[k])); break;
        case Label::NewSeller: new_sellers.push_back(fs.quantile(q.q[k])); break;
        }
    }
    out.augmented = out.original;
    out.augmented.buyers.insert(out.augmented.buyers.end(), new_buyers.begin(), new_buyers.end());
    out.augmented.sellers.insert(out.augmented.sellers.end(), new_sellers.begin(), new_sellers.end());
    return out;
}

IndexSets IndexSets::for_market(std::size_t m, std::size_t n, std::size_t c)
{
    if (n < 20) throw std::invalid_argument("index sets need n >= 20");
    return with_width(m + n + 2 * c, (n + 9) / 10);
}

IndexSets IndexSets::with_width(std::size_t total, std::size_t p)
{
    if (p < 1 || 4 * p > total) throw std::invalid_argument("index sets need 1 <= p and 4p <= N");
    IndexSets s;
    s.total = total;
    s.width = p;
    s.i1 = {1, p};
    s.i2 = {p + 1, 2 * p};
    s.j1 = {total - p + 1, total};
    s.j2 = {total - 2 * p + 1, total - p};
    return s;
}

WindowCounts window_counts(const Assignment& a, const IndexSets& s)
{
    if (a.labels.size() != s.total) throw std::invalid_argument("assignment length differs from N");
    WindowCounts w;
    const auto at = [&](std::size_t pos) { return a.labels[pos - 1]; };
    for (std::size_t pos = s.i1.first; pos <= s.i1.last; ++pos) {
        if (at(pos) == Label::NewBuyer) ++w.new_buyers_i1;
        if (at(pos) == Label::OldBuyer) ++w.old_buyers_i1;
    }
    for (std::size_t pos = s.i2.first; pos <= s.i2.last; ++pos)
        if (at(pos) == Label::OldBuyer) ++w.old_buyers_i2;
    for (std::size_t pos = s.j1.first; pos <= s.j1.last; ++pos)
        if (at(pos) == Label::NewSeller) ++w.new_sellers_j1;
    for (std::size_t pos = s.j2.first; pos <= s.j2.last; ++pos)
        if (at(pos) == Label::OldSeller) ++w.old_sellers_j2;
    return w;
}

bool event_e1_fsd(const Assignment& a, const IndexSets& s)
{
    const WindowCounts w = window_counts(a, s);
    return w.new_buyers_i1 >= 2 && w.old_buyers_i2 >= 1 && w.new_sellers_j1 >= 2 && w.old_sellers_j2 >= 1;
}

bool new_sellers_in_top(const Assignment& a, std::size_t n, std::size_t c)
{
    const std::size_t top = std::min(2 * n + 2 * c, a.labels.size());
    for (std::size_t k = top; k < a.labels.size(); ++k)
        if (a.labels[k] == Label::NewSeller) return false;
    return true;
}

bool event_e2_fsd(const Assignment& a, const IndexSets& s, std::size_t /*m*/, std::size_t n, std::size_t c)
{
    return !event_e1_fsd(a, s) && new_sellers_in_top(a, n, c);
}

void sample_independent(std::size_t m, std::size_t n, std::size_t new_buyers, std::size_t new_sellers,
                        StreamRng& rng, LabeledQuantiles& out)
{
    const auto fill = [&rng](std::vector<double>& v, std::size_t count) {
        v.resize(count);
        for (double& x : v) x = rng.uniform_open();
    };
    fill(out.old_buyers, m);
    fill(out.old_sellers, n);
    fill(out.new_buyers, new_buyers);
    fill(out.new_sellers, new_sellers);
    std::sort(out.old_buyers.begin(), out.old_buyers.end(), std::greater<>());
    std::sort(out.new_buyers.begin(), out.new_buyers.end(), std::greater<>());
    std::sort(out.old_sellers.begin(), out.old_sellers.end());
    std::sort(out.new_sellers.begin(), out.new_sellers.end());
}

LabeledQuantiles sample_independent(std::size_t m, std::size_t n, std::size_t c, StreamRng& rng)
{
    LabeledQuantiles lq;
    sample_independent(m, n, c, c, rng, lq);
    return lq;
}

RealizedMarkets realize(const LabeledQuantiles& lq, const QuantileDistribution& fb,
                        const QuantileDistribution& fs)
{
    RealizedMarkets out;
    for (double q : lq.old_buyers) out.original.buyers.push_back(fb.quantile(q));
    for (double q : lq.old_sellers) out.original.sellers.push_back(fs.quantile(q));
    out.augmented = out.original;
    for (double q : lq.new_buyers) out.augmented.buyers.push_back(fb.quantile(q));
    for (double q : lq.new_sellers) out.augmented.sellers.push_back(fs.quantile(q));
    return out;
}

IntervalScheme IntervalScheme::make(double r, std::size_t m, std::size_t n)
{
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("interval scheme needs 0 < r < 1");
    if (m < 1 || n < 1) throw std::invalid_argument("interval scheme needs m, n >= 1");
    return {r, r * static_cast<double>(n) / (100.0 * static_cast<double>(m))};
}

bool IntervalScheme::in_i(std::size_t k, double q) const noexcept
{
    const double kd = static_cast<double>(k);
    return q > 1.0 - kd * p && q <= 1.0 - (kd - 1.0) * p;
}

bool IntervalScheme::in_j(std::size_t k, double q) const noexcept
{
    const double kd = static_cast<double>(k);
    return q >= (kd - 1.0) * p && q < kd * p;
}

namespace {

template <class Pred>
std::size_t count_if_all(const std::vector<double>& v, Pred pred)
{
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), pred));
}

}  // namespace

bool event_e1_cont(const LabeledQuantiles& lq, const IntervalScheme& s)
{
    return count_if_all(lq.new_buyers, [&](double q) { return s.in_i(1, q); }) >= 2 &&
           count_if_all(lq.old_buyers, [&](double q) { return s.in_i(2, q); }) >= 1 &&
           count_if_all(lq.new_sellers, [&](double q) { return s.in_j(1, q); }) >= 2 &&
           count_if_all(lq.old_sellers, [&](double q) { return s.in_j(2, q); }) >= 1;
}

bool event_e3_cont(const LabeledQuantiles& lq, const IntervalScheme& s, std::size_t m, std::size_t n)
{
    const double cap = 4.0 * s.p * static_cast<double>(m);
    const double floor = s.r * static_cast<double>(n) / 4.0;
    const double top = 1.0 - s.r / 2.0;
    const double bottom = s.r / 2.0;
    const auto high_buyers = count_if_all(lq.old_buyers, [&](double q) { return s.in_i_upto(2, q); });
    const auto top_buyers = count_if_all(lq.old_buyers, [&](double q) { return q > top; });
    const auto low_sellers = count_if_all(lq.old_sellers, [&](double q) { return s.in_j_upto(2, q); });
    const auto bottom_sellers = count_if_all(lq.old_sellers, [&](double q) { return q < bottom; });
    return static_cast<double>(high_buyers) <= cap && static_cast<double>(top_buyers) >= floor &&
           static_cast<double>(low_sellers) <= cap && static_cast<double>(bottom_sellers) >= floor;
}

bool event_e2_cont(const LabeledQuantiles& lq, const IntervalScheme& s, std::size_t /*m*/, std::size_t n,
                   std::size_t c)
{
    if (event_e1_cont(lq, s)) return false;
    const double half = s.r / 2.0;
    const bool sellers_high =
        std::all_of(lq.new_sellers.begin(), lq.new_sellers.end(), [&](double q) { return q > half; });
    const auto top_buyers = count_if_all(lq.old_buyers, [&](double q) { return q > 1.0 - half; });
    return sellers_high || top_buyers < n + c;
}

}  // namespace gftlab
