// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "gftlab/rational.hpp"

namespace gftlab {

/// One realized market. Agent ids are positions in the two vectors.
/// Money is double for simulation or Rational for exact checks.
template <class Money>
struct BasicProfile {
    std::vector<Money> buyers;
    std::vector<Money> sellers;
};

using Profile = BasicProfile<double>;
using ExactProfile = BasicProfile<Rational>;

/// Throws std::invalid_argument unless m, n >= 1 and all values are finite and >= 0.
void validate_profile(const Profile& p);
void validate_profile(const ExactProfile& p);

ExactProfile to_exact(const Profile& p);

/// Buyers by value descending, sellers ascending; ties keep the lower index first.
struct SortViews {
    std::vector<std::size_t> buyer_order;
    std::vector<std::size_t> seller_order;
};

template <class Money>
SortViews sort_views(const BasicProfile<Money>& p)
{
    SortViews v;
    v.buyer_order.resize(p.buyers.size());
    v.seller_order.resize(p.sellers.size());
    std::iota(v.buyer_order.begin(), v.buyer_order.end(), std::size_t{0});
    std::iota(v.seller_order.begin(), v.seller_order.end(), std::size_t{0});
    std::stable_sort(v.buyer_order.begin(), v.buyer_order.end(),
                     [&](std::size_t a, std::size_t b) { return p.buyers[a] > p.buyers[b]; });
    std::stable_sort(v.seller_order.begin(), v.seller_order.end(),
                     [&](std::size_t a, std::size_t b) { return p.sellers[a] < p.sellers[b]; });
    return v;
}

/// Values in sorted order: buyers b(1) >= b(2) >= ..., sellers s(1) <= s(2) <= ...
template <class Money>
struct SortedMarket {
    std::vector<Money> buyers;
    std::vector<Money> sellers;
};

template <class Money>
SortedMarket<Money> sorted_values(const BasicProfile<Money>& p, const SortViews& v)
{
    SortedMarket<Money> s;
    s.buyers.reserve(v.buyer_order.size());
    s.sellers.reserve(v.seller_order.size());
    for (std::size_t i : v.buyer_order) s.buyers.push_back(p.buyers[i]);
    for (std::size_t j : v.seller_order) s.sellers.push_back(p.sellers[j]);
    return s;
}

/// Largest i <= min(m, n) with b(i) >= s(i), or 0. Inputs must be sorted.
template <class Money>
std::size_t optimal_trade_size(std::span<const Money> buyers_desc, std::span<const Money> sellers_asc)
{
    const std::size_t limit = std::min(buyers_desc.size(), sellers_asc.size());
    std::size_t r = 0;
    while (r < limit && buyers_desc[r] >= sellers_asc[r]) ++r;
    return r;
}

/// Sum over the first k sorted pairs of b(i) - s(i).
template <class Money>
Money sorted_pairs_gft(std::span<const Money> buyers_desc, std::span<const Money> sellers_asc,
                       std::size_t k)
{
    Money gft = 0;
    for (std::size_t i = 0; i < k; ++i) {
        gft += buyers_desc[i];
        gft -= sellers_asc[i];
    }
    return gft;
}

template <class Money>
Money first_best_gft_sorted(std::span<const Money> buyers_desc, std::span<const Money> sellers_asc)
{
    return sorted_pairs_gft(buyers_desc, sellers_asc, optimal_trade_size(buyers_desc, sellers_asc));
}

template <class Money>
struct BasicAllocation {
    std::size_t trade_size = 0;
    std::vector<std::size_t> traded_buyers;
    std::vector<std::size_t> traded_sellers;
    Money gft = 0;
};

using Allocation = BasicAllocation<double>;
using ExactAllocation = BasicAllocation<Rational>;

/// Trades the top-k buyers with the bottom-k sellers of the given views.
template <class Money>
BasicAllocation<Money> allocation_of_prefix(const BasicProfile<Money>& p, const SortViews& v,
                                            std::size_t k)
{
    BasicAllocation<Money> a;
    a.trade_size = k;
    a.traded_buyers.assign(v.buyer_order.begin(), v.buyer_order.begin() + static_cast<std::ptrdiff_t>(k));
    a.traded_sellers.assign(v.seller_order.begin(), v.seller_order.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
        a.gft += p.buyers[a.traded_buyers[i]];
        a.gft -= p.sellers[a.traded_sellers[i]];
    }
    return a;
}

/// Welfare-maximizing allocation: the top r buyers trade with the bottom r
/// sellers, r the optimal trade size. A tie b(i) = s(i) counts as a trade.
template <class Money>
BasicAllocation<Money> first_best(const BasicProfile<Money>& p)
{
    const SortViews v = sort_views(p);
    const SortedMarket<Money> s = sorted_values(p, v);
    const std::size_t r = optimal_trade_size<Money>(s.buyers, s.sellers);
    return allocation_of_prefix(p, v, r);
}

/// GFT plus the value of every seller (sellers keep their items unless traded).
template <class Money>
Money welfare(const BasicProfile<Money>& p, const BasicAllocation<Money>& a)
{
    Money w = a.gft;
    for (const Money& s : p.sellers) w += s;
    return w;
}

}  // namespace gftlab
