// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gftlab/market.hpp"

namespace gftlab {

enum class MechanismKind {
    Str,  ///< seller trade reduction
    Btr,  ///< buyer trade reduction
    Tr,   ///< McAfee trade reduction
};

std::string to_string(MechanismKind k);
/// Accepts "str", "btr", "tr" (also "mcafee"); throws std::invalid_argument otherwise.
MechanismKind parse_mechanism(const std::string& name);

/// Allocation and prices decided from the sorted value vectors.
template <class Money>
struct TradeDecision {
    std::size_t optimal_size = 0;
    std::size_t trade_size = 0;
    bool reduced = false;
    Money buyer_price = 0;
    Money seller_price = 0;
};

// Sorted-input decision rules. b is b(1) >= ... >= b(m), s is s(1) <= ... <= s(n).
// A missing (r+1)-th agent plays the role of s(n+1) = +inf or b(m+1) = -inf.

/// STR: keep all r trades at price s(r+1) when b(r) >= s(r+1); otherwise keep
/// r-1 trades, buyers pay b(r) and sellers receive s(r).
template <class Money>
TradeDecision<Money> decide_str(std::span<const Money> b, std::span<const Money> s)
{
    TradeDecision<Money> d;
    const std::size_t r = optimal_trade_size(b, s);
    d.optimal_size = r;
    if (r == 0) return d;
    if (r < s.size() && b[r - 1] >= s[r]) {
        d.trade_size = r;
        d.buyer_price = s[r];
        d.seller_price = s[r];
    } else {
        d.trade_size = r - 1;
        d.reduced = true;
        d.buyer_price = b[r - 1];
        d.seller_price = s[r - 1];
    }
    return d;
}

/// BTR: mirror of STR, pricing at b(r+1) when s(r) <= b(r+1).
template <class Money>
TradeDecision<Money> decide_btr(std::span<const Money> b, std::span<const Money> s)
{
    TradeDecision<Money> d;
    const std::size_t r = optimal_trade_size(b, s);
    d.optimal_size = r;
    if (r == 0) return d;
    if (r < b.size() && b[r] >= s[r - 1]) {
        d.trade_size = r;
        d.buyer_price = b[r];
        d.seller_price = b[r];
    } else {
        d.trade_size = r - 1;
        d.reduced = true;
        d.buyer_price = b[r - 1];
        d.seller_price = s[r - 1];
    }
    return d;
}

/// McAfee: price phi = (b(r+1) + s(r+1)) / 2; all r trade at phi when
/// s(r) <= phi <= b(r), otherwise the r-th trade is reduced. With no
/// (r+1)-th agent on either side phi is undefined and the trade is reduced.
template <class Money>
TradeDecision<Money> decide_tr(std::span<const Money> b, std::span<const Money> s)
{
    TradeDecision<Money> d;
    const std::size_t r = optimal_trade_size(b, s);
    d.optimal_size = r;
    if (r == 0) return d;
    if (r < b.size() && r < s.size()) {
        Money phi = b[r] + s[r];
        phi /= 2;
        if (s[r - 1] <= phi && phi <= b[r - 1]) {
            d.trade_size = r;
            d.buyer_price = phi;
            d.seller_price = phi;
            return d;
        }
    }
    d.trade_size = r - 1;
    d.reduced = true;
    d.buyer_price = b[r - 1];
    d.seller_price = s[r - 1];
    return d;
}

template <class Money>
TradeDecision<Money> decide(MechanismKind kind, std::span<const Money> b, std::span<const Money> s)
{
    switch (kind) {
    case MechanismKind::Str: return decide_str(b, s);
    case MechanismKind::Btr: return decide_btr(b, s);
    case MechanismKind::Tr: return decide_tr(b, s);
    }
    return {};
}

template <class Money>
struct BasicOutcome {
    BasicAllocation<Money> allocation;
    std::vector<Money> buyer_payments;   ///< 0 for untraded buyers
    std::vector<Money> seller_receipts;  ///< 0 for untraded sellers
    bool reduced = false;
};

using MechanismOutcome = BasicOutcome<double>;
using ExactOutcome = BasicOutcome<Rational>;

template <class Money>
BasicOutcome<Money> run_mechanism(MechanismKind kind, const BasicProfile<Money>& p)
{
    const SortViews v = sort_views(p);
    const SortedMarket<Money> sorted = sorted_values(p, v);
    const TradeDecision<Money> d =
        decide<Money>(kind, std::span<const Money>(sorted.buyers), std::span<const Money>(sorted.sellers));

    BasicOutcome<Money> o;
    o.allocation = allocation_of_prefix(p, v, d.trade_size);
    o.reduced = d.reduced;
    o.buyer_payments.assign(p.buyers.size(), Money(0));
    o.seller_receipts.assign(p.sellers.size(), Money(0));
    for (std::size_t i : o.allocation.traded_buyers) o.buyer_payments[i] = d.buyer_price;
    for (std::size_t j : o.allocation.traded_sellers) o.seller_receipts[j] = d.seller_price;
    return o;
}

template <class Money>
BasicOutcome<Money> str(const BasicProfile<Money>& p) { return run_mechanism(MechanismKind::Str, p); }
template <class Money>
BasicOutcome<Money> btr(const BasicProfile<Money>& p) { return run_mechanism(MechanismKind::Btr, p); }
template <class Money>
BasicOutcome<Money> mcafee_tr(const BasicProfile<Money>& p) { return run_mechanism(MechanismKind::Tr, p); }

/// Role swap with negated values: buyers become -sellers and sellers -buyers.
template <class Money>
BasicProfile<Money> dual(const BasicProfile<Money>& p)
{
    BasicProfile<Money> d;
    for (const Money& s : p.sellers) d.buyers.push_back(Money(-s));
    for (const Money& b : p.buyers) d.sellers.push_back(Money(-b));
    return d;
}

/// Maps an outcome on dual(p) back to p: traded sets swap sides, money
/// flows negate and swap.
template <class Money>
BasicOutcome<Money> undual(const BasicOutcome<Money>& o)
{
    BasicOutcome<Money> back;
    back.allocation.trade_size = o.allocation.trade_size;
    back.allocation.traded_buyers = o.allocation.traded_sellers;
    back.allocation.traded_sellers = o.allocation.traded_buyers;
    back.allocation.gft = o.allocation.gft;
    for (const Money& x : o.seller_receipts) back.buyer_payments.push_back(Money(-x));
    for (const Money& x : o.buyer_payments) back.seller_receipts.push_back(Money(-x));
    back.reduced = o.reduced;
    return back;
}

/// Result of a property check; `violations` names the offending agents.
struct PropertyCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Traded buyers pay at most their value, traded sellers receive at least
/// theirs, untraded agents pay and receive exactly 0.
PropertyCheck check_ir(const MechanismOutcome& o, const Profile& p);
PropertyCheck check_ir(const ExactOutcome& o, const ExactProfile& p);
/// Total buyer payments >= total seller receipts.
PropertyCheck check_wbb(const MechanismOutcome& o);
PropertyCheck check_wbb(const ExactOutcome& o);

using MechanismFn = std::function<MechanismOutcome(const Profile&)>;

struct Deviation {
    bool is_buyer = true;
    std::size_t agent = 0;
    double bid = 0.0;
    double truthful_utility = 0.0;
    double deviating_utility = 0.0;
};

struct DsicReport {
    bool ok = true;
    std::optional<Deviation> violation;  ///< first profitable deviation found
};

/// Deviation bids: every profile value, midpoints of consecutive distinct
/// values, and each value +/- delta (negative bids dropped).
std::vector<double> dsic_grid(const Profile& p, std::span<const double> extra = {}, double delta = 1e-3);

/// Brute-force unilateral deviation test over `bid_grid` (tolerance 1e-9).
DsicReport check_dsic(const MechanismFn& mechanism, const Profile& p, std::span<const double> bid_grid);
DsicReport check_dsic(MechanismKind kind, const Profile& p, std::span<const double> bid_grid);

}  // namespace gftlab
