// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gftlab {
namespace {

std::string describe(const char* side, std::size_t index, const char* what)
{
    std::ostringstream os;
    os << side << ' ' << index << ": " << what;
    return os.str();
}

template <class Money>
bool contains(const std::vector<std::size_t>& v, std::size_t x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

template <class Money>
PropertyCheck ir_impl(const BasicOutcome<Money>& o, const BasicProfile<Money>& p)
{
    PropertyCheck c;
    const auto& a = o.allocation;
    for (std::size_t i = 0; i < p.buyers.size(); ++i) {
        const bool traded = contains<Money>(a.traded_buyers, i);
        if (traded && o.buyer_payments[i] > p.buyers[i])
            c.violations.push_back(describe("buyer", i, "pays more than its value"));
        if (!traded && o.buyer_payments[i] != 0)
            c.violations.push_back(describe("buyer", i, "pays without trading"));
    }
    for (std::size_t j = 0; j < p.sellers.size(); ++j) {
        const bool traded = contains<Money>(a.traded_sellers, j);
        if (traded && o.seller_receipts[j] < p.sellers[j])
            c.violations.push_back(describe("seller", j, "receives less than its value"));
        if (!traded && o.seller_receipts[j] != 0)
            c.violations.push_back(describe("seller", j, "is paid without trading"));
    }
    c.ok = c.violations.empty();
    return c;
}

template <class Money>
PropertyCheck wbb_impl(const BasicOutcome<Money>& o)
{
    Money paid = 0;
    Money received = 0;
    for (const Money& x : o.buyer_payments) paid += x;
    for (const Money& x : o.seller_receipts) received += x;
    PropertyCheck c;
    if (paid < received) {
        std::ostringstream os;
        os << "deficit: buyers pay " << paid << ", sellers receive " << received;
        c.violations.push_back(os.str());
        c.ok = false;
    }
    return c;
}

double utility(const MechanismOutcome& o, bool is_buyer, std::size_t agent, double value)
{
    if (is_buyer) {
        if (!contains<double>(o.allocation.traded_buyers, agent)) return 0.0;
        return value - o.buyer_payments[agent];
    }
    if (!contains<double>(o.allocation.traded_sellers, agent)) return 0.0;
    return o.seller_receipts[agent] - value;
}

}  // namespace

std::string to_string(MechanismKind k)
{
    switch (k) {
    case MechanismKind::Str: return "str";
    case MechanismKind::Btr: return "btr";
    case MechanismKind::Tr: return "tr";
    }
    return "?";
}

MechanismKind parse_mechanism(const std::string& name)
{
    if (name == "str") return MechanismKind::Str;
    if (name == "btr") return MechanismKind::Btr;
    if (name == "tr" || name == "mcafee") return MechanismKind::Tr;
    throw std::invalid_argument("unknown mechanism '" + name + "' (expected str, btr or tr)");
}

PropertyCheck check_ir(const MechanismOutcome& o, const Profile& p) { return ir_impl(o, p); }
PropertyCheck check_ir(const ExactOutcome& o, const ExactProfile& p) { return ir_impl(o, p); }
PropertyCheck check_wbb(const MechanismOutcome& o) { return wbb_impl(o); }
PropertyCheck check_wbb(const ExactOutcome& o) { return wbb_impl(o); }

std::vector<double> dsic_grid(const Profile& p, std::span<const double> extra, double delta)
{
    std::vector<double> base(p.buyers.begin(), p.buyers.end());
    base.insert(base.end(), p.sellers.begin(), p.sellers.end());
    base.insert(base.end(), extra.begin(), extra.end());
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    std::vector<double> grid;
    for (std::size_t k = 0; k < base.size(); ++k) {
        grid.push_back(base[k]);
        grid.push_back(base[k] + delta);
        if (base[k] - delta >= 0.0) grid.push_back(base[k] - delta);
        if (k + 1 < base.size()) grid.push_back(0.5 * (base[k] + base[k + 1]));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

DsicReport check_dsic(const MechanismFn& mechanism, const Profile& p, std::span<const double> bid_grid)
{
    constexpr double kTolerance = 1e-9;
    const MechanismOutcome truthful = mechanism(p);
    Profile deviated = p;

    for (int side = 0; side < 2; ++side) {
        const bool is_buyer = side == 0;
        const std::size_t count = is_buyer ? p.buyers.size() : p.sellers.size();
        for (std::size_t agent = 0; agent < count; ++agent) {
            const double value = is_buyer ? p.buyers[agent] : p.sellers[agent];
            const double honest = utility(truthful, is_buyer, agent, value);
            double& slot = is_buyer ? deviated.buyers[agent] : deviated.sellers[agent];
            for (double bid : bid_grid) {
                slot = bid;
                const double lie = utility(mechanism(deviated), is_buyer, agent, value);
                if (lie > honest + kTolerance) {
                    slot = value;
                    return {false, Deviation{is_buyer, agent, bid, honest, lie}};
                }
            }
            slot = value;
        }
    }
    return {};
}

DsicReport check_dsic(MechanismKind kind, const Profile& p, std::span<const double> bid_grid)
{
    return check_dsic([kind](const Profile& q) { return run_mechanism(kind, q); }, p, bid_grid);
}

}  // namespace gftlab
