// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/reproduce.hpp"

#include <stdexcept>

#include "gftlab/mechanisms.hpp"

namespace gftlab {
namespace {

Rational gft(MechanismKind kind, const ExactProfile& p) { return run_mechanism(kind, p).allocation.gft; }
Rational opt(const ExactProfile& p) { return first_best(p).gft; }

Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace

std::string to_string(ExampleId id)
{
    switch (id) {
    case ExampleId::Figure1: return "figure1";
    case ExampleId::IntroEps: return "intro_eps";
    case ExampleId::B5: return "b5";
    case ExampleId::AppendixE: return "appendix_e";
    }
    return "?";
}

ExampleId parse_example(const std::string& name)
{
    if (name == "figure1") return ExampleId::Figure1;
    if (name == "intro_eps") return ExampleId::IntroEps;
    if (name == "b5") return ExampleId::B5;
    if (name == "appendix_e") return ExampleId::AppendixE;
    throw std::invalid_argument("unknown example '" + name + "' (expected figure1, intro_eps, b5 or appendix_e)");
}

bool ReproduceReport::pass() const
{
    for (const auto& x : quantities)
        if (!x.matches()) return false;
    for (const auto& c : checks)
        if (!c.matches()) return false;
    return true;
}

const Rational& ReproduceReport::value(const std::string& name) const
{
    for (const auto& x : quantities)
        if (x.name == name) return x.value;
    throw std::out_of_range("no quantity named " + name);
}

MarketPair intro_eps_market(const Rational& eps)
{
    MarketPair mp;
    mp.original.buyers = {q(3), Rational(2 + eps), q(2)};
    mp.original.sellers = {q(1), q(1), q(1)};
    mp.augmented = mp.original;
    mp.augmented.buyers.push_back(Rational(2 + 3 * eps));
    mp.augmented.sellers.push_back(Rational(2 + 2 * eps));
    return mp;
}

MarketPair b5_market(std::size_t n, const Rational& eps, std::size_t c)
{
    if (n < 2 || c < 1) throw std::invalid_argument("b5 needs n >= 2 and c >= 1");
    MarketPair mp;
    mp.original.buyers.assign(n, q(2));
    mp.original.buyers.insert(mp.original.buyers.end(), 2 * c, q(9, 10));
    mp.original.sellers.assign(n - 1, q(1));
    mp.original.sellers.push_back(Rational(1 + eps));
    mp.augmented = mp.original;
    mp.augmented.buyers.insert(mp.augmented.buyers.end(), c, q(0));
    mp.augmented.sellers.push_back(q(4, 5));
    mp.augmented.sellers.insert(mp.augmented.sellers.end(), c - 1, q(100));
    return mp;
}

ReproduceReport reproduce_figure1()
{
    const MarketPair mp = intro_eps_market(q(1, 10));
    ReproduceReport r;
    r.example = "figure1";
    r.quantities = {{"opt_orig", opt(mp.original), q(41, 10)},
                    {"opt_aug", opt(mp.augmented), q(22, 5)},
                    {"str_aug", gft(MechanismKind::Str, mp.augmented), q(33, 10)}};
    r.checks = {{"str_aug_below_opt_orig", r.quantities[2].value < r.quantities[0].value, true}};
    return r;
}

ReproduceReport reproduce_intro_eps(const Rational& eps)
{
    if (eps <= 0) throw std::invalid_argument("intro_eps needs eps > 0");
    const MarketPair mp = intro_eps_market(eps);
    ReproduceReport r;
    r.example = "intro_eps";
    r.quantities = {{"eps", eps, eps},
                    {"opt_orig", opt(mp.original), Rational(4 + eps)},
                    {"opt_aug", opt(mp.augmented), Rational(4 + 4 * eps)},
                    {"str_aug", gft(MechanismKind::Str, mp.augmented), Rational(3 + 3 * eps)}};
    r.checks = {{"str_aug_below_opt_orig", r.value("str_aug") < r.value("opt_orig"), eps < q(1, 2)}};
    return r;
}

ReproduceReport reproduce_b5(std::size_t n, const Rational& eps, std::size_t c)
{
    if (!(eps > 0 && eps < q(1, 10))) throw std::invalid_argument("b5 needs 0 < eps < 1/10");
    const MarketPair mp = b5_market(n, eps, c);
    const Rational nq = q(static_cast<long>(n));
    ReproduceReport r;
    r.example = "b5";
    r.quantities = {{"n", nq, nq},
                    {"eps", eps, eps},
                    {"c", q(static_cast<long>(c)), q(static_cast<long>(c))},
                    {"tr_aug", gft(MechanismKind::Tr, mp.augmented), Rational(nq - q(4, 5))},
                    {"str_aug", gft(MechanismKind::Str, mp.augmented), Rational(nq + q(1, 5))},
                    {"opt_orig", opt(mp.original), Rational(nq - eps)},
                    {"opt_aug", opt(mp.augmented), Rational(nq + q(1, 5))}};

    // One buyer at 1, one seller at 9/10; add a buyer at 0 and a seller at 4/5.
    ExactProfile pair_orig{{q(1)}, {q(9, 10)}};
    ExactProfile pair_aug{{q(1), q(0)}, {q(9, 10), q(4, 5)}};
    r.quantities.push_back({"pair_opt_orig", opt(pair_orig), q(1, 10)});
    r.quantities.push_back({"pair_str_aug", gft(MechanismKind::Str, pair_aug), q(1, 5)});
    r.quantities.push_back({"pair_tr_aug", gft(MechanismKind::Tr, pair_aug), q(0)});

    r.checks = {{"tr_below_opt_orig", r.value("tr_aug") < r.value("opt_orig"), true},
                {"opt_orig_below_str", r.value("opt_orig") < r.value("str_aug"), true}};
    return r;
}

ReproduceReport reproduce_appendix_e()
{
    // A single low seller: the only efficient trade is the top buyer with it,
    // and every reduction-based mechanism removes that trade.
    const ExactProfile p{{q(10), q(2), q(0)}, {q(1)}};
    ReproduceReport r;
    r.example = "appendix_e";
    r.quantities = {{"opt", opt(p), q(9)},
                    {"tr", gft(MechanismKind::Tr, p), q(0)},
                    {"str", gft(MechanismKind::Str, p), q(0)}};
    return r;
}

ReproduceReport reproduce(ExampleId id)
{
    switch (id) {
    case ExampleId::Figure1: return reproduce_figure1();
    case ExampleId::IntroEps: return reproduce_intro_eps(q(1, 10));
    case ExampleId::B5: return reproduce_b5(5, q(1, 20), 2);
    case ExampleId::AppendixE: return reproduce_appendix_e();
    }
    throw std::invalid_argument("unknown example");
}

}  // namespace gftlab
