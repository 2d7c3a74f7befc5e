// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gftlab/market.hpp"
#include "gftlab/rational.hpp"

namespace gftlab {

enum class ExampleId { Figure1, IntroEps, B5, AppendixE };

std::string to_string(ExampleId id);
/// "figure1", "intro_eps", "b5" or "appendix_e".
ExampleId parse_example(const std::string& name);

/// A computed quantity next to its hand-derived value.
struct ExampleQuantity {
    std::string name;
    Rational value;
    Rational expected;

    bool matches() const { return value == expected; }
};

struct ExampleCheck {
    std::string name;
    bool holds = false;
    bool expected = true;

    bool matches() const { return holds == expected; }
};

struct ReproduceReport {
    std::string example;
    std::vector<ExampleQuantity> quantities;
    std::vector<ExampleCheck> checks;

    bool pass() const;
    const Rational& value(const std::string& name) const;
};

struct MarketPair {
    ExactProfile original;
    ExactProfile augmented;
};

/// Buyers {3, 2+eps, 2} and sellers {1, 1, 1}; the augmentation adds a buyer
/// 2+3eps and a seller 2+2eps. eps = 1/10 is the figure example.
MarketPair intro_eps_market(const Rational& eps);
/// n buyers at 2, 2c buyers at 9/10, n-1 sellers at 1 and one at 1+eps;
/// the augmentation adds c buyers at 0, one seller at 4/5 and c-1 at 100.
MarketPair b5_market(std::size_t n, const Rational& eps, std::size_t c);

ReproduceReport reproduce_figure1();
ReproduceReport reproduce_intro_eps(const Rational& eps);
ReproduceReport reproduce_b5(std::size_t n, const Rational& eps, std::size_t c = 2);
ReproduceReport reproduce_appendix_e();

/// Default parameters: eps = 1/10 for intro_eps; n = 5, eps = 1/20, c = 2 for b5.
ReproduceReport reproduce(ExampleId id);

}  // namespace gftlab
