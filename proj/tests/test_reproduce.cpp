// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <stdexcept>

#include "gftlab/mechanisms.hpp"
#include "gftlab/reproduce.hpp"

namespace gftlab {
namespace {

TEST(Reproduce, ParseIds)
{
    EXPECT_EQ(parse_example("figure1"), ExampleId::Figure1);
    EXPECT_EQ(parse_example("appendix_e"), ExampleId::AppendixE);
    EXPECT_THROW(parse_example("figure2"), std::invalid_argument);
}

TEST(Reproduce, FigureValues)
{
    const ReproduceReport r = reproduce_figure1();
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.value("opt_orig"), make_rational(41, 10));
    EXPECT_EQ(r.value("opt_aug"), make_rational(22, 5));
    EXPECT_EQ(r.value("str_aug"), make_rational(33, 10));
}

TEST(Reproduce, EpsilonExampleStrictnessThreshold)
{
    for (const char* eps : {"1/20", "1/10", "3/10", "1/2", "7/10"}) {
        const Rational e = parse_rational(eps);
        const ReproduceReport r = reproduce_intro_eps(e);
        EXPECT_TRUE(r.pass()) << eps;
        EXPECT_EQ(r.value("str_aug"), Rational(3 + 3 * e));
        EXPECT_EQ(r.value("str_aug") < r.value("opt_orig"), e < make_rational(1, 2)) << eps;
    }
}

TEST(Reproduce, B5HandDerivation)
{
    for (std::size_t n : {5u, 10u}) {
        const Rational eps = make_rational(1, 20);
        const MarketPair mp = b5_market(n, eps, 2);
        // Original: n pairs (2, 1) except one seller at 1 + eps.
        EXPECT_EQ(first_best(mp.original).gft, Rational(static_cast<long>(n)) - eps);
        // Augmented: the seller at 4/5 displaces the one at 1 + eps.
        EXPECT_EQ(str(mp.augmented).allocation.gft, Rational(static_cast<long>(n)) + make_rational(1, 5));
        EXPECT_EQ(mcafee_tr(mp.augmented).allocation.gft, Rational(static_cast<long>(n)) - make_rational(4, 5));
        EXPECT_TRUE(reproduce_b5(n, eps).pass());
    }
}

TEST(Reproduce, SingleSellerExample)
{
    const ReproduceReport r = reproduce_appendix_e();
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.value("opt"), 9);
    EXPECT_EQ(r.value("tr"), 0);
}

TEST(Reproduce, UnknownQuantityThrows)
{
    EXPECT_THROW(reproduce_figure1().value("nope"), std::out_of_range);
}

}  // namespace
}  // namespace gftlab
