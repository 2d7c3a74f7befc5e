// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <limits>
#include <stdexcept>

#include "gftlab/rational.hpp"

namespace gftlab {
namespace {

TEST(Rational, MakeRationalCanonicalizes)
{
    const Rational x = make_rational(6, -4);
    EXPECT_EQ(to_string(x), "-3/2");
    EXPECT_EQ(x.get_den(), 2);
    EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
}

TEST(Rational, ParsesFractionsAndDecimals)
{
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/4"), make_rational(-3, 4));
    EXPECT_EQ(parse_rational("2.1"), make_rational(21, 10));
    EXPECT_EQ(parse_rational("1e-3"), make_rational(1, 1000));
    EXPECT_EQ(parse_rational("4/8"), make_rational(1, 2));
}

TEST(Rational, RejectsMalformed)
{
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(Rational, FromDoubleUsesShortestDecimal)
{
    EXPECT_EQ(rational_from_double(2.1), make_rational(21, 10));
    EXPECT_EQ(rational_from_double(0.05), make_rational(1, 20));
    EXPECT_EQ(rational_from_double(-3.0), Rational(-3));
    EXPECT_THROW(rational_from_double(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST(Rational, ToStringAndDouble)
{
    EXPECT_EQ(to_string(make_rational(41, 10)), "41/10");
    EXPECT_EQ(to_string(Rational(5)), "5");
    EXPECT_DOUBLE_EQ(to_double(make_rational(1, 4)), 0.25);
}

}  // namespace
}  // namespace gftlab
