// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gftlab/market.hpp"
#include "support/oracles.hpp"

namespace gftlab {
namespace {

TEST(Market, ValidateRejectsBadProfiles)
{
    EXPECT_THROW(validate_profile(Profile{{}, {1.0}}), std::invalid_argument);
    EXPECT_THROW(validate_profile(Profile{{1.0}, {}}), std::invalid_argument);
    EXPECT_THROW(validate_profile(Profile{{-1.0}, {1.0}}), std::invalid_argument);
    EXPECT_THROW(validate_profile(Profile{{std::nan("")}, {1.0}}), std::invalid_argument);
    EXPECT_THROW(validate_profile(Profile{{std::numeric_limits<double>::infinity()}, {1.0}}),
                 std::invalid_argument);
    EXPECT_NO_THROW(validate_profile(Profile{{0.0}, {0.0}}));
}

TEST(Market, SortViewsBreakTiesByIndex)
{
    const Profile p{{1.0, 3.0, 1.0, 2.0}, {5.0, 0.5, 5.0}};
    const SortViews v = sort_views(p);
    EXPECT_EQ(v.buyer_order, (std::vector<std::size_t>{1, 3, 0, 2}));
    EXPECT_EQ(v.seller_order, (std::vector<std::size_t>{1, 0, 2}));
}

TEST(Market, FirstBestFigureOriginal)
{
    const ExactProfile p{{Rational(3), make_rational(21, 10), Rational(2)}, {Rational(1), Rational(1), Rational(1)}};
    const ExactAllocation a = first_best(p);
    EXPECT_EQ(a.trade_size, 3u);
    EXPECT_EQ(a.gft, make_rational(41, 10));
}

TEST(Market, TieCountsAsTrade)
{
    const Profile p{{2.0, 1.0}, {1.0, 3.0}};
    const Allocation a = first_best(p);
    EXPECT_EQ(a.trade_size, 1u);
    EXPECT_DOUBLE_EQ(a.gft, 1.0);
    const Profile tie{{1.0}, {1.0}};
    EXPECT_EQ(first_best(tie).trade_size, 1u);
    EXPECT_DOUBLE_EQ(first_best(tie).gft, 0.0);
}

TEST(Market, NoTradeWhenAllSellersAbove)
{
    const Allocation a = first_best(Profile{{1.0, 0.5}, {2.0, 3.0}});
    EXPECT_EQ(a.trade_size, 0u);
    EXPECT_TRUE(a.traded_buyers.empty());
    EXPECT_DOUBLE_EQ(a.gft, 0.0);
}

TEST(Market, WelfareAddsSellerValues)
{
    const Profile p{{3.0}, {1.0, 2.0}};
    const Allocation a = first_best(p);
    EXPECT_DOUBLE_EQ(welfare(p, a), 2.0 + 3.0);
}

TEST(Market, FirstBestMatchesBruteForce)
{
    StreamRng rng(StreamKey{11, 0, 0});
    for (int t = 0; t < 2000; ++t) {
        const Profile p = testing::random_grid_profile(rng, 6, 6, 0.5, 3.0);
        const ExactProfile e = to_exact(p);
        EXPECT_EQ(first_best(e).gft, testing::brute_force_gft(e));
    }
}

TEST(Market, FirstBestMonotoneUnderAugmentation)
{
    StreamRng rng(StreamKey{12, 0, 0});
    for (int t = 0; t < 2000; ++t) {
        const Profile p = testing::random_profile(rng, 8, 8, 3.0);
        Profile q = p;
        const std::size_t extra_b = rng.below(3);
        const std::size_t extra_s = rng.below(3);
        for (std::size_t i = 0; i < extra_b; ++i) q.buyers.push_back(3.0 * rng.uniform_open());
        for (std::size_t j = 0; j < extra_s; ++j) q.sellers.push_back(3.0 * rng.uniform_open());
        EXPECT_GE(first_best(q).gft, first_best(p).gft - 1e-12);
    }
}

}  // namespace
}  // namespace gftlab
