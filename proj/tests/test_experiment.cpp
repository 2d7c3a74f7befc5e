// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <stdexcept>

#include "gftlab/experiment.hpp"
#include "gftlab/json_io.hpp"

namespace gftlab {
namespace {

ExperimentConfig coupled(std::size_t m, std::size_t n, std::size_t c, std::size_t trials)
{
    ExperimentConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.c = c;
    cfg.fb = QuantileDistribution::uniform(1.0, 2.0);
    cfg.fs = QuantileDistribution::uniform(0.0, 1.0);
    cfg.trials = trials;
    cfg.seed = 7;
    return cfg;
}

TEST(Experiment, ModeNames)
{
    EXPECT_EQ(parse_mode("coupled_fsd"), ExperimentMode::CoupledFsd);
    EXPECT_EQ(parse_mode("independent_general"), ExperimentMode::IndependentGeneral);
    EXPECT_THROW(parse_mode("other"), std::invalid_argument);
    EXPECT_EQ(to_string(ExperimentMode::IndependentGeneral), "independent_general");
}

TEST(Experiment, ValidateConfig)
{
    EXPECT_NO_THROW(validate_config(coupled(20, 20, 1, 10)));
    EXPECT_THROW(validate_config(coupled(20, 20, 1, 0)), std::invalid_argument);
    EXPECT_THROW(validate_config(coupled(20, 19, 1, 10)), std::invalid_argument);
    ExperimentConfig not_fsd = coupled(20, 20, 1, 10);
    std::swap(not_fsd.fb, not_fsd.fs);
    EXPECT_THROW(validate_config(not_fsd), std::invalid_argument);
    not_fsd.mode = ExperimentMode::IndependentGeneral;
    EXPECT_NO_THROW(validate_config(not_fsd));
}

TEST(Experiment, CoupledRunHasNoViolations)
{
    const ExperimentResult r = run(coupled(40, 40, 20, 3000));
    EXPECT_EQ(r.violations, 0u);
    EXPECT_TRUE(r.events_evaluated);
    EXPECT_GE(r.ci_halfwidth, 0.0);
    EXPECT_NEAR(r.mean_gap, r.mean_str_augmented - r.mean_opt_original, 1e-9);
    EXPECT_NEAR(r.freq_e1 + r.freq_e2, 1.0, 0.05);
    EXPECT_GT(r.benchmark.mean, 0.0);
    EXPECT_EQ(r.trials, 3000u);
}

TEST(Experiment, ZeroAugmentationNeverGains)
{
    ExperimentConfig cfg = coupled(20, 20, 0, 2000);
    const ExperimentResult r = run(cfg);
    EXPECT_LE(r.mean_gap, 0.0);
    cfg.mode = ExperimentMode::IndependentGeneral;
    EXPECT_LE(run(cfg).mean_gap, 0.0);
}

TEST(Experiment, DeterministicAcrossWorkers)
{
    const ExperimentConfig cfg = coupled(20, 20, 3, 5000);
    const std::string one = to_json(run(cfg, 1)).dump();
    const std::string three = to_json(run(cfg, 3)).dump();
    EXPECT_EQ(one, three);
    ExperimentConfig other = cfg;
    other.seed = 8;
    EXPECT_NE(one, to_json(run(other, 1)).dump());
}

TEST(Experiment, IndependentModeReportsOverlap)
{
    ExperimentConfig cfg = coupled(30, 30, 10, 2000);
    cfg.mode = ExperimentMode::IndependentGeneral;
    cfg.fb = QuantileDistribution::uniform(0.0, 1.0);
    const ExperimentResult r = run(cfg);
    EXPECT_NEAR(r.overlap_r, 0.5, 1e-12);
    EXPECT_NEAR(r.interval_width, 0.5 * 30 / (100.0 * 30), 1e-15);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_TRUE(r.events_evaluated);
}

TEST(Experiment, OtherMechanismsSkipEvents)
{
    ExperimentConfig cfg = coupled(20, 20, 1, 500);
    cfg.mechanism = MechanismKind::Btr;
    cfg.new_sellers = 0;
    const ExperimentResult r = run(cfg);
    EXPECT_FALSE(r.events_evaluated);
    EXPECT_EQ(r.new_buyers, 1u);
    EXPECT_EQ(r.new_sellers, 0u);
}

TEST(Experiment, SweepRowsAndThreshold)
{
    const ExperimentConfig cfg = coupled(20, 20, 0, 1000);
    const SweepResult s = sweep_c(cfg, {0, 5, 30});
    ASSERT_EQ(s.rows.size(), 3u);
    EXPECT_EQ(s.rows[1].c, 5u);
    EXPECT_LE(s.rows[0].mean_gap, 0.0);
    ASSERT_TRUE(s.threshold.has_value());
    EXPECT_GT(*s.threshold, 0u);
    EXPECT_THROW(sweep_c(cfg, {}), std::invalid_argument);
    EXPECT_THROW(sweep_c(cfg, {3, 1}), std::invalid_argument);
}

TEST(Experiment, FewHitsAreInconclusive)
{
    const ConditionalGapReport r = conditional_gaps(coupled(40, 40, 20, 80));
    EXPECT_EQ(r.gain_status, GapStatus::Inconclusive);
    EXPECT_EQ(r.loss_status, GapStatus::Inconclusive);
    ExperimentConfig ind = coupled(40, 40, 20, 80);
    ind.mode = ExperimentMode::IndependentGeneral;
    EXPECT_THROW(conditional_gaps(ind), std::invalid_argument);
}

TEST(Experiment, EventFrequencyEstimator)
{
    const EventFrequencies f = estimate_event_frequencies(16, 4, 1, 20000, 5);
    EXPECT_FALSE(f.e1_evaluated);
    EXPECT_NEAR(f.freq(f.sellers_top), 5.0 / 11.0, 4 * f.std_error(f.sellers_top) + 1e-3);
    const EventFrequencies g = estimate_event_frequencies(16, 4, 1, 20000, 5, 2);
    EXPECT_EQ(f.sellers_top, g.sellers_top);
}

}  // namespace
}  // namespace gftlab
