// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gftlab/distribution.hpp"
#include "gftlab/mechanisms.hpp"

namespace gftlab {

enum class ExperimentMode { CoupledFsd, IndependentGeneral };

std::string to_string(ExperimentMode mode);
/// "coupled_fsd" or "independent_general".
ExperimentMode parse_mode(const std::string& name);

struct ExperimentConfig {
    std::size_t m = 20;
    std::size_t n = 20;
    std::size_t c = 1;
    QuantileDistribution fb = QuantileDistribution::uniform(0.0, 1.0);
    QuantileDistribution fs = QuantileDistribution::uniform(0.0, 1.0);
    std::size_t trials = 100'000;
    std::uint64_t seed = 0;
    ExperimentMode mode = ExperimentMode::CoupledFsd;
    double eta = 0.05;
    double alpha = 0.5;

    /// Mechanism run on the augmented market.
    MechanismKind mechanism = MechanismKind::Str;
    /// Unequal augmentation (both default to c). Events and per-draw
    /// implications are only evaluated for STR with c new agents per side.
    std::optional<std::size_t> new_buyers;
    std::optional<std::size_t> new_sellers;
    /// Overlap Pr[b >= s] for the interval scheme; computed when absent.
    std::optional<double> overlap;
};

/// Throws std::invalid_argument when the configuration is unusable.
void validate_config(const ExperimentConfig& config);

/// Mean with its standard error over the draws where an event occurred.
struct ConditionalEstimate {
    std::uint64_t hits = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct ExperimentResult {
    std::size_t m = 0, n = 0, c = 0;
    std::size_t new_buyers = 0, new_sellers = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    ExperimentMode mode = ExperimentMode::CoupledFsd;
    MechanismKind mechanism = MechanismKind::Str;

    double mean_opt_original = 0.0;
    double mean_str_augmented = 0.0;  ///< mean GFT of the configured mechanism
    double mean_gap = 0.0;            ///< paired mean of augmented minus original
    double ci_halfwidth = 0.0;        ///< 1.96 standard errors of the gap
    double gap_std_error = 0.0;

    bool events_evaluated = false;
    double freq_e1 = 0.0;
    double freq_e2 = 0.0;
    double freq_e3 = 0.0;  ///< independent mode only
    double freq_sellers_top = 0.0;
    std::uint64_t violations = 0;

    /// STR - OPT on E1 draws and OPT - STR on E2 draws.
    ConditionalEstimate gain_given_e1;
    ConditionalEstimate loss_given_e2;
    /// Mean over all draws of b(q_i) - s(q_j), i uniform over I1 and j over J1.
    ConditionalEstimate benchmark;
    /// Per-draw (STR - OPT) - benchmark on E1 draws and (OPT - STR) - benchmark on E2 draws.
    ConditionalEstimate gain_excess_e1;
    ConditionalEstimate loss_excess_e2;

    double overlap_r = 0.0;  ///< independent mode
    double interval_width = 0.0;
    double mean_loss_outside_e3 = 0.0;  ///< mean of max(0, OPT - STR) over draws outside E3
    bool eta_condition = false;         ///< observed Pr[not E3] <= eta
    std::string alpha_regime;           ///< coupled mode: "small_n" or "large_n"
};

/// Raised when a per-draw implication fails; carries the lowest-index witness.
class ImplicationViolation : public std::runtime_error {
public:
    ImplicationViolation(std::string what, std::string witness_json, ExperimentResult partial)
        : std::runtime_error(std::move(what)), witness_(std::move(witness_json)), partial_(std::move(partial))
    {
    }

    const std::string& witness_json() const noexcept { return witness_; }
    const ExperimentResult& partial() const noexcept { return partial_; }

private:
    std::string witness_;
    ExperimentResult partial_;
};

/// Trials processed sequentially inside each block; blocks are merged in
/// index order, so results do not depend on the worker count.
inline constexpr std::size_t kTrialBlock = 1024;

/// Worker count from GFT_LAB_WORKERS, else the hardware concurrency (>= 1).
std::size_t default_workers();

/// Monte Carlo run. Throws ImplicationViolation when any per-draw
/// implication fails and std::invalid_argument on a bad configuration.
ExperimentResult run(const ExperimentConfig& config, std::size_t workers = 1);

struct SweepResult {
    std::vector<ExperimentResult> rows;
    /// Smallest c with mean_gap - ci_halfwidth >= 0.
    std::optional<std::size_t> threshold;
};

/// One run per c (ascending, nonempty), sharing the base seed.
SweepResult sweep_c(const ExperimentConfig& config, const std::vector<std::size_t>& c_values,
                    std::size_t workers = 1);

enum class GapStatus { Holds, Fails, Inconclusive };

std::string to_string(GapStatus status);

struct ConditionalGapReport {
    ExperimentResult result;
    ConditionalEstimate gain_excess;
    ConditionalEstimate loss_excess;
    GapStatus gain_status = GapStatus::Inconclusive;  ///< gain_excess >= -3 se
    GapStatus loss_status = GapStatus::Inconclusive;  ///< loss_excess <= 3 se
};

inline constexpr std::uint64_t kMinEventHits = 100;

/// Requires coupled mode.
ConditionalGapReport conditional_gaps(const ExperimentConfig& config, std::size_t workers = 1);

/// Labeling-only estimates for the shared-quantile coupling.
struct EventFrequencies {
    std::uint64_t trials = 0;
    std::uint64_t sellers_top = 0;
    std::uint64_t not_e1 = 0;
    bool e1_evaluated = false;  ///< false when n < 20

    double freq(std::uint64_t count) const { return trials ? static_cast<double>(count) / trials : 0.0; }
    /// Binomial standard error of an observed frequency.
    double std_error(std::uint64_t count) const;
};

EventFrequencies estimate_event_frequencies(std::size_t m, std::size_t n, std::size_t c, std::size_t trials,
                                            std::uint64_t seed, std::size_t workers = 1);

}  // namespace gftlab
