// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "gftlab/distribution.hpp"
#include "gftlab/experiment.hpp"
#include "gftlab/market.hpp"
#include "gftlab/mechanisms.hpp"
#include "gftlab/reproduce.hpp"

namespace gftlab {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws std::runtime_error when the file
/// cannot be read and std::invalid_argument when it is not valid JSON.
Json read_json_file(const std::string& path);

/// {"kind":"discrete","support":[[v,w],...]}, {"kind":"uniform","lo":a,"hi":b}
/// or {"kind":"pwl_quantile","points":[[q,v],...]}.
QuantileDistribution distribution_from_json(const Json& j);
Json to_json(const QuantileDistribution& d);

/// {"buyers":[...],"sellers":[...]}; entries are numbers or strings such as "21/10".
Profile profile_from_json(const Json& j);
/// Numbers map to the rational of their shortest decimal form.
ExactProfile exact_profile_from_json(const Json& j);

Json to_json(const MechanismOutcome& o, MechanismKind kind);
Json to_json(const ExactOutcome& o, MechanismKind kind);
Json to_json(const Allocation& a);
Json to_json(const ExactAllocation& a);

/// Keys mirror ExperimentConfig fields; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);

Json to_json(const ExperimentResult& r);
Json to_json(const SweepResult& s);
Json to_json(const ConditionalGapReport& r);
Json to_json(const ReproduceReport& r);

/// m,n,c,trials,seed,mode,mean_opt,mean_str,gap,ci,freq_e1,freq_e2,freq_e3,violations
std::string csv_header();
std::string csv_row(const ExperimentResult& r);

/// Shortest decimal that round-trips.
std::string format_double(double x);

}  // namespace gftlab
