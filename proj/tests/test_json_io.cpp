// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "gftlab/json_io.hpp"

namespace gftlab {
namespace {

TEST(JsonIo, DistributionRoundTrip)
{
    for (const char* text : {R"({"kind":"uniform","lo":0.5,"hi":2})",
                             R"({"kind":"discrete","support":[[1,0.25],[3,0.75]]})",
                             R"({"kind":"pwl_quantile","points":[[0,0],[0.5,1],[1,4]]})"}) {
        const QuantileDistribution d = distribution_from_json(Json::parse(text));
        const QuantileDistribution back = distribution_from_json(to_json(d));
        for (double q : {0.1, 0.3, 0.5, 0.77, 0.99}) EXPECT_DOUBLE_EQ(d.quantile(q), back.quantile(q)) << text;
    }
    EXPECT_THROW(distribution_from_json(Json::parse(R"({"kind":"normal"})")), std::invalid_argument);
}

TEST(JsonIo, ProfilesAcceptNumbersAndFractions)
{
    const Json j = Json::parse(R"({"buyers":[3,"21/10",2],"sellers":[1,"1.0",1]})");
    const ExactProfile e = exact_profile_from_json(j);
    EXPECT_EQ(e.buyers[1], make_rational(21, 10));
    const Profile p = profile_from_json(j);
    EXPECT_DOUBLE_EQ(p.buyers[1], 2.1);
    EXPECT_THROW(profile_from_json(Json::parse(R"({"buyers":[1]})")), std::invalid_argument);
    EXPECT_THROW(profile_from_json(Json::parse(R"({"buyers":[-1],"sellers":[1]})")), std::invalid_argument);
    EXPECT_THROW(profile_from_json(Json::parse(R"({"buyers":["x"],"sellers":[1]})")), std::invalid_argument);
}

TEST(JsonIo, ConfigRoundTrip)
{
    const Json j = Json::parse(R"({"m":30,"n":25,"c":4,"trials":1000,"seed":9,"mode":"independent_general",
        "eta":0.1,"alpha":0.25,"mechanism":"btr","new_buyers":2,"new_sellers":1,"overlap":0.4,
        "fb":{"kind":"uniform","lo":0,"hi":1},"fs":{"kind":"uniform","lo":0,"hi":1}})");
    const ExperimentConfig c = config_from_json(j);
    EXPECT_EQ(c.m, 30u);
    EXPECT_EQ(c.mode, ExperimentMode::IndependentGeneral);
    EXPECT_EQ(c.mechanism, MechanismKind::Btr);
    EXPECT_EQ(*c.new_sellers, 1u);
    EXPECT_EQ(to_json(config_from_json(to_json(c))).dump(), to_json(c).dump());
    EXPECT_THROW(config_from_json(Json::parse(R"({"m":-3})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(Json::parse(R"({"m":2.5})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(Json::array()), std::invalid_argument);
}

TEST(JsonIo, FormatDoubleRoundTrips)
{
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(2.0), "2");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(JsonIo, CsvRowHasAllColumns)
{
    ExperimentResult r;
    r.m = 20;
    const std::string row = csv_row(r);
    const std::string header = csv_header();
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

TEST(JsonIo, MissingFile)
{
    EXPECT_THROW(read_json_file("/nonexistent/x.json"), std::runtime_error);
}

}  // namespace
}  // namespace gftlab
