// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gftlab/cli.hpp"
#include "gftlab/json_io.hpp"

namespace gftlab {
namespace {

struct Invocation {
    int code = -1;
    std::string out;
    std::string err;
};

Invocation call(std::vector<std::string> args)
{
    args.insert(args.begin(), "gft-lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string write_temp(const std::string& name, const std::string& body)
{
    const auto path = std::filesystem::temp_directory_path() / ("gftlab_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

TEST(Cli, ReproduceFigure)
{
    const Invocation r = call({"reproduce", "figure1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("opt_orig"), "41/10");
    EXPECT_EQ(j.at("opt_aug"), "22/5");
    EXPECT_EQ(j.at("str_aug"), "33/10");
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ProbSellersTop)
{
    const Invocation r = call({"prob", "--formula", "sellers-top", "--m", "16", "--n", "4", "--c", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("exact"), "5/11");
    EXPECT_NEAR(j.at("decimal").get<double>(), 5.0 / 11.0, 1e-15);
}

TEST(Cli, ProbRejectsBadFormulaAndPreconditions)
{
    EXPECT_EQ(call({"prob", "--formula", "nope", "--m", "1", "--n", "1", "--c", "1"}).code, kExitInvalid);
    EXPECT_EQ(call({"prob", "--formula", "e1-upper", "--m", "40", "--n", "10", "--c", "1"}).code, kExitInvalid);
}

TEST(Cli, MissingProfileFile)
{
    const Invocation r = call({"mech", "--mechanism", "str", "--profile", "/nonexistent/missing.json"});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UnknownFlagAndSubcommand)
{
    EXPECT_EQ(call({"mech", "--bogus"}).code, kExitInvalid);
    EXPECT_EQ(call({"frobnicate"}).code, kExitInvalid);
    EXPECT_EQ(call({}).code, kExitInvalid);
}

TEST(Cli, MechInlineExact)
{
    const Invocation r = call({"mech", "--mechanism", "str", "--buyers", "3,2.1,2,2.3", "--sellers", "1,1,1,2.2",
                               "--exact"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("allocation").at("gft"), "33/10");
}

TEST(Cli, MechFromFile)
{
    const std::string path = write_temp("profile.json", R"({"buyers":[10,2,0],"sellers":["1"]})");
    const Invocation r = call({"mech", "--mechanism", "btr", "--profile", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_DOUBLE_EQ(Json::parse(r.out).at("allocation").at("gft").get<double>(), 9.0);
}

TEST(Cli, MalformedJsonIsInvalid)
{
    const std::string path = write_temp("broken.json", "{\"buyers\": [1,");
    EXPECT_EQ(call({"fb", "--profile", path}).code, kExitInvalid);
    const std::string extra = write_temp("extra.json", R"({"buyers":[1],"sellers":[0],"x":1})");
    EXPECT_EQ(call({"fb", "--profile", extra}).code, kExitInvalid);
}

TEST(Cli, FirstBestExactWelfare)
{
    const Invocation r = call({"fb", "--buyers", "3,2", "--sellers", "1,5/2", "--exact"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("gft"), "2");
    EXPECT_EQ(j.at("welfare"), "11/2");
}

TEST(Cli, RunIsReproducibleAndCsv)
{
    const std::string cfg = write_temp("cfg.json", R"({"m":20,"n":20,"c":2,"trials":2000,"seed":3,
        "fb":{"kind":"uniform","lo":1,"hi":2},"fs":{"kind":"uniform","lo":0,"hi":1}})");
    const Invocation a = call({"run", "--config", cfg, "--workers", "1"});
    const Invocation b = call({"run", "--config", cfg, "--workers", "2"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    const Invocation csv = call({"run", "--config", cfg, "--csv", "--trials", "500"});
    ASSERT_EQ(csv.code, kExitOk) << csv.err;
    EXPECT_EQ(csv.out.rfind("m,n,c,trials,seed,mode,mean_opt,mean_str,gap,ci,freq_e1,freq_e2,freq_e3,violations\n", 0),
              0u);
}

TEST(Cli, RunRejectsNonFsdCoupled)
{
    const std::string cfg = write_temp("cfg_bad.json", R"({"m":20,"n":20,"c":2,"trials":10,
        "fb":{"kind":"uniform","lo":0,"hi":1},"fs":{"kind":"uniform","lo":1,"hi":2}})");
    EXPECT_EQ(call({"run", "--config", cfg}).code, kExitInvalid);
    const std::string unknown = write_temp("cfg_unknown.json", R"({"m":20,"color":"red"})");
    EXPECT_EQ(call({"run", "--config", unknown}).code, kExitInvalid);
}

TEST(Cli, SweepRows)
{
    const std::string cfg = write_temp("cfg_sweep.json", R"({"m":20,"n":20,"trials":300,"seed":1,
        "fb":{"kind":"uniform","lo":1,"hi":2},"fs":{"kind":"uniform","lo":0,"hi":1}})");
    const Invocation r = call({"sweep", "--config", cfg, "--c", "0,2,4"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("rows").size(), 3u);
    EXPECT_EQ(call({"sweep", "--config", cfg, "--c", "4,2"}).code, kExitInvalid);
}

TEST(Cli, VerifyChecks)
{
    const std::string u01 = write_temp("u01.json", R"({"kind":"uniform","lo":0,"hi":1})");
    const std::string u12 = write_temp("u12.json", R"({"kind":"uniform","lo":1,"hi":2})");
    EXPECT_EQ(call({"verify", "--check", "fsd", "--fb", u12, "--fs", u01}).code, kExitOk);
    EXPECT_EQ(call({"verify", "--check", "fsd", "--fb", u01, "--fs", u12}).code, kExitCheckFailed);
    EXPECT_EQ(call({"verify", "--check", "r-bound", "--fb", u01, "--fs", u01}).code, kExitOk);
    EXPECT_EQ(call({"verify", "--check", "conditioning", "--max-n", "6", "--max-c", "2"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "--check", "enumeration", "--max-n", "8"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "--check", "dsic", "--mechanism", "tr", "--buyers", "3,2", "--sellers", "1,2.5"}).code,
              kExitOk);
    EXPECT_EQ(call({"verify", "--check", "ir-wbb", "--mechanism", "str", "--buyers", "3,2", "--sellers", "1,2.5",
                    "--exact"})
                  .code,
              kExitOk);
    EXPECT_EQ(call({"verify", "--check", "nope"}).code, kExitInvalid);
}

TEST(Cli, ReproduceUnknownId)
{
    EXPECT_EQ(call({"reproduce", "figure9"}).code, kExitInvalid);
}

}  // namespace
}  // namespace gftlab
