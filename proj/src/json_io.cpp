// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/json_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gftlab {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* what)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    bad(std::string(what) + " must be a number");
}

Rational exact_number(const Json& j, const char* what)
{
    if (j.is_number_integer()) return make_rational(BigInt(j.dump(), 10));
    if (j.is_number()) return rational_from_double(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad(std::string(what) + " must be a number or a rational string");
}

std::size_t count(const Json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

std::vector<std::pair<double, double>> pairs(const Json& j, const char* what)
{
    if (!j.is_array()) bad(std::string(what) + " must be an array of pairs");
    std::vector<std::pair<double, double>> out;
    for (const Json& e : j) {
        if (!e.is_array() || e.size() != 2) bad(std::string(what) + " entries must be [x, y] pairs");
        out.emplace_back(number(e[0], what), number(e[1], what));
    }
    return out;
}

template <class Money, class Parse>
BasicProfile<Money> profile_impl(const Json& j, Parse parse)
{
    if (!j.is_object()) bad("profile must be an object with buyers and sellers");
    for (const auto& [key, _] : j.items())
        if (key != "buyers" && key != "sellers") bad("unknown profile field '" + key + "'");
    BasicProfile<Money> p;
    for (const char* side : {"buyers", "sellers"}) {
        const Json& arr = field(j, side);
        if (!arr.is_array()) bad(std::string(side) + " must be an array");
        auto& dst = std::string(side) == "buyers" ? p.buyers : p.sellers;
        for (const Json& v : arr) dst.push_back(parse(v, side));
    }
    validate_profile(p);
    return p;
}

Json money(double x) { return x; }
Json money(const Rational& x) { return to_string(x); }

template <class Money>
Json allocation_impl(const BasicAllocation<Money>& a)
{
    return Json{{"trade_size", a.trade_size},
                {"traded_buyers", a.traded_buyers},
                {"traded_sellers", a.traded_sellers},
                {"gft", money(a.gft)}};
}

template <class Money>
Json outcome_impl(const BasicOutcome<Money>& o, MechanismKind kind)
{
    Json pay = Json::array();
    Json rec = Json::array();
    for (const Money& x : o.buyer_payments) pay.push_back(money(x));
    for (const Money& x : o.seller_receipts) rec.push_back(money(x));
    return Json{{"mechanism", to_string(kind)},
                {"allocation", allocation_impl(o.allocation)},
                {"buyer_payments", pay},
                {"seller_receipts", rec},
                {"reduced", o.reduced}};
}

Json estimate_json(const ConditionalEstimate& e)
{
    return Json{{"hits", e.hits}, {"mean", e.mean}, {"std_error", e.std_error}};
}

}  // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        bad(path + ": malformed JSON: " + e.what());
    }
}

QuantileDistribution distribution_from_json(const Json& j)
{
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) bad("distribution kind must be a string");
    const std::string k = kind.get<std::string>();
    const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
    if (k == "discrete") return QuantileDistribution::discrete(pairs(field(j, "support"), "support"), name);
    if (k == "uniform")
        return QuantileDistribution::uniform(number(field(j, "lo"), "lo"), number(field(j, "hi"), "hi"), name);
    if (k == "pwl_quantile") return QuantileDistribution::piecewise_linear(pairs(field(j, "points"), "points"), name);
    bad("unknown distribution kind '" + k + "' (expected discrete, uniform or pwl_quantile)");
}

Json to_json(const QuantileDistribution& d)
{
    Json j;
    switch (d.kind()) {
    case DistributionKind::Discrete: {
        j["kind"] = "discrete";
        Json support = Json::array();
        for (std::size_t i = 0; i < d.values().size(); ++i) support.push_back({d.values()[i], d.weights()[i]});
        j["support"] = support;
        break;
    }
    case DistributionKind::Uniform:
        j["kind"] = "uniform";
        j["lo"] = d.lo();
        j["hi"] = d.hi();
        break;
    case DistributionKind::PiecewiseLinearQuantile: {
        j["kind"] = "pwl_quantile";
        Json points = Json::array();
        for (const auto& [q, v] : d.points()) points.push_back({q, v});
        j["points"] = points;
        break;
    }
    }
    if (!d.name().empty()) j["name"] = d.name();
    return j;
}

Profile profile_from_json(const Json& j)
{
    return profile_impl<double>(j, [](const Json& v, const char* what) { return number(v, what); });
}

ExactProfile exact_profile_from_json(const Json& j)
{
    return profile_impl<Rational>(j, [](const Json& v, const char* what) { return exact_number(v, what); });
}

Json to_json(const MechanismOutcome& o, MechanismKind kind) { return outcome_impl(o, kind); }
Json to_json(const ExactOutcome& o, MechanismKind kind) { return outcome_impl(o, kind); }
Json to_json(const Allocation& a) { return allocation_impl(a); }
Json to_json(const ExactAllocation& a) { return allocation_impl(a); }

ExperimentConfig config_from_json(const Json& j)
{
    if (!j.is_object()) bad("config must be a JSON object");
    static const std::set<std::string> known = {"m",    "n",     "c",         "fb",         "fs",
                                                "trials", "seed", "mode",     "eta",        "alpha",
                                                "mechanism", "new_buyers", "new_sellers", "overlap"};
    for (const auto& [key, _] : j.items())
        if (!known.contains(key)) bad("unknown config field '" + key + "'");

    ExperimentConfig c;
    if (j.contains("m")) c.m = count(j.at("m"), "m");
    if (j.contains("n")) c.n = count(j.at("n"), "n");
    if (j.contains("c")) c.c = count(j.at("c"), "c");
    if (j.contains("fb")) c.fb = distribution_from_json(j.at("fb"));
    if (j.contains("fs")) c.fs = distribution_from_json(j.at("fs"));
    if (j.contains("trials")) c.trials = count(j.at("trials"), "trials");
    if (j.contains("seed")) c.seed = count(j.at("seed"), "seed");
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("eta")) c.eta = number(j.at("eta"), "eta");
    if (j.contains("alpha")) c.alpha = number(j.at("alpha"), "alpha");
    if (j.contains("mechanism")) c.mechanism = parse_mechanism(j.at("mechanism").get<std::string>());
    if (j.contains("new_buyers")) c.new_buyers = count(j.at("new_buyers"), "new_buyers");
    if (j.contains("new_sellers")) c.new_sellers = count(j.at("new_sellers"), "new_sellers");
    if (j.contains("overlap")) c.overlap = number(j.at("overlap"), "overlap");
    return c;
}

Json to_json(const ExperimentConfig& c)
{
    Json j{{"m", c.m},
           {"n", c.n},
           {"c", c.c},
           {"fb", to_json(c.fb)},
           {"fs", to_json(c.fs)},
           {"trials", c.trials},
           {"seed", c.seed},
           {"mode", to_string(c.mode)},
           {"eta", c.eta},
           {"alpha", c.alpha},
           {"mechanism", to_string(c.mechanism)}};
    if (c.new_buyers) j["new_buyers"] = *c.new_buyers;
    if (c.new_sellers) j["new_sellers"] = *c.new_sellers;
    if (c.overlap) j["overlap"] = *c.overlap;
    return j;
}

Json to_json(const ExperimentResult& r)
{
    Json j{{"m", r.m},
           {"n", r.n},
           {"c", r.c},
           {"new_buyers", r.new_buyers},
           {"new_sellers", r.new_sellers},
           {"trials", r.trials},
           {"seed", r.seed},
           {"mode", to_string(r.mode)},
           {"mechanism", to_string(r.mechanism)},
           {"mean_opt_original", r.mean_opt_original},
           {"mean_str_augmented", r.mean_str_augmented},
           {"mean_gap", r.mean_gap},
           {"ci_halfwidth", r.ci_halfwidth},
           {"events_evaluated", r.events_evaluated},
           {"freq_e1", r.freq_e1},
           {"freq_e2", r.freq_e2},
           {"freq_e3", r.freq_e3},
           {"freq_sellers_top", r.freq_sellers_top},
           {"violations", r.violations},
           {"gain_given_e1", estimate_json(r.gain_given_e1)},
           {"loss_given_e2", estimate_json(r.loss_given_e2)}};
    if (r.mode == ExperimentMode::CoupledFsd) {
        j["benchmark"] = estimate_json(r.benchmark);
        j["gain_excess_e1"] = estimate_json(r.gain_excess_e1);
        j["loss_excess_e2"] = estimate_json(r.loss_excess_e2);
        j["alpha_regime"] = r.alpha_regime;
    } else {
        j["overlap_r"] = r.overlap_r;
        j["interval_width"] = r.interval_width;
        j["mean_loss_outside_e3"] = r.mean_loss_outside_e3;
        j["eta_condition"] = r.eta_condition;
    }
    return j;
}

Json to_json(const SweepResult& s)
{
    Json rows = Json::array();
    for (const auto& r : s.rows) rows.push_back(to_json(r));
    Json j{{"rows", rows}};
    j["threshold"] = s.threshold ? Json(*s.threshold) : Json(nullptr);
    return j;
}

Json to_json(const ConditionalGapReport& r)
{
    return Json{{"result", to_json(r.result)},
                {"gain_excess", estimate_json(r.gain_excess)},
                {"loss_excess", estimate_json(r.loss_excess)},
                {"gain_status", to_string(r.gain_status)},
                {"loss_status", to_string(r.loss_status)}};
}

Json to_json(const ReproduceReport& r)
{
    Json j{{"example", r.example}};
    for (const auto& q : r.quantities) j[q.name] = to_string(q.value);
    Json expected = Json::object();
    for (const auto& q : r.quantities) expected[q.name] = to_string(q.expected);
    Json checks = Json::object();
    for (const auto& c : r.checks) checks[c.name] = c.holds;
    j["expected"] = expected;
    j["checks"] = checks;
    j["pass"] = r.pass();
    return j;
}

std::string csv_header()
{
    return "m,n,c,trials,seed,mode,mean_opt,mean_str,gap,ci,freq_e1,freq_e2,freq_e3,violations";
}

std::string csv_row(const ExperimentResult& r)
{
    std::ostringstream os;
    os << r.m << ',' << r.n << ',' << r.c << ',' << r.trials << ',' << r.seed << ',' << to_string(r.mode) << ','
       << format_double(r.mean_opt_original) << ',' << format_double(r.mean_str_augmented) << ','
       << format_double(r.mean_gap) << ',' << format_double(r.ci_halfwidth) << ',' << format_double(r.freq_e1)
       << ',' << format_double(r.freq_e2) << ',' << format_double(r.freq_e3) << ',' << r.violations;
    return os.str();
}

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

}  // namespace gftlab
