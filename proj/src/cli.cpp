// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gftlab/exactprob.hpp"
#include "gftlab/experiment.hpp"
#include "gftlab/json_io.hpp"
#include "gftlab/mechanisms.hpp"
#include "gftlab/reproduce.hpp"

namespace gftlab {
namespace {

/// A property the user asked to verify does not hold.
struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProfileArgs {
    std::string file;
    std::string buyers;
    std::string sellers;
    bool exact = false;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--profile", file, "Profile JSON file");
        cmd->add_option("--buyers", buyers, "Comma-separated buyer values");
        cmd->add_option("--sellers", sellers, "Comma-separated seller values");
    }

    Json load() const
    {
        if (!file.empty()) {
            if (!buyers.empty() || !sellers.empty())
                throw std::invalid_argument("use either --profile or --buyers/--sellers");
            return read_json_file(file);
        }
        if (buyers.empty() || sellers.empty())
            throw std::invalid_argument("a profile is required: --profile FILE or --buyers/--sellers");
        return Json{{"buyers", split(buyers)}, {"sellers", split(sellers)}};
    }

    static Json split(const std::string& list)
    {
        Json arr = Json::array();
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(item);
        return arr;
    }
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct RunArgs {
    std::string config;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> c;
    std::size_t workers = 1;
    bool csv = false;
    std::string witness = "gft-lab-witness.json";

    void add(CLI::App* cmd, bool with_c)
    {
        cmd->add_option("--config", config, "Experiment config JSON file")->required();
        cmd->add_option("--trials", trials, "Override the trial count");
        cmd->add_option("--seed", seed, "Override the master seed");
        if (with_c) cmd->add_option("--c", c, "Override the augmentation size");
        cmd->add_option("--workers", workers, "Worker threads (default: GFT_LAB_WORKERS or all cores)")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--csv", csv, "Emit CSV instead of JSON");
        cmd->add_option("--witness", witness, "Where to write a counterexample on implication failure");
    }

    ExperimentConfig load() const
    {
        ExperimentConfig cfg = config_from_json(read_json_file(config));
        if (trials) cfg.trials = *trials;
        if (seed) cfg.seed = *seed;
        if (c) cfg.c = *c;
        return cfg;
    }
};

int report_violation(const ImplicationViolation& v, const std::string& path, std::ostream& err)
{
    std::ofstream f(path);
    f << v.witness_json() << '\n';
    err << "gft-lab: " << v.what() << '\n';
    if (f)
        err << "gft-lab: witness written to " << path << '\n';
    else
        err << "gft-lab: could not write witness to " << path << '\n';
    return kExitCheckFailed;
}

Json prob_json(const std::string& formula, std::size_t m, std::size_t n, std::size_t c, const Rational& alpha)
{
    Json j{{"formula", formula}, {"m", m}, {"n", n}, {"c", c}};
    const bool exact_ok = m + n + 2 * c <= kExactLimit;
    std::optional<Rational> exact;
    double approx = 0.0;
    if (formula == "e1-upper") {
        if (exact_ok)
            exact = pr_e1_complement_upper(m, n, c);
        else
            approx = pr_e1_complement_upper_approx(m, n, c);
        j["closed_form_bound"] = e1_complement_closed_form(m, n, c);
    } else if (formula == "sellers-top") {
        if (exact_ok)
            exact = pr_sellers_top(m, n, c);
        else
            approx = pr_sellers_top_approx(m, n, c);
    } else if (formula == "e1-lower") {
        exact = pr_e1_lower_small_n(m, n, c, alpha);
        j["alpha"] = to_string(alpha);
    } else {
        throw std::invalid_argument("unknown formula '" + formula + "' (expected e1-upper, sellers-top or e1-lower)");
    }
    j["exact"] = exact ? Json(to_string(*exact)) : Json(nullptr);
    j["decimal"] = exact ? to_double(*exact) : approx;
    return j;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"gft-lab: double-auction mechanisms, quantile coupling and exact probabilities"};
    app.name("gft-lab");
    app.require_subcommand(1);
    std::size_t default_worker_count = default_workers();

    // mech
    auto* mech = app.add_subcommand("mech", "Run a mechanism on one profile");
    std::string mech_name;
    ProfileArgs mech_profile;
    mech->add_option("--mechanism", mech_name, "str, btr or tr")->required();
    mech_profile.add(mech);
    mech->add_flag("--exact", mech_profile.exact, "Rational arithmetic");

    // fb
    auto* fb = app.add_subcommand("fb", "First-best allocation of one profile");
    ProfileArgs fb_profile;
    fb_profile.add(fb);
    fb->add_flag("--exact", fb_profile.exact, "Rational arithmetic");

    // prob
    auto* prob = app.add_subcommand("prob", "Exact probability formulas");
    std::string formula;
    std::size_t pm = 0, pn = 0, pc = 0;
    std::string alpha_text = "1/2";
    prob->add_option("--formula", formula, "e1-upper, sellers-top or e1-lower")->required();
    prob->add_option("--m", pm, "Original buyers")->required();
    prob->add_option("--n", pn, "Original sellers")->required();
    prob->add_option("--c", pc, "New agents per side")->required();
    prob->add_option("--alpha", alpha_text, "Regime constant for e1-lower (rational)");

    // run
    auto* run_cmd = app.add_subcommand("run", "Monte Carlo experiment");
    RunArgs run_args;
    run_args.workers = default_worker_count;
    run_args.add(run_cmd, true);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Experiment over several augmentation sizes");
    RunArgs sweep_args;
    sweep_args.workers = default_worker_count;
    std::vector<std::size_t> c_values;
    sweep_args.add(sweep, false);
    sweep->add_option("--c", c_values, "Ascending augmentation sizes")->required()->delimiter(',');

    // reproduce
    auto* repro = app.add_subcommand("reproduce", "Worked examples in exact arithmetic");
    std::string example;
    std::string eps_text;
    std::size_t b5_n = 5, b5_c = 2;
    repro->add_option("example", example, "figure1, intro_eps, b5 or appendix_e")->required();
    repro->add_option("--eps", eps_text, "Epsilon for intro_eps and b5 (rational)");
    repro->add_option("--n", b5_n, "n for b5");
    repro->add_option("--c", b5_c, "c for b5");

    // verify
    auto* verify = app.add_subcommand("verify", "Property checks");
    std::string check;
    ProfileArgs verify_profile;
    std::string verify_mech = "str";
    std::string fb_file, fs_file, verify_config;
    std::size_t max_n = 12, max_c = 4, grid = kDefaultFsdGrid;
    std::size_t verify_workers = default_worker_count;
    verify->add_option("--check", check, "fsd, r-bound, conditioning, enumeration, dsic, ir-wbb or gaps")->required();
    verify_profile.add(verify);
    verify->add_flag("--exact", verify_profile.exact, "Rational arithmetic for ir-wbb");
    verify->add_option("--mechanism", verify_mech, "Mechanism for dsic and ir-wbb");
    verify->add_option("--fb", fb_file, "Buyer distribution JSON file");
    verify->add_option("--fs", fs_file, "Seller distribution JSON file");
    verify->add_option("--grid", grid, "Quantile grid size for fsd");
    verify->add_option("--max-n", max_n, "Largest N for conditioning and enumeration");
    verify->add_option("--max-c", max_c, "Largest c for conditioning");
    verify->add_option("--config", verify_config, "Experiment config for gaps");
    verify->add_option("--workers", verify_workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*mech) {
            const MechanismKind kind = parse_mechanism(mech_name);
            const Json pj = mech_profile.load();
            if (mech_profile.exact)
                emit(out, to_json(run_mechanism(kind, exact_profile_from_json(pj)), kind));
            else
                emit(out, to_json(run_mechanism(kind, profile_from_json(pj)), kind));
        } else if (*fb) {
            const Json pj = fb_profile.load();
            if (fb_profile.exact) {
                const ExactProfile p = exact_profile_from_json(pj);
                const ExactAllocation a = first_best(p);
                Json j = to_json(a);
                j["welfare"] = to_string(welfare(p, a));
                emit(out, j);
            } else {
                const Profile p = profile_from_json(pj);
                const Allocation a = first_best(p);
                Json j = to_json(a);
                j["welfare"] = welfare(p, a);
                emit(out, j);
            }
        } else if (*prob) {
            emit(out, prob_json(formula, pm, pn, pc, parse_rational(alpha_text)));
        } else if (*run_cmd) {
            const ExperimentConfig cfg = run_args.load();
            try {
                const ExperimentResult r = run(cfg, run_args.workers);
                if (run_args.csv)
                    out << csv_header() << '\n' << csv_row(r) << '\n';
                else
                    emit(out, to_json(r));
            } catch (const ImplicationViolation& v) {
                return report_violation(v, run_args.witness, err);
            }
        } else if (*sweep) {
            const ExperimentConfig cfg = sweep_args.load();
            try {
                const SweepResult s = sweep_c(cfg, c_values, sweep_args.workers);
                if (sweep_args.csv) {
                    out << csv_header() << '\n';
                    for (const auto& r : s.rows) out << csv_row(r) << '\n';
                } else {
                    emit(out, to_json(s));
                }
            } catch (const ImplicationViolation& v) {
                return report_violation(v, sweep_args.witness, err);
            }
        } else if (*repro) {
            const ExampleId id = parse_example(example);
            ReproduceReport rep;
            if (id == ExampleId::IntroEps && !eps_text.empty())
                rep = reproduce_intro_eps(parse_rational(eps_text));
            else if (id == ExampleId::B5)
                rep = reproduce_b5(b5_n, eps_text.empty() ? make_rational(1, 20) : parse_rational(eps_text), b5_c);
            else
                rep = reproduce(id);
            emit(out, to_json(rep));
            if (!rep.pass()) throw CheckFailed("example " + rep.example + " does not match its expected values");
        } else if (*verify) {
            if (check == "fsd" || check == "r-bound") {
                if (fb_file.empty() || fs_file.empty()) throw std::invalid_argument("--fb and --fs are required");
                const QuantileDistribution dfb = distribution_from_json(read_json_file(fb_file));
                const QuantileDistribution dfs = distribution_from_json(read_json_file(fs_file));
                if (check == "fsd") {
                    const bool holds = check_fsd(dfb, dfs, grid);
                    emit(out, Json{{"check", check}, {"holds", holds}});
                    if (!holds) throw CheckFailed("buyer distribution does not dominate the seller one");
                } else {
                    const OverlapEstimate est = overlap_r(dfb, dfs);
                    const QuantileBoundCheck qb = verify_r_quantile_bound(dfb, dfs, est.r);
                    emit(out, Json{{"check", check},
                                   {"overlap_r", est.r},
                                   {"overlap_halfwidth", est.halfwidth},
                                   {"overlap_exact", est.exact},
                                   {"buyer_value", qb.buyer_value},
                                   {"seller_value", qb.seller_value},
                                   {"degenerate", qb.degenerate},
                                   {"holds", qb.holds}});
                    if (!qb.holds) throw CheckFailed("fb(1 - r/2) < fs(r/2)");
                }
            } else if (check == "conditioning") {
                Json rows = Json::array();
                bool all = true;
                for (std::size_t n = 1; n <= max_n; ++n) {
                    for (std::size_t c = 1; c <= std::min(max_c, n); ++c) {
                        const ConditioningReport rep = verify_conditioning_claim(n, c);
                        all = all && rep.holds;
                        Json row{{"N", n}, {"c", c}, {"holds", rep.holds}, {"triples", rep.triples_checked}};
                        if (rep.counterexample)
                            row["counterexample"] = {{"I", rep.counterexample->i_mask},
                                                     {"K", rep.counterexample->k_mask},
                                                     {"r", rep.counterexample->threshold}};
                        rows.push_back(row);
                    }
                }
                emit(out, Json{{"check", check}, {"holds", all}, {"rows", rows}});
                if (!all) throw CheckFailed("conditioning inequality fails");
            } else if (check == "enumeration") {
                Json rows = Json::array();
                bool all = true;
                for (std::size_t total = 4; total <= max_n; ++total) {
                    for (std::size_t c = 0; 2 * c <= total; ++c) {
                        for (std::size_t n = 1; n + 2 * c < total; ++n) {
                            const std::size_t m = total - n - 2 * c;
                            if (m < n) continue;
                            for (std::size_t p = 1; 4 * p <= total; ++p) {
                                const EnumerationCounts ec = enumerate_events(m, n, c, p);
                                const E1Marginals mg = e1_marginals(m, n, c, p);
                                bool ok = ec.freq(ec.new_buyers_i1) == mg.new_buyers_i1 &&
                                          ec.freq(ec.old_buyers_i2) == mg.old_buyers_i2 &&
                                          ec.freq(ec.new_sellers_j1) == mg.new_sellers_j1 &&
                                          ec.freq(ec.old_sellers_j2) == mg.old_sellers_j2 &&
                                          ec.freq(ec.e1) >= mg.product();
                                if (c >= 1) ok = ok && ec.freq(ec.sellers_top) == pr_sellers_top(m, n, c);
                                all = all && ok;
                                rows.push_back(Json{{"m", m}, {"n", n}, {"c", c}, {"p", p}, {"ok", ok},
                                                    {"pr_e1", to_string(ec.freq(ec.e1))},
                                                    {"pr_e2", to_string(ec.freq(ec.e2))}});
                            }
                        }
                    }
                }
                emit(out, Json{{"check", check}, {"holds", all}, {"rows", rows}});
                if (!all) throw CheckFailed("enumeration disagrees with a formula");
            } else if (check == "dsic" || check == "ir-wbb") {
                const MechanismKind kind = parse_mechanism(verify_mech);
                const Json pj = verify_profile.load();
                Json j{{"check", check}, {"mechanism", to_string(kind)}};
                bool holds = true;
                if (check == "dsic") {
                    const Profile p = profile_from_json(pj);
                    const DsicReport rep = check_dsic(kind, p, dsic_grid(p));
                    holds = rep.ok;
                    if (rep.violation)
                        j["deviation"] = {{"side", rep.violation->is_buyer ? "buyer" : "seller"},
                                          {"agent", rep.violation->agent},
                                          {"bid", rep.violation->bid},
                                          {"truthful_utility", rep.violation->truthful_utility},
                                          {"deviating_utility", rep.violation->deviating_utility}};
                } else {
                    std::vector<std::string> issues;
                    if (verify_profile.exact) {
                        const ExactProfile p = exact_profile_from_json(pj);
                        const ExactOutcome o = run_mechanism(kind, p);
                        for (const auto& v : check_ir(o, p).violations) issues.push_back("IR: " + v);
                        for (const auto& v : check_wbb(o).violations) issues.push_back("WBB: " + v);
                    } else {
                        const Profile p = profile_from_json(pj);
                        const MechanismOutcome o = run_mechanism(kind, p);
                        for (const auto& v : check_ir(o, p).violations) issues.push_back("IR: " + v);
                        for (const auto& v : check_wbb(o).violations) issues.push_back("WBB: " + v);
                    }
                    holds = issues.empty();
                    j["violations"] = issues;
                }
                j["holds"] = holds;
                emit(out, j);
                if (!holds) throw CheckFailed(check + " fails for " + to_string(kind));
            } else if (check == "gaps") {
                if (verify_config.empty()) throw std::invalid_argument("--config is required for gaps");
                const ExperimentConfig cfg = config_from_json(read_json_file(verify_config));
                try {
                    const ConditionalGapReport rep = conditional_gaps(cfg, verify_workers);
                    emit(out, to_json(rep));
                    if (rep.gain_status == GapStatus::Fails || rep.loss_status == GapStatus::Fails)
                        throw CheckFailed("conditional gap inequality fails");
                } catch (const ImplicationViolation& v) {
                    return report_violation(v, "gft-lab-witness.json", err);
                }
            } else {
                throw std::invalid_argument("unknown check '" + check + "'");
            }
        }
    } catch (const CheckFailed& e) {
        err << "gft-lab: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::logic_error& e) {
        err << "gft-lab: " << e.what() << '\n';
        return dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
                       dynamic_cast<const std::out_of_range*>(&e)
                   ? kExitInvalid
                   : kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "gft-lab: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace gftlab
