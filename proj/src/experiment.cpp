// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <span>
#include <thread>

#include <json.hpp>

#include "gftlab/coupling.hpp"
#include "gftlab/market.hpp"

namespace gftlab {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kZ = 1.96;

/// Streaming mean and variance with an order-fixed pairwise merge.
struct Welford {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Welford& o)
    {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(count + o.count);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.count) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
        count += o.count;
    }

    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double std_error() const { return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }

    ConditionalEstimate estimate() const { return {count, mean, std_error()}; }
};

struct Witness {
    std::uint64_t trial = 0;
    std::string implication;
    Json detail;
};

struct BlockStats {
    Welford opt, mech, gap;
    Welford gain, loss, bench, gain_excess, loss_excess, loss_outside_e3;
    std::uint64_t e1 = 0, e2 = 0, e3 = 0, top = 0, violations = 0;
    std::optional<Witness> witness;

    void merge(BlockStats&& o)
    {
        opt.merge(o.opt);
        mech.merge(o.mech);
        gap.merge(o.gap);
        gain.merge(o.gain);
        loss.merge(o.loss);
        bench.merge(o.bench);
        gain_excess.merge(o.gain_excess);
        loss_excess.merge(o.loss_excess);
        loss_outside_e3.merge(o.loss_outside_e3);
        e1 += o.e1;
        e2 += o.e2;
        e3 += o.e3;
        top += o.top;
        violations += o.violations;
        if (!witness && o.witness) witness = std::move(o.witness);
    }
};

struct Plan {
    const ExperimentConfig* config = nullptr;
    std::size_t new_buyers = 0;
    std::size_t new_sellers = 0;
    bool events = false;
    bool implications = false;
    std::optional<IndexSets> sets;
    std::optional<IntervalScheme> scheme;
};

const char* label_name(Label l)
{
    switch (l) {
    case Label::OldBuyer: return "BO";
    case Label::NewBuyer: return "BN";
    case Label::OldSeller: return "SO";
    case Label::NewSeller: return "SN";
    }
    return "?";
}

double implication_tolerance(double opt) { return 1e-9 * (1.0 + std::fabs(opt)); }

/// Per-thread scratch buffers for one trial.
struct Scratch {
    CoupledDraw draw;
    LabeledQuantiles lq;
    std::vector<double> ob, os, ab, as;
};

struct TrialValues {
    double opt = 0.0;
    double mech = 0.0;
    std::size_t opt_size = 0;
    std::size_t aug_opt_size = 0;
};

TrialValues evaluate(const ExperimentConfig& cfg, Scratch& s)
{
    TrialValues v;
    const std::span<const double> ob(s.ob), os(s.os), ab(s.ab), as(s.as);
    v.opt_size = optimal_trade_size(ob, os);
    v.opt = sorted_pairs_gft(ob, os, v.opt_size);
    v.aug_opt_size = optimal_trade_size(ab, as);
    const TradeDecision<double> d = decide<double>(cfg.mechanism, ab, as);
    v.mech = sorted_pairs_gft(ab, as, d.trade_size);
    return v;
}

Json values_json(const Scratch& s, const TrialValues& v)
{
    return Json{{"original", {{"buyers", s.ob}, {"sellers", s.os}}},
                {"augmented", {{"buyers", s.ab}, {"sellers", s.as}}},
                {"opt_original", v.opt},
                {"mechanism_augmented", v.mech}};
}

void record_violation(BlockStats& st, std::uint64_t trial, const char* what, const std::function<Json()>& detail)
{
    ++st.violations;
    if (!st.witness) st.witness = Witness{trial, what, detail()};
}

void coupled_trial(const Plan& plan, std::uint64_t trial, Scratch& s, BlockStats& st)
{
    const ExperimentConfig& cfg = *plan.config;
    StreamRng rng(StreamKey{cfg.seed, cfg.c, trial});
    sample_coupled(cfg.m, cfg.n, plan.new_buyers, plan.new_sellers, rng, s.draw);

    s.ob.clear();
    s.os.clear();
    s.ab.clear();
    s.as.clear();
    const auto& q = s.draw.quantiles.q;
    const auto& labels = s.draw.assignment.labels;
    for (std::size_t k = 0; k < q.size(); ++k) {
        switch (labels[k]) {
        case Label::OldBuyer: {
            const double x = cfg.fb.quantile(q[k]);
            s.ob.push_back(x);
            s.ab.push_back(x);
            break;
        }
        case Label::NewBuyer: s.ab.push_back(cfg.fb.quantile(q[k])); break;
        case Label::OldSeller: {
            const double x = cfg.fs.quantile(q[k]);
            s.os.push_back(x);
            s.as.push_back(x);
            break;
        }
        case Label::NewSeller: s.as.push_back(cfg.fs.quantile(q[k])); break;
        }
    }
    std::reverse(s.os.begin(), s.os.end());
    std::reverse(s.as.begin(), s.as.end());

    const TrialValues v = evaluate(cfg, s);
    st.opt.add(v.opt);
    st.mech.add(v.mech);
    st.gap.add(v.mech - v.opt);
    if (!plan.events) return;

    const IndexSets& sets = *plan.sets;
    const WindowCounts w = window_counts(s.draw.assignment, sets);
    const bool e1 = w.new_buyers_i1 >= 2 && w.old_buyers_i2 >= 1 && w.new_sellers_j1 >= 2 && w.old_sellers_j2 >= 1;
    const bool top = new_sellers_in_top(s.draw.assignment, cfg.n, cfg.c);
    const bool e2 = !e1 && top;
    st.e1 += e1;
    st.e2 += e2;
    st.top += top;

    double buyers_top = 0.0;
    double sellers_bottom = 0.0;
    for (std::size_t pos = sets.i1.first; pos <= sets.i1.last; ++pos) buyers_top += cfg.fb.quantile(q[pos - 1]);
    for (std::size_t pos = sets.j1.first; pos <= sets.j1.last; ++pos) sellers_bottom += cfg.fs.quantile(q[pos - 1]);
    const double width = static_cast<double>(sets.width);
    const double benchmark = buyers_top / width - sellers_bottom / width;
    st.bench.add(benchmark);
    if (e1) {
        st.gain.add(v.mech - v.opt);
        st.gain_excess.add(v.mech - v.opt - benchmark);
    }
    if (e2) {
        st.loss.add(v.opt - v.mech);
        st.loss_excess.add(v.opt - v.mech - benchmark);
    }

    if (!plan.implications) return;
    const auto detail = [&] {
        Json j = values_json(s, v);
        std::vector<std::string> names;
        for (Label l : labels) names.emplace_back(label_name(l));
        j["quantiles"] = q;
        j["labels"] = names;
        return j;
    };
    const double tol = implication_tolerance(v.opt);
    if (e1 && v.mech < v.opt - tol) record_violation(st, trial, "E1 implies STR >= OPT", detail);
    if (!e2 && v.mech < v.opt - tol) record_violation(st, trial, "not E2 implies STR >= OPT", detail);
    if (e1 && v.aug_opt_size < v.opt_size + 2)
        record_violation(st, trial, "E1 implies augmented trade size >= original + 2", detail);
}

void independent_trial(const Plan& plan, std::uint64_t trial, Scratch& s, BlockStats& st)
{
    const ExperimentConfig& cfg = *plan.config;
    StreamRng rng(StreamKey{cfg.seed, cfg.c, trial});
    LabeledQuantiles& lq = s.lq;
    sample_independent(cfg.m, cfg.n, plan.new_buyers, plan.new_sellers, rng, lq);

    const auto fill = [](std::vector<double>& out, const std::vector<double>& qs, const QuantileDistribution& d) {
        out.clear();
        for (double x : qs) out.push_back(d.quantile(x));
    };
    fill(s.ob, lq.old_buyers, cfg.fb);
    fill(s.os, lq.old_sellers, cfg.fs);
    // Reuse ab/as as merge targets; the new-agent values go through `draw` scratch.
    std::vector<double>& nb = s.draw.quantiles.q;
    fill(nb, lq.new_buyers, cfg.fb);
    s.ab.resize(s.ob.size() + nb.size());
    std::merge(s.ob.begin(), s.ob.end(), nb.begin(), nb.end(), s.ab.begin(), std::greater<>());
    fill(nb, lq.new_sellers, cfg.fs);
    s.as.resize(s.os.size() + nb.size());
    std::merge(s.os.begin(), s.os.end(), nb.begin(), nb.end(), s.as.begin());

    const TrialValues v = evaluate(cfg, s);
    st.opt.add(v.opt);
    st.mech.add(v.mech);
    st.gap.add(v.mech - v.opt);
    if (!plan.events) return;

    const IntervalScheme& scheme = *plan.scheme;
    const bool e1 = event_e1_cont(lq, scheme);
    const bool e3 = event_e3_cont(lq, scheme, cfg.m, cfg.n);
    const bool e2 = event_e2_cont(lq, scheme, cfg.m, cfg.n, cfg.c);
    st.e1 += e1;
    st.e2 += e2;
    st.e3 += e3;
    st.top += std::all_of(lq.new_sellers.begin(), lq.new_sellers.end(), [&](double x) { return x > scheme.r / 2; });
    if (e1) st.gain.add(v.mech - v.opt);
    if (e2) st.loss.add(v.opt - v.mech);
    if (!e3) st.loss_outside_e3.add(std::max(0.0, v.opt - v.mech));

    if (!plan.implications) return;
    const auto detail = [&] {
        Json j = values_json(s, v);
        j["quantiles"] = {{"old_buyers", lq.old_buyers},
                          {"new_buyers", lq.new_buyers},
                          {"old_sellers", lq.old_sellers},
                          {"new_sellers", lq.new_sellers}};
        j["overlap_r"] = scheme.r;
        j["interval_width"] = scheme.p;
        return j;
    };
    const double tol = implication_tolerance(v.opt);
    if (e1 && e3 && v.mech < v.opt - tol) record_violation(st, trial, "E1 and E3 imply STR >= OPT", detail);
    if (e3 && !e2 && v.mech < v.opt - tol) record_violation(st, trial, "E3 and not E2 imply STR >= OPT", detail);
}

Plan make_plan(const ExperimentConfig& cfg, double& overlap)
{
    Plan plan;
    plan.config = &cfg;
    plan.new_buyers = cfg.new_buyers.value_or(cfg.c);
    plan.new_sellers = cfg.new_sellers.value_or(cfg.c);
    const bool symmetric = plan.new_buyers == cfg.c && plan.new_sellers == cfg.c;
    if (cfg.mode == ExperimentMode::CoupledFsd) {
        plan.events = symmetric;
        if (plan.events) plan.sets = IndexSets::for_market(cfg.m, cfg.n, cfg.c);
    } else {
        overlap = cfg.overlap ? *cfg.overlap : overlap_r(cfg.fb, cfg.fs, kDefaultOverlapTrials, cfg.seed).r;
        plan.events = symmetric && overlap > 0.0 && overlap < 1.0;
        if (plan.events) plan.scheme = IntervalScheme::make(overlap, cfg.m, cfg.n);
    }
    plan.implications = plan.events && cfg.mechanism == MechanismKind::Str;
    return plan;
}

template <class Work>
void parallel_blocks(std::size_t blocks, std::size_t workers, Work&& work)
{
    workers = std::max<std::size_t>(1, std::min(workers, blocks));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) work(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next++; b < blocks; b = next++) work(b);
        });
    }
}

}  // namespace

std::string to_string(ExperimentMode mode)
{
    return mode == ExperimentMode::CoupledFsd ? "coupled_fsd" : "independent_general";
}

ExperimentMode parse_mode(const std::string& name)
{
    if (name == "coupled_fsd") return ExperimentMode::CoupledFsd;
    if (name == "independent_general") return ExperimentMode::IndependentGeneral;
    throw std::invalid_argument("unknown mode '" + name + "' (expected coupled_fsd or independent_general)");
}

std::string to_string(GapStatus status)
{
    switch (status) {
    case GapStatus::Holds: return "holds";
    case GapStatus::Fails: return "fails";
    case GapStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

void validate_config(const ExperimentConfig& cfg)
{
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("m and n must be at least 1");
    if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (cfg.overlap && !(*cfg.overlap > 0.0 && *cfg.overlap <= 1.0))
        throw std::invalid_argument("overlap must lie in (0, 1]");
    if (cfg.mode == ExperimentMode::CoupledFsd) {
        if (cfg.n < 20) throw std::invalid_argument("coupled_fsd mode needs n >= 20");
        if (!check_fsd(cfg.fb, cfg.fs))
            throw std::invalid_argument("coupled_fsd mode needs the buyer distribution to dominate the seller one");
    }
}

std::size_t default_workers()
{
    if (const char* env = std::getenv("GFT_LAB_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run(const ExperimentConfig& cfg, std::size_t workers)
{
    validate_config(cfg);
    double overlap = 0.0;
    const Plan plan = make_plan(cfg, overlap);

    const std::size_t blocks = (cfg.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<BlockStats> per_block(blocks);
    parallel_blocks(blocks, workers, [&](std::size_t b) {
        Scratch scratch;
        BlockStats st;
        const std::uint64_t first = static_cast<std::uint64_t>(b) * kTrialBlock;
        const std::uint64_t last = std::min<std::uint64_t>(first + kTrialBlock, cfg.trials);
        for (std::uint64_t t = first; t < last; ++t) {
            if (cfg.mode == ExperimentMode::CoupledFsd)
                coupled_trial(plan, t, scratch, st);
            else
                independent_trial(plan, t, scratch, st);
        }
        per_block[b] = std::move(st);
    });

    BlockStats total;
    for (BlockStats& st : per_block) total.merge(std::move(st));

    ExperimentResult r;
    r.m = cfg.m;
    r.n = cfg.n;
    r.c = cfg.c;
    r.new_buyers = plan.new_buyers;
    r.new_sellers = plan.new_sellers;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.mode = cfg.mode;
    r.mechanism = cfg.mechanism;
    r.mean_opt_original = total.opt.mean;
    r.mean_str_augmented = total.mech.mean;
    r.mean_gap = total.gap.mean;
    r.gap_std_error = total.gap.std_error();
    r.ci_halfwidth = kZ * r.gap_std_error;
    r.events_evaluated = plan.events;
    const double trials = static_cast<double>(cfg.trials);
    r.freq_e1 = static_cast<double>(total.e1) / trials;
    r.freq_e2 = static_cast<double>(total.e2) / trials;
    r.freq_e3 = static_cast<double>(total.e3) / trials;
    r.freq_sellers_top = static_cast<double>(total.top) / trials;
    r.violations = total.violations;
    r.gain_given_e1 = total.gain.estimate();
    r.loss_given_e2 = total.loss.estimate();
    r.benchmark = total.bench.estimate();
    r.gain_excess_e1 = total.gain_excess.estimate();
    r.loss_excess_e2 = total.loss_excess.estimate();
    if (cfg.mode == ExperimentMode::IndependentGeneral) {
        r.overlap_r = overlap;
        r.interval_width = plan.scheme ? plan.scheme->p : 0.0;
        r.mean_loss_outside_e3 = total.loss_outside_e3.mean;
        r.eta_condition = plan.events && 1.0 - r.freq_e3 <= cfg.eta;
    } else if (cfg.c == 0) {
        r.alpha_regime = "none";
    } else {
        const double cap = 10.0 * cfg.alpha * static_cast<double>(cfg.m) / static_cast<double>(cfg.c) - 1.0;
        r.alpha_regime = static_cast<double>(cfg.n) <= cap ? "small_n" : "large_n";
    }

    if (total.violations > 0) {
        Json w{{"trial", total.witness->trial},
               {"implication", total.witness->implication},
               {"mode", to_string(cfg.mode)},
               {"seed", cfg.seed},
               {"m", cfg.m},
               {"n", cfg.n},
               {"c", cfg.c}};
        for (auto& [k, v] : total.witness->detail.items()) w[k] = v;
        throw ImplicationViolation("implication failed at trial " + std::to_string(total.witness->trial) + ": " +
                                       total.witness->implication + " (" + std::to_string(total.violations) +
                                       " violations)",
                                   w.dump(2), r);
    }
    return r;
}

SweepResult sweep_c(const ExperimentConfig& config, const std::vector<std::size_t>& c_values, std::size_t workers)
{
    if (c_values.empty()) throw std::invalid_argument("c list must be nonempty");
    if (!std::is_sorted(c_values.begin(), c_values.end()) ||
        std::adjacent_find(c_values.begin(), c_values.end()) != c_values.end())
        throw std::invalid_argument("c list must be strictly ascending");
    SweepResult out;
    ExperimentConfig cfg = config;
    for (std::size_t c : c_values) {
        cfg.c = c;
        out.rows.push_back(run(cfg, workers));
        const ExperimentResult& r = out.rows.back();
        if (!out.threshold && r.mean_gap - r.ci_halfwidth >= 0.0) out.threshold = c;
    }
    return out;
}

ConditionalGapReport conditional_gaps(const ExperimentConfig& config, std::size_t workers)
{
    if (config.mode != ExperimentMode::CoupledFsd) throw std::invalid_argument("conditional gaps need coupled_fsd mode");
    ConditionalGapReport rep;
    rep.result = run(config, workers);
    rep.gain_excess = rep.result.gain_excess_e1;
    rep.loss_excess = rep.result.loss_excess_e2;
    if (rep.gain_excess.hits >= kMinEventHits)
        rep.gain_status = rep.gain_excess.mean >= -3.0 * rep.gain_excess.std_error ? GapStatus::Holds : GapStatus::Fails;
    if (rep.loss_excess.hits >= kMinEventHits)
        rep.loss_status = rep.loss_excess.mean <= 3.0 * rep.loss_excess.std_error ? GapStatus::Holds : GapStatus::Fails;
    return rep;
}

double EventFrequencies::std_error(std::uint64_t count) const
{
    if (trials == 0) return 0.0;
    const double f = freq(count);
    return std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

EventFrequencies estimate_event_frequencies(std::size_t m, std::size_t n, std::size_t c, std::size_t trials,
                                            std::uint64_t seed, std::size_t workers)
{
    EventFrequencies out;
    out.trials = trials;
    out.e1_evaluated = n >= 20;
    const std::optional<IndexSets> sets =
        out.e1_evaluated ? std::optional<IndexSets>(IndexSets::for_market(m, n, c)) : std::nullopt;
    const std::size_t total = m + n + 2 * c;

    const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> per_block(blocks);
    parallel_blocks(blocks, workers, [&](std::size_t b) {
        Assignment a;
        std::uint64_t top = 0, not_e1 = 0;
        const std::uint64_t first = static_cast<std::uint64_t>(b) * kTrialBlock;
        const std::uint64_t last = std::min<std::uint64_t>(first + kTrialBlock, trials);
        for (std::uint64_t t = first; t < last; ++t) {
            StreamRng rng(StreamKey{seed, c, t});
            a.labels.assign(m, Label::OldBuyer);
            a.labels.insert(a.labels.end(), n, Label::OldSeller);
            a.labels.insert(a.labels.end(), c, Label::NewBuyer);
            a.labels.insert(a.labels.end(), c, Label::NewSeller);
            for (std::size_t k = total; k > 1; --k) std::swap(a.labels[k - 1], a.labels[rng.below(k)]);
            top += new_sellers_in_top(a, n, c);
            if (sets) not_e1 += !event_e1_fsd(a, *sets);
        }
        per_block[b] = {top, not_e1};
    });
    for (const auto& [top, not_e1] : per_block) {
        out.sellers_top += top;
        out.not_e1 += not_e1;
    }
    return out;
}

}  // namespace gftlab
