// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/exactprob.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gftlab/coupling.hpp"

namespace gftlab {
namespace {

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

Rational ratio(const BigInt& num, const BigInt& den) { return make_rational(num, den); }

Rational frac(std::size_t num, std::size_t den) { return make_rational(as_int(num), as_int(den)); }
Rational whole(std::size_t x) { return frac(x, 1); }

Rational power(Rational base, std::size_t exp)
{
    Rational out = 1;
    while (exp > 0) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

// log C(a, p) - log C(total, p) for a <= total.
double log_binom_ratio(std::size_t a, std::size_t total, std::size_t p)
{
    if (p > a) return -std::numeric_limits<double>::infinity();
    const double gap = static_cast<double>(total - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) acc += std::log1p(-gap / static_cast<double>(total - i));
    return acc;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

BigInt binom(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::size_t window_width(std::size_t n) { return (n + 9) / 10; }

Rational pr_count_in_window(std::size_t total, std::size_t special, std::size_t window, std::size_t k)
{
    require(special <= total && window <= total, "special and window must not exceed N");
    if (k > special || k > window) return 0;
    return ratio(binom(as_int(special), as_int(k)) * binom(as_int(total - special), as_int(window - k)),
                 binom(as_int(total), as_int(window)));
}

Rational pr_count_at_least(std::size_t total, std::size_t special, std::size_t window, std::size_t k)
{
    Rational below = 0;
    for (std::size_t j = 0; j < k; ++j) below += pr_count_in_window(total, special, window, j);
    return Rational(1) - below;
}

Rational pr_e1_complement_upper(std::size_t m, std::size_t n, std::size_t c)
{
    require(m >= n && n >= c && c >= 1, "union bound needs m >= n >= c >= 1");
    require(n >= 20, "union bound needs n >= 20");
    const std::int64_t p = as_int(window_width(n));
    const std::int64_t rest = as_int(m + n + c);
    const BigInt num = 2 * binom(rest, p) + 2 * as_int(c) * binom(rest, p - 1) +
                       binom(as_int(n + 2 * c), p) + binom(as_int(m + 2 * c), p);
    const Rational value = ratio(num, binom(as_int(m + n + 2 * c), p));
    if (to_double(value) > e1_complement_closed_form(m, n, c) * (1.0 + 1e-12))
        throw std::logic_error("union bound exceeds 6c exp(-cn/(10(m+n+2c)))");
    return value;
}

double e1_complement_closed_form(std::size_t m, std::size_t n, std::size_t c)
{
    const double cd = static_cast<double>(c);
    const double nd = static_cast<double>(n);
    return 6.0 * cd * std::exp(-cd * nd / (10.0 * static_cast<double>(m + n + 2 * c)));
}

Rational pr_sellers_top(std::size_t m, std::size_t n, std::size_t c)
{
    require(c >= 1, "sellers-top needs c >= 1");
    require(m >= n, "sellers-top needs m >= n");
    BigInt num = 1;
    BigInt den = 1;
    for (std::size_t i = 1; i <= c; ++i) {
        num *= as_int(2 * n + c + i);
        den *= as_int(m + n + c + i);
    }
    const Rational value = ratio(num, den);
    if (4 * n <= m && m > 0 && value > power(frac(4 * n, m), c))
        throw std::logic_error("sellers-top probability exceeds (4n/m)^c");
    return value;
}

Rational E1Marginals::product() const
{
    Rational out = new_buyers_i1;
    out *= old_buyers_i2;
    out *= new_sellers_j1;
    out *= old_sellers_j2;
    return out;
}

E1Marginals e1_marginals(std::size_t m, std::size_t n, std::size_t c, std::size_t p)
{
    const std::size_t total = m + n + 2 * c;
    require(p >= 1 && 4 * p <= total, "marginals need 1 <= p and 4p <= N");
    E1Marginals e;
    e.new_buyers_i1 = pr_count_at_least(total, c, p, 2);
    e.old_buyers_i2 = pr_count_at_least(total, m, p, 1);
    e.new_sellers_j1 = pr_count_at_least(total, c, p, 2);
    e.old_sellers_j2 = pr_count_at_least(total, n, p, 1);
    return e;
}

Rational pr_two_new_buyers_top(std::size_t m, std::size_t n, std::size_t c)
{
    const std::int64_t p = as_int(window_width(n));
    return ratio(binom(as_int(c), 2) * binom(as_int(m + n + c), p - 2), binom(as_int(m + n + 2 * c), p));
}

Rational two_new_buyers_top_bound(std::size_t m, std::size_t n, std::size_t c, const Rational& alpha)
{
    Rational out = frac(c * c, 12800);
    out *= power(frac(n, m), 2);
    out *= power(Rational(1 - 10 * alpha / whole(c)), c);
    return out;
}

Rational old_seller_bottom_bound(std::size_t m, std::size_t n) { return frac(n, 20 * m); }

Rational pr_e1_lower_small_n(std::size_t m, std::size_t n, std::size_t c, const Rational& alpha)
{
    require(alpha > 0, "alpha must be positive");
    require(c >= 2, "small-n lower bound needs c >= 2");
    require(m >= n + 2 * c, "small-n lower bound needs m >= n + 2c");
    require(n >= 20, "small-n lower bound needs n >= 20");
    const Rational cap = 10 * alpha * whole(m) / whole(c) - 1;
    require(whole(n) <= cap, "small-n lower bound needs n <= 10 alpha m / c - 1");

    Rational out = frac(1, 40);
    out *= power(frac(c, 120), 4);
    out *= power(Rational(1 - 10 * alpha / whole(c)), 2 * c);
    out *= power(frac(n, m), 6);
    return out;
}

double pr_e1_complement_upper_approx(std::size_t m, std::size_t n, std::size_t c)
{
    const std::size_t p = window_width(n);
    const std::size_t total = m + n + 2 * c;
    const std::size_t rest = m + n + c;
    const double shrink = static_cast<double>(p) / static_cast<double>(total - p + 1);
    return 2.0 * std::exp(log_binom_ratio(rest, total, p)) +
           2.0 * static_cast<double>(c) * std::exp(log_binom_ratio(rest, total, p - 1)) * shrink +
           std::exp(log_binom_ratio(n + 2 * c, total, p)) + std::exp(log_binom_ratio(m + 2 * c, total, p));
}

double pr_sellers_top_approx(std::size_t m, std::size_t n, std::size_t c)
{
    double acc = 0.0;
    const double diff = static_cast<double>(n) - static_cast<double>(m);
    for (std::size_t i = 1; i <= c; ++i) acc += std::log1p(diff / static_cast<double>(m + n + c + i));
    return std::exp(acc);
}

EnumerationCounts enumerate_events(std::size_t m, std::size_t n, std::size_t c, std::size_t p)
{
    const std::size_t total = m + n + 2 * c;
    require(total <= 16, "enumeration needs N <= 16");
    const IndexSets sets = IndexSets::with_width(total, p);

    Assignment a;
    a.labels.insert(a.labels.end(), m, Label::OldBuyer);
    a.labels.insert(a.labels.end(), c, Label::NewBuyer);
    a.labels.insert(a.labels.end(), n, Label::OldSeller);
    a.labels.insert(a.labels.end(), c, Label::NewSeller);
    std::sort(a.labels.begin(), a.labels.end());

    std::uint64_t counts[8] = {};
    do {
        const WindowCounts w = window_counts(a, sets);
        const bool e1 = w.new_buyers_i1 >= 2 && w.old_buyers_i2 >= 1 && w.new_sellers_j1 >= 2 &&
                        w.old_sellers_j2 >= 1;
        const bool top = new_sellers_in_top(a, n, c);
        ++counts[0];
        counts[1] += e1;
        counts[2] += !e1 && top;
        counts[3] += top;
        counts[4] += w.new_buyers_i1 >= 2;
        counts[5] += w.old_buyers_i2 >= 1;
        counts[6] += w.new_sellers_j1 >= 2;
        counts[7] += w.old_sellers_j2 >= 1;
    } while (std::next_permutation(a.labels.begin(), a.labels.end()));

    const auto big = [](std::uint64_t x) { return BigInt(std::to_string(x)); };
    return {big(counts[0]), big(counts[1]), big(counts[2]), big(counts[3]),
            big(counts[4]), big(counts[5]), big(counts[6]), big(counts[7])};
}

ConditioningReport verify_conditioning_claim(std::size_t total, std::size_t c)
{
    require(total >= 1 && total <= 16, "conditioning sweep needs 1 <= N <= 16");
    ConditioningReport report;
    const std::uint32_t full = (1u << total) - 1u;

    std::vector<std::uint32_t> subsets;
    for (std::uint32_t x = 0; x <= full; ++x)
        if (static_cast<std::size_t>(std::popcount(x)) == c) subsets.push_back(x);
    const std::uint64_t all = subsets.size();
    if (all == 0) return report;

    std::vector<std::uint64_t> hist_all(total + 2);
    std::vector<std::uint64_t> hist_cond(total + 2);
    for (std::uint32_t i_mask = 0; i_mask <= full; ++i_mask) {
        const std::size_t i_size = static_cast<std::size_t>(std::popcount(i_mask));
        std::fill(hist_all.begin(), hist_all.end(), 0);
        for (std::uint32_t x : subsets) ++hist_all[static_cast<std::size_t>(std::popcount(x & i_mask))];
        // Tail sums: hist[r] becomes #{X : |X n I| >= r}.
        for (std::size_t r = i_size; r-- > 0;) hist_all[r] += hist_all[r + 1];

        const std::uint32_t rest = full & ~i_mask;
        for (std::uint32_t k_mask = rest;; k_mask = (k_mask - 1) & rest) {
            std::fill(hist_cond.begin(), hist_cond.end(), 0);
            std::uint64_t cond = 0;
            for (std::uint32_t x : subsets) {
                if (x & k_mask) continue;
                ++cond;
                ++hist_cond[static_cast<std::size_t>(std::popcount(x & i_mask))];
            }
            if (cond > 0) {
                for (std::size_t r = i_size; r-- > 0;) hist_cond[r] += hist_cond[r + 1];
                for (std::size_t r = 0; r <= i_size + 1; ++r) {
                    ++report.triples_checked;
                    if (hist_cond[r] * all < hist_all[r] * cond) {
                        report.holds = false;
                        report.counterexample = ConditioningWitness{i_mask, k_mask, r};
                        return report;
                    }
                }
            }
            if (k_mask == 0) break;
        }
    }
    return report;
}

double chernoff_bound(double mu, double delta)
{
    require(mu > 0.0, "chernoff bound needs mu > 0");
    require(delta >= 0.0 && delta <= 1.0, "chernoff bound needs 0 <= delta <= 1");
    return std::exp(-delta * delta * mu / 3.0);
}

namespace {

double log_binomial_pmf(std::size_t trials, double prob, std::size_t k)
{
    const double nd = static_cast<double>(trials);
    const double kd = static_cast<double>(k);
    double out = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    if (k > 0) out += kd * std::log(prob);
    if (k < trials) out += (nd - kd) * std::log1p(-prob);
    return out;
}

double sum_pmf(std::size_t trials, double prob, std::size_t lo, std::size_t hi)
{
    if (prob <= 0.0) return lo == 0 ? 1.0 : 0.0;
    if (prob >= 1.0) return hi >= trials && lo <= trials ? 1.0 : 0.0;
    double acc = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) acc += std::exp(log_binomial_pmf(trials, prob, k));
    return std::min(acc, 1.0);
}

}  // namespace

double binomial_upper_tail(std::size_t trials, double prob, std::size_t k)
{
    if (k == 0) return 1.0;
    if (k > trials) return 0.0;
    return sum_pmf(trials, prob, k, trials);
}

double binomial_lower_tail(std::size_t trials, double prob, std::size_t k)
{
    return sum_pmf(trials, prob, 0, std::min(k, trials));
}

double e3_lower_bound(double r, std::size_t n)
{
    return 1.0 - 4.0 * std::exp(-r * static_cast<double>(n) / 300.0);
}

}  // namespace gftlab
