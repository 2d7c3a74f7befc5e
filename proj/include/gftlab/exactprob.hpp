// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "gftlab/rational.hpp"

namespace gftlab {

/// C(n, k); 0 when k < 0 or k > n.
BigInt binom(std::int64_t n, std::int64_t k);

/// ceil(n / 10), the width of each index set.
std::size_t window_width(std::size_t n);

/// Hypergeometric: probability that exactly k of `special` labels fall into a
/// fixed window of `window` positions out of N. Infeasible k gives 0.
Rational pr_count_in_window(std::size_t total, std::size_t special, std::size_t window, std::size_t k);
/// Same, at least k.
Rational pr_count_at_least(std::size_t total, std::size_t special, std::size_t window, std::size_t k);

/// Union bound on Pr[not E1] for the shared-quantile coupling:
/// (2 C(m+n+c,p) + 2c C(m+n+c,p-1) + C(n+2c,p) + C(m+2c,p)) / C(m+n+2c,p).
/// Requires m >= n >= c >= 1 and n >= 20; throws std::invalid_argument
/// otherwise, and std::logic_error if the value exceeds
/// 6c exp(-cn / (10(m+n+2c))).
Rational pr_e1_complement_upper(std::size_t m, std::size_t n, std::size_t c);
double e1_complement_closed_form(std::size_t m, std::size_t n, std::size_t c);

/// Pr[all c new sellers lie in the top 2n+2c positions] =
/// prod_{i=1..c} (2n+c+i) / (m+n+c+i). Requires c >= 1 and m >= n; throws
/// std::logic_error if n <= m/4 and the value exceeds (4n/m)^c.
Rational pr_sellers_top(std::size_t m, std::size_t n, std::size_t c);

/// The four marginal probabilities that make up E1 for window width p.
struct E1Marginals {
    Rational new_buyers_i1;   ///< Pr[|I1 n B_new| >= 2]
    Rational old_buyers_i2;   ///< Pr[|I2 n B_old| >= 1]
    Rational new_sellers_j1;  ///< Pr[|J1 n S_new| >= 2]
    Rational old_sellers_j2;  ///< Pr[|J2 n S_old| >= 1]

    Rational product() const;
};

E1Marginals e1_marginals(std::size_t m, std::size_t n, std::size_t c, std::size_t p);

/// C(c,2) C(m+n+c, p-2) / C(m+n+2c, p) with p = ceil(n/10).
Rational pr_two_new_buyers_top(std::size_t m, std::size_t n, std::size_t c);
/// (c^2 / 12800) (n/m)^2 (1 - 10 alpha / c)^c.
Rational two_new_buyers_top_bound(std::size_t m, std::size_t n, std::size_t c, const Rational& alpha);
/// n / (20 m).
Rational old_seller_bottom_bound(std::size_t m, std::size_t n);

/// (1/40) (c/120)^4 (1 - 10 alpha / c)^{2c} (n/m)^6. Requires c >= 2,
/// m >= n + 2c, 20 <= n <= 10 alpha m / c - 1 and alpha > 0.
Rational pr_e1_lower_small_n(std::size_t m, std::size_t n, std::size_t c, const Rational& alpha);

/// Log-space evaluations for markets too large for exact arithmetic
/// (relative error about 1e-12).
double pr_e1_complement_upper_approx(std::size_t m, std::size_t n, std::size_t c);
double pr_sellers_top_approx(std::size_t m, std::size_t n, std::size_t c);

/// Markets with N = m + n + 2c up to this size are evaluated exactly.
inline constexpr std::size_t kExactLimit = 10'000;

/// Exact label-arrangement counts over all distinct labelings of N positions.
struct EnumerationCounts {
    BigInt arrangements;
    BigInt e1;
    BigInt e2;
    BigInt sellers_top;
    BigInt new_buyers_i1;
    BigInt old_buyers_i2;
    BigInt new_sellers_j1;
    BigInt old_sellers_j2;

    Rational freq(const BigInt& count) const { return make_rational(count, arrangements); }
};

/// Walks every distinct arrangement of the label multiset with window width
/// p. Requires 4p <= N and N <= 16.
EnumerationCounts enumerate_events(std::size_t m, std::size_t n, std::size_t c, std::size_t p);

struct ConditioningWitness {
    std::uint32_t i_mask = 0;
    std::uint32_t k_mask = 0;
    std::size_t threshold = 0;
};

struct ConditioningReport {
    bool holds = true;
    std::uint64_t triples_checked = 0;
    std::optional<ConditioningWitness> counterexample;
};

/// For X a uniform c-subset of [N]: checks Pr[|X n I| >= r | X n K empty] >=
/// Pr[|X n I| >= r] for every disjoint pair (I, K) and every r, exactly.
/// Pairs where no subset avoids K are skipped. Requires 1 <= N <= 16.
ConditioningReport verify_conditioning_claim(std::size_t total, std::size_t c);

/// exp(-delta^2 mu / 3). Requires mu > 0 and 0 <= delta <= 1.
double chernoff_bound(double mu, double delta);

/// Pr[X >= k] and Pr[X <= k] for X ~ Binomial(trials, prob), summed in log space.
double binomial_upper_tail(std::size_t trials, double prob, std::size_t k);
double binomial_lower_tail(std::size_t trials, double prob, std::size_t k);

/// 1 - 4 exp(-r n / 300).
double e3_lower_bound(double r, std::size_t n);

}  // namespace gftlab
