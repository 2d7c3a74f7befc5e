// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/market.hpp"

#include <cmath>
#include <stdexcept>

namespace gftlab {
namespace {

void check_sizes(std::size_t m, std::size_t n)
{
    if (m < 1 || n < 1) throw std::invalid_argument("a profile needs at least one buyer and one seller");
}

}  // namespace

void validate_profile(const Profile& p)
{
    check_sizes(p.buyers.size(), p.sellers.size());
    for (const auto* side : {&p.buyers, &p.sellers}) {
        for (double v : *side) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("profile values must be finite and nonnegative");
        }
    }
}

void validate_profile(const ExactProfile& p)
{
    check_sizes(p.buyers.size(), p.sellers.size());
    for (const auto* side : {&p.buyers, &p.sellers}) {
        for (const Rational& v : *side) {
            if (sgn(v) < 0) throw std::invalid_argument("profile values must be nonnegative");
        }
    }
}

ExactProfile to_exact(const Profile& p)
{
    ExactProfile e;
    for (double b : p.buyers) e.buyers.push_back(rational_from_double(b));
    for (double s : p.sellers) e.sellers.push_back(rational_from_double(s));
    return e;
}

}  // namespace gftlab
