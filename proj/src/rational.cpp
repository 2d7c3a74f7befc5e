// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#include "gftlab/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gftlab {
namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer");
    BigInt v(std::string(s), 10);
    return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

Rational parse_decimal(std::string_view s)
{
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
        if (ec != std::errc{} || ptr != exp_part.data() + exp_part.size())
            throw std::invalid_argument("bad exponent");
        s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        digits = std::string(s);
    } else {
        digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        exponent -= static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty() || !all_digits(digits)) throw std::invalid_argument("not a decimal number");

    Rational r(BigInt(digits, 10));
    if (exponent > 0) r *= Rational(pow10(static_cast<unsigned long>(exponent)));
    if (exponent < 0) r /= Rational(pow10(static_cast<unsigned long>(-exponent)));
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    return parse_decimal(text);
}

Rational rational_from_double(double x)
{
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::invalid_argument("cannot format double");
    return parse_decimal(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_str();
}

double to_double(const Rational& x) { return x.get_d(); }

}  // namespace gftlab
