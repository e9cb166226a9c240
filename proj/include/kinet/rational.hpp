#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kinet {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

inline Int numer(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rat& q) { return boost::multiprecision::denominator(q); }

// Renders "p" when the denominator is 1, "p/q" otherwise.
inline std::string rat_to_string(const Rat& q) {
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

// Parses "3", "-2", "3/2", "0.25", "1e-3", "2.5e2" exactly into a rational.
// Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = (text[pos] == '-');
        ++pos;
    }
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::string int_part, frac_part, exp_part, den_part;
    while (pos < text.size() && is_digit(text[pos])) int_part += text[pos++];
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        while (pos < text.size() && is_digit(text[pos])) den_part += text[pos++];
        if (pos != text.size() || int_part.empty() || den_part.empty())
            throw std::invalid_argument("malformed fraction literal");
        Rat q{Int(int_part), Int(den_part)};
        return negative ? Rat(-q) : q;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && is_digit(text[pos])) frac_part += text[pos++];
    }
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_negative = (text[pos] == '-');
            ++pos;
        }
        while (pos < text.size() && is_digit(text[pos])) exp_part += text[pos++];
        if (exp_part.empty()) throw std::invalid_argument("malformed exponent");
    }
    if (pos != text.size() || (int_part.empty() && frac_part.empty()))
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    Int num = int_part.empty() ? Int(0) : Int(int_part);
    Int scale = 1;
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        scale *= 10;
    }
    Rat q{num, scale};
    if (!exp_part.empty()) {
        unsigned long e = std::stoul(exp_part);
        Int p10 = 1;
        for (unsigned long i = 0; i < e; ++i) p10 *= 10;
        q = exp_negative ? q / Rat(p10) : q * Rat(p10);
    }
    return negative ? -q : q;
}

// Nearest rational by continued-fraction convergents, stopping once the
// error drops below rel_tol against max(1, |x|).
inline Rat rat_approx(double x, double rel_tol = 1e-9) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_approx: non-finite input");
    double target = rel_tol * std::max(1.0, std::abs(x));
    if (std::abs(x) <= target) return Rat(0);
    bool negative = x < 0;
    double v = std::abs(x);
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int i = 0; i < 64; ++i) {
        double whole = std::floor(frac);
        if (whole > 9e15) break;
        Int a(static_cast<long long>(whole));
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rat conv{p1, q1};
        if (std::abs(to_double(conv) - v) <= target) break;
        double rem = frac - whole;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rat r{p1, q1};
    return negative ? Rat(-r) : r;
}

}  // namespace kinet
