#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mirror_morse {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// A point of R^n with exact rational coordinates.
using RationalPoint = std::vector<Rational>;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    const auto& num = boost::multiprecision::numerator(q);
    const auto& den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    num = trim(num);
    den = trim(den);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational: " + std::string(text));
    auto strip_plus = [](std::string_view s) { return s.front() == '+' ? s.substr(1) : s; };
    BigInt n(std::string(strip_plus(num)));
    BigInt d(std::string(strip_plus(den)));
    if (d == 0) throw std::invalid_argument("rational with zero denominator: " + std::string(text));
    return Rational(n, d);
}

inline std::vector<std::string> to_strings(const RationalPoint& p) {
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(to_string(q));
    return out;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::vector<double> to_doubles(const RationalPoint& p) {
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& q : p) out.push_back(to_double(q));
    return out;
}

}  // namespace mirror_morse
