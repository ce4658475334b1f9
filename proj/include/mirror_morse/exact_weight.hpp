#pragma once

// Exact positive reals of the form  prod_p p^{e_p}  with rational exponents.
// Every basis magnitude and structure constant in this library is such a
// monomial in primes, so the multiplicative group is all we need.

#include "mirror_morse/rational.hpp"

#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace mirror_morse {

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d <= p / d; d += 2)
        if (p % d == 0) return false;
    return true;
}

// Trial division; inputs are coordinates with small numerators/denominators.
inline void factor_into(const BigInt& value, const Rational& sign, std::map<std::uint64_t, Rational>& out) {
    if (value <= 0) throw std::invalid_argument("factor_into expects a positive integer");
    if (value > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw std::domain_error("integer too large for trial-division factorization: " + value.str());
    auto m = value.convert_to<std::uint64_t>();
    auto add = [&](std::uint64_t p, unsigned k) {
        auto& e = out[p];
        e += sign * k;
        if (e == 0) out.erase(p);
    };
    for (std::uint64_t p = 2; p <= m / p; p += (p == 2 ? 1 : 2)) {
        unsigned k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (k) add(p, k);
    }
    if (m > 1) add(m, 1);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace detail

/// RAII wrapper over an MPFR value with a fixed precision in bits.
class BigFloat {
public:
    explicit BigFloat(unsigned precision_bits) { mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits)); mpfr_set_ui(value_, 0, MPFR_RNDN); }
    BigFloat(const BigFloat& other) {
        mpfr_init2(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept : BigFloat(other) {}
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept { return *this = static_cast<const BigFloat&>(other); }
    ~BigFloat() { mpfr_clear(value_); }

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    /// Decimal rendering with the given number of significant digits.
    std::string to_string(int significant_digits) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", significant_digits, value_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
        if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
        const int c = mpfr_cmp(a.value_, b.value_);
        return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
    }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

/// Significant decimal digits carried by a binary precision.
inline int decimal_digits(unsigned precision_bits) { return static_cast<int>(precision_bits * 0.30102999566398120); }

class LogExact;

class PosExact {
public:
    using FactorMap = std::map<std::uint64_t, Rational>;

    /// The value 1.
    PosExact() = default;

    static PosExact from_rational(const Rational& q) {
        if (q <= 0) throw std::invalid_argument("PosExact requires a positive rational, got " + mirror_morse::to_string(q));
        PosExact out;
        const BigInt num = boost::multiprecision::numerator(q);
        const BigInt den = boost::multiprecision::denominator(q);
        if (num != 1) detail::factor_into(num, Rational(1), out.factors_);
        if (den != 1) detail::factor_into(den, Rational(-1), out.factors_);
        return out;
    }

    static PosExact from_integer(long long v) { return from_rational(make_rational(v)); }

    /// Validates primality of keys and drops zero exponents.
    static PosExact from_factors(const FactorMap& factors) {
        PosExact out;
        for (const auto& [p, e] : factors) {
            if (!detail::is_prime(p)) throw std::invalid_argument("PosExact factor key is not prime: " + std::to_string(p));
            if (e != 0) out.factors_.emplace(p, e);
        }
        return out;
    }

    const FactorMap& factors() const& { return factors_; }
    FactorMap factors() && { return std::move(factors_); }
    bool is_one() const { return factors_.empty(); }

    PosExact& operator*=(const PosExact& other) {
        for (const auto& [p, e] : other.factors_) {
            auto [it, inserted] = factors_.try_emplace(p, e);
            if (!inserted) {
                it->second += e;
                if (it->second == 0) factors_.erase(it);
            }
        }
        return *this;
    }
    friend PosExact operator*(PosExact a, const PosExact& b) { return a *= b; }
    friend PosExact operator/(PosExact a, const PosExact& b) { return a *= b.inverse(); }

    PosExact inverse() const { return pow(Rational(-1)); }

    PosExact pow(const Rational& r) const {
        PosExact out;
        if (r == 0) return out;
        for (const auto& [p, e] : factors_) out.factors_.emplace(p, e * r);
        return out;
    }

    friend bool operator==(const PosExact& a, const PosExact& b) { return a.factors_ == b.factors_; }

    /// Exact order: raise a/b to the lcm of exponent denominators and compare
    /// the resulting rational with 1.
    friend std::strong_ordering operator<=>(const PosExact& a, const PosExact& b) {
        const PosExact q = a / b;
        if (q.is_one()) return std::strong_ordering::equal;
        BigInt l = 1;
        for (const auto& [p, e] : q.factors_) l = detail::lcm(l, boost::multiprecision::denominator(e));
        BigInt num = 1, den = 1;
        for (const auto& [p, e] : q.factors_) {
            const Rational scaled = e * Rational(l);
            const BigInt k = boost::multiprecision::numerator(scaled);
            if (boost::multiprecision::abs(k) > 1'000'000)
                throw std::domain_error("PosExact comparison exponent out of range");
            const auto ku = boost::multiprecision::abs(k).convert_to<unsigned>();
            const BigInt pk = boost::multiprecision::pow(BigInt(p), ku);
            if (k > 0) num *= pk;
            else den *= pk;
        }
        return num < den ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    /// Correctly rounded to precision_bits (computed with 64 guard bits).
    BigFloat to_float(unsigned precision_bits) const {
        if (precision_bits < 24) throw std::invalid_argument("to_float requires at least 24 bits of precision");
        const auto work = static_cast<mpfr_prec_t>(precision_bits + 64);
        mpfr_t acc, term;
        mpfr_init2(acc, work);
        mpfr_init2(term, work);
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        for (const auto& [p, e] : factors_) {
            mpfr_set_ui(term, static_cast<unsigned long>(p), MPFR_RNDN);
            mpfr_log(term, term, MPFR_RNDN);
            mpfr_mul_q(term, term, e.backend().data(), MPFR_RNDN);
            mpfr_add(acc, acc, term, MPFR_RNDN);
        }
        mpfr_exp(acc, acc, MPFR_RNDN);
        BigFloat out(precision_bits);
        mpfr_set(out.get(), acc, MPFR_RNDN);
        mpfr_clear(acc);
        mpfr_clear(term);
        return out;
    }

    double to_double() const { return to_float(64).to_double(); }

    std::string approx(unsigned precision_bits) const { return to_float(precision_bits).to_string(decimal_digits(precision_bits)); }

    /// e.g. "2^(-1/2) * 3"
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string out;
        for (const auto& [p, e] : factors_) {
            if (!out.empty()) out += " * ";
            out += std::to_string(p);
            if (e != 1) out += denominator(e) == 1 && e > 0 ? "^" + mirror_morse::to_string(e) : "^(" + mirror_morse::to_string(e) + ")";
        }
        return out;
    }

private:
    friend class LogExact;
    FactorMap factors_;
};

/// A formal signed combination  sum_p q_p log p ; the logarithm of a PosExact.
class LogExact {
public:
    LogExact() = default;
    explicit LogExact(const PosExact& value) : exp_(value) {}

    const PosExact::FactorMap& coefficients() const { return exp_.factors_; }
    bool is_zero() const { return exp_.is_one(); }

    /// Sign of the real number the combination denotes.
    int sign() const {
        const auto c = exp_ <=> PosExact{};
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }

    PosExact exp() const { return exp_; }

    double to_double() const {
        double s = 0.0;
        for (const auto& [p, e] : exp_.factors_) s += mirror_morse::to_double(e) * std::log(static_cast<double>(p));
        return s;
    }

    LogExact operator-() const { return LogExact(exp_.inverse()); }
    LogExact& operator+=(const LogExact& o) {
        exp_ *= o.exp_;
        return *this;
    }
    friend LogExact operator+(LogExact a, const LogExact& b) { return a += b; }
    friend LogExact operator-(LogExact a, const LogExact& b) { return a += -b; }
    friend LogExact operator*(const Rational& r, const LogExact& a) { return LogExact(a.exp_.pow(r)); }
    friend bool operator==(const LogExact& a, const LogExact& b) { return a.exp_ == b.exp_; }
    friend std::strong_ordering operator<=>(const LogExact& a, const LogExact& b) { return a.exp_ <=> b.exp_; }

    /// e.g. "3/2 log 2 - log 3"
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [p, e] : exp_.factors_) {
            const bool neg = e < 0;
            const Rational mag = neg ? Rational(-e) : e;
            if (out.empty()) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            if (mag != 1) out += mirror_morse::to_string(mag) + " ";
            out += "log " + std::to_string(p);
        }
        return out;
    }

private:
    PosExact exp_;
};

inline LogExact log(const PosExact& a) { return LogExact(a); }

}  // namespace mirror_morse
