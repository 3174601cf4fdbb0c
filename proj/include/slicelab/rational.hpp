#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace slicelab {

/// Exact rational scalar. All geometry in this project is done in exact
/// arithmetic; floating point appears only in report approximations.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" (no whitespace, no decimals).
inline Rational parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find_first_not_of("-0123456789/") != std::string::npos)
        throw std::invalid_argument("bad rational literal: " + s);
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

/// Decimal approximation for human-readable report fields only.
inline std::string rat_approx(const Rational& r, int sig_digits = 20) {
    if (r == 0) return "0";
    mpf_class f(r, 256);
    mp_exp_t exp;
    std::string digits = f.get_str(exp, 10, static_cast<size_t>(sig_digits));
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exp - 1);
    return out;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

/// Largest rational r = p/2^k with r*r <= x, refined to `bits` fractional bits.
/// Used to under-approximate square roots when splitting an l2 budget;
/// all feasibility checks are still done on exact squares.
inline Rational rat_sqrt_lower(const Rational& x, unsigned bits = 32) {
    if (x < 0) throw std::invalid_argument("sqrt of negative");
    if (x == 0) return Rational(0);
    BigInt scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 2 * bits);
    BigInt scaled_num = x.get_num() * scale;
    BigInt q = scaled_num / x.get_den();
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
    BigInt den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    Rational r(root, den);
    r.canonicalize();
    return r;
}

}  // namespace slicelab
