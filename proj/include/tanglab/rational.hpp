#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tanglab {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as raw constructions go through rat().
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num/den" or a bare integer string.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational string");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational string: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

// Canonical wire form "num/den", den > 0, lowest terms.
inline std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign_of(const Rational& q) { return sgn(q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Largest rational of the form floor(sqrt(num*den))/den, guaranteed to
// satisfy result^2 <= q. Used to turn squared-distance bounds into usable
// radii without leaving the rationals.
inline Rational rat_sqrt_under(const Rational& q) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    mpz_class prod = q.get_num() * q.get_den();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    Rational r(root, q.get_den());
    r.canonicalize();
    return r;
}

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace tanglab
