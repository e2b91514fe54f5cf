#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "otlck/errors.hpp"

namespace otlck {

// Exact arbitrary-precision integers and rationals. GMP keeps mpq_class
// values normalized (reduced, positive denominator) after every operation,
// which is the representation invariant the decision procedures rely on.
using Int = mpz_class;
using Rat = mpq_class;

inline int sign(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
inline int sign(const Int& z) { return mpz_sgn(z.get_mpz_t()); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (sign(base) == 0) fail(errc::zero_element, "0 has no negative power");
        r = Rat(1) / r;
    }
    r.canonicalize();
    return r;
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2(long e) {
    Rat r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}

// Largest dyadic k/2^bits <= x (floor) or >= x (ceil). Used to round
// interval endpoints outward so their bit size stays proportional to the
// requested precision instead of doubling at every Newton step.
inline Rat dyadic_floor(const Rat& x, long bits) {
    Int scaled_num = x.get_num();
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), static_cast<unsigned long>(bits));
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q);
    return r / pow2(bits);
}

inline Rat dyadic_ceil(const Rat& x, long bits) {
    Int scaled_num = x.get_num();
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), static_cast<unsigned long>(bits));
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q);
    return r / pow2(bits);
}

// ceil(log2(x)) for x > 0, as a long. Exact (no floating point).
long ceil_log2(const Rat& x);

// Strict parser for "p" or "p/q" with optional leading minus, decimal
// digits only. Rejects everything else (floats, signs on q, q = 0).
Rat parse_rational(std::string_view text);

// "p" or "p/q", canonical form.
std::string to_string(const Rat& q);

// Deterministic decimal rendering with the given number of significant
// digits, round-to-nearest (ties away from zero). Reports only; inputs
// stay exact end to end.
std::string decimal_string(const Rat& q, int significant_digits);

} // namespace otlck
