#include "otlck/interval.hpp"

#include <mpfr.h>

#include <algorithm>

namespace otlck {

std::optional<int> RatInterval::certain_sign() const {
    if (sign(lo) > 0) return 1;
    if (sign(hi) < 0) return -1;
    if (sign(lo) == 0 && sign(hi) == 0) return 0;
    return std::nullopt;
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return {lo, hi};
}

RatInterval operator*(const Rat& s, const RatInterval& a) {
    if (sign(s) >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

RatInterval abs_interval(const RatInterval& a) {
    if (sign(a.lo) >= 0) return a;
    if (sign(a.hi) <= 0) return -a;
    Rat neg_lo = -a.lo;
    return {Rat(0), std::max(neg_lo, a.hi)};
}

RatInterval square(const RatInterval& a) {
    RatInterval m = abs_interval(a);
    return {m.lo * m.lo, m.hi * m.hi};
}

RatInterval divide(const RatInterval& a, const RatInterval& b) {
    if (b.contains_zero()) fail(errc::zero_element, "interval division by an interval containing 0");
    Rat r1 = a.lo / b.lo, r2 = a.lo / b.hi, r3 = a.hi / b.lo, r4 = a.hi / b.hi;
    Rat lo = std::min(std::min(r1, r2), std::min(r3, r4));
    Rat hi = std::max(std::max(r1, r2), std::max(r3, r4));
    return {lo, hi};
}

RatInterval interval_eval(const QPoly& p, const RatInterval& x) {
    RatInterval acc; // [0, 0]
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * x + RatInterval::point(*it);
    return acc;
}

Rat ComplexBox::max_halfwidth() const {
    return std::max(re.width(), im.width()) / 2;
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RatInterval abs_sq(const ComplexBox& z) { return square(z.re) + square(z.im); }

ComplexBox divide(const ComplexBox& a, const ComplexBox& b) {
    RatInterval d = abs_sq(b);
    if (d.contains_zero()) fail(errc::zero_element, "complex interval division by a box containing 0");
    ComplexBox num = a * b.conj();
    return {divide(num.re, d), divide(num.im, d)};
}

ComplexBox interval_eval(const QPoly& p, const ComplexBox& z) {
    ComplexBox acc; // 0
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = acc * z;
        acc.re = acc.re + RatInterval::point(*it);
    }
    return acc;
}

RatInterval log_enclosure(const RatInterval& x, long precision_bits) {
    if (sign(x.lo) <= 0)
        fail(errc::zero_element, "log enclosure requires a strictly positive interval");
    long prec = std::max(precision_bits + 32, 64L);
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, x.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_set_q(hi, x.hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi, hi, MPFR_RNDU);
    Rat rlo, rhi;
    mpfr_get_q(rlo.get_mpq_t(), lo);
    mpfr_get_q(rhi.get_mpq_t(), hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    rlo.canonicalize();
    rhi.canonicalize();
    return {rlo, rhi};
}

} // namespace otlck
