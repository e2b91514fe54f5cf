#pragma once

#include <optional>

#include "otlck/poly.hpp"
#include "otlck/rational.hpp"

namespace otlck {

// Closed interval with exact rational endpoints. Arithmetic is exact,
// so an interval computed from enclosures of inputs encloses the true
// value with no rounding step to account for. Endpoint bit growth is
// controlled explicitly via round_outward.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static RatInterval point(const Rat& v) { return {v, v}; }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
    bool is_point() const { return lo == hi; }
    bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    // Sign if certain: -1, 0 (only for the point 0), +1; nullopt if the
    // interval straddles zero with nonzero width.
    std::optional<int> certain_sign() const;

    RatInterval round_outward(long bits) const {
        return {dyadic_floor(lo, bits), dyadic_ceil(hi, bits)};
    }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const Rat& s, const RatInterval& a);

// [min |x|, max |x|] over x in a.
RatInterval abs_interval(const RatInterval& a);
// Enclosure of x^2 (tight: lower bound 0 when a straddles zero).
RatInterval square(const RatInterval& a);
// a / b where b excludes zero.
RatInterval divide(const RatInterval& a, const RatInterval& b);

// Interval Horner evaluation.
RatInterval interval_eval(const QPoly& p, const RatInterval& x);

// Axis-aligned rectangle enclosing a complex value.
struct ComplexBox {
    RatInterval re, im;

    ComplexBox() = default;
    ComplexBox(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexBox point(const Rat& r, const Rat& i) {
        return {RatInterval::point(r), RatInterval::point(i)};
    }

    ComplexBox conj() const { return {re, -im}; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool intersects(const ComplexBox& o) const {
        return re.intersects(o.re) && im.intersects(o.im);
    }
    Rat max_halfwidth() const;
    ComplexBox round_outward(long bits) const {
        return {re.round_outward(bits), im.round_outward(bits)};
    }
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);

// |z|^2 = re^2 + im^2 as a real interval.
RatInterval abs_sq(const ComplexBox& z);
// a / b where 0 is excluded from b (abs_sq(b) has positive lower bound).
ComplexBox divide(const ComplexBox& a, const ComplexBox& b);

ComplexBox interval_eval(const QPoly& p, const ComplexBox& z);

// Enclosure of log(x) for an interval with lo > 0, computed with
// directed rounding at the given working precision. This is the only
// place the library touches non-rational arithmetic; the result is
// converted back to exact rational bounds.
RatInterval log_enclosure(const RatInterval& positive, long precision_bits);

} // namespace otlck
