#pragma once

#include <utility>
#include <vector>

#include "otlck/rational.hpp"

namespace otlck {

// Dense univariate polynomials, coefficients ascending by degree.
// The zero polynomial is the empty coefficient vector; otherwise the
// leading coefficient is nonzero. All arithmetic is exact.

struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const Int& lc() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    ZPoly derivative() const;

    bool operator==(const ZPoly& o) const { return c == o.c; }
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a);

// gcd of coefficient absolute values; 0 for the zero polynomial.
Int content(const ZPoly& p);
// p divided by its content, leading coefficient made positive.
ZPoly primitive_part(const ZPoly& p);
// Largest squarefree divisor: p / gcd(p, p'), primitive.
ZPoly squarefree_part(const ZPoly& p);
// Primitive-PRS gcd, result primitive with positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

// Resultant via fraction-free (Bareiss) elimination of the Sylvester
// matrix. Exact; fine at the degrees this library works with.
Int resultant(const ZPoly& a, const ZPoly& b);

// Given monic g with g(0) != 0, the monic integer polynomial of degree
// (deg g)^2 whose roots are all pairwise products of roots of g:
//   Res_y(g(y), y^m g(x/y)).
// Computed by interpolation at integer points.
ZPoly pair_product_poly(const ZPoly& g);

// l2 norm bound ceil(sqrt(sum c_i^2)) as an integer.
Int l2_norm_upper(const ZPoly& p);

struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& v) {
        QPoly p;
        if (sign(v) != 0) p.c = {v};
        return p;
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool integer_coeffs() const;

    void trim() {
        while (!c.empty() && sign(c.back()) == 0) c.pop_back();
    }

    Rat eval(const Rat& x) const;
    QPoly derivative() const;

    bool operator==(const QPoly& o) const { return c == o.c; }
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rat& s, const QPoly& a);
QPoly operator-(const QPoly& a);

// Euclidean division, b != 0; returns (quotient, remainder).
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
// Monic gcd over Q.
QPoly gcd(const QPoly& a, const QPoly& b);

// Scale by the lcm of denominators and the content: primitive integer
// polynomial with the same roots, positive leading coefficient.
ZPoly to_primitive_z(const QPoly& p);
QPoly to_q(const ZPoly& p);

// 1 + max |c_i| / |lc|; every complex root has modulus below this.
Rat cauchy_root_bound(const QPoly& p);

// Sturm chain of a squarefree integer polynomial. Chain members are
// kept primitive (divided by positive content), which preserves the
// sign-variation property.
class SturmChain {
  public:
    explicit SturmChain(const ZPoly& squarefree);

    // Number of distinct real roots in (lo, hi]; requires p(lo) != 0.
    int count_roots(const Rat& lo, const Rat& hi) const;
    int count_real_roots() const;

    int variations_at(const Rat& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;

    const ZPoly& poly() const { return chain_.front(); }

  private:
    std::vector<ZPoly> chain_;
};

// Exact real-root count by Sturm, then t = (deg - s) / 2.
// Throws not_squarefree when gcd(p, p') is nonconstant.
std::pair<int, int> signature_of(const QPoly& p);

// Isolation by Sturm bisection: disjoint (lo, hi) intervals, ascending,
// one real root each, covering every real root of the chain's polynomial.
// Endpoints are dyadic non-roots, except that a root hit exactly during
// bisection is returned as a degenerate point interval lo == hi.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const SturmChain& chain);

} // namespace otlck
