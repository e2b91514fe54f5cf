#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "otlck/interval.hpp"
#include "otlck/numfield.hpp"

namespace otlck {

// Certified root enclosures for the defining polynomial of K, labeled
// the standard way: sigma_1..sigma_s real ascending, sigma_{s+1}..
// sigma_{s+t} in the upper half plane sorted by (re.lo, im.lo), and
// sigma_{s+t+k} the conjugate of sigma_{s+k}.
//
// Real enclosures are isolated by Sturm bisection; complex boxes are
// seeded by floating-point simultaneous iteration (untrusted) and then
// certified by an interval-Newton contraction in exact rational
// arithmetic (trusted). Refinement only ever shrinks an enclosure.
class EmbeddingSet {
  public:
    // Isolate all roots and refine to width <= 2^-precision_bits.
    // Escalates internal working precision, doubling from 64 bits up to
    // max_bits; a certification that still fails there raises
    // precision_exhausted rather than returning anything uncertified.
    static EmbeddingSet isolate(FieldPtr field, long precision_bits,
                                long max_bits = 16384);

    const FieldPtr& field() const { return field_; }
    int real_count() const;   // s
    int pair_count() const;   // t
    int size() const;         // s + 2t = n

    // Current enclosure of the k-th real root (0-based) refined to the
    // requested width. Refinements are cached and nested.
    RatInterval real_root(int k, long precision_bits) const;
    // Upper-half-plane box of the k-th complex pair (0-based).
    ComplexBox upper_root(int k, long precision_bits) const;

    // Enclosure of sigma_index(a), index 1-based in 1..s+2t. Real
    // indices yield a box with exact zero imaginary part; conjugate
    // indices are exact mirrors of their partners.
    ComplexBox evaluate(const FieldElement& a, int index, long precision_bits) const;
    // |sigma_index(a)|^2, valid for any index.
    RatInterval evaluate_abs_sq(const FieldElement& a, int index, long precision_bits) const;

    // Exact sign of sigma_index(a) for a real index. Total: refines
    // until zero is excluded, or detects sigma_index(a) = 0 exactly via
    // gcd(f, representative) having its root in this enclosure.
    int sign_at(const FieldElement& a, int index) const;

    long max_precision_bits() const;

  private:
    EmbeddingSet() = default;

    struct Impl;
    FieldPtr field_;
    std::shared_ptr<Impl> impl_;
};

// Exact signature (s, t) of a squarefree polynomial by Sturm counts.
std::pair<int, int> signature(const QPoly& p);

} // namespace otlck
