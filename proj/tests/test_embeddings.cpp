#include <doctest.h>

#include "otlck/embeddings.hpp"
#include "support/oracles.hpp"

using namespace otlck;

namespace {

QPoly qp(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return QPoly(std::move(c));
}

FieldPtr cubic() { return NumberField::create(qp({-1, -1, 0, 1})); }
FieldPtr quintic() { return NumberField::create(qp({-1, -1, 0, 0, 0, 1})); }
FieldPtr sextic() { return NumberField::create(qp({-1, 0, -1, 0, 0, 0, 1})); }

// The certified interval must meet a small window around the oracle's
// double-precision approximation (window far below the separation of the
// values being distinguished, far above the oracle's own error).
bool encloses(const RatInterval& x, double v) {
    Rat approx(static_cast<long>(v * 1e12), 1000000000000L);
    Rat tol(1, 1000000);
    return x.lo <= approx + tol && approx - tol <= x.hi;
}

} // namespace

TEST_CASE("cubic field: one real embedding, one conjugate pair") {
    EmbeddingSet emb = EmbeddingSet::isolate(cubic(), 128);
    CHECK(emb.real_count() == 1);
    CHECK(emb.pair_count() == 1);
    CHECK(emb.size() == 3);
    RatInterval rho = emb.real_root(0, 128);
    // frozen oracle: 1.3247179572447454
    CHECK(rho.lo >= Rat(13247, 10000));
    CHECK(rho.hi <= Rat(13248, 10000));
    CHECK(rho.width() <= pow2(-128));
    ComplexBox z = emb.upper_root(0, 128);
    CHECK(z.im.lo > 0);
    // complex pair at -0.6623589786 +- 0.5622795121 i
    CHECK(z.re.lo <= Rat(-6623, 10000));
    CHECK(z.re.hi >= Rat(-6624, 10000));
    CHECK(z.im.lo <= Rat(5623, 10000));
    CHECK(z.im.hi >= Rat(5622, 10000));
}

TEST_CASE("quintic field: moduli of the two pairs are well separated") {
    EmbeddingSet emb = EmbeddingSet::isolate(quintic(), 128);
    CHECK(emb.real_count() == 1);
    CHECK(emb.pair_count() == 2);
    FieldElement x = FieldElement::generator(emb.field());
    // frozen oracles: real root 1.1673039782614187,
    // pair moduli 0.8421902323860583 and 1.0990003151464574 (sorted by re)
    RatInterval r = emb.real_root(0, 128);
    CHECK(r.lo >= Rat(11673, 10000));
    CHECK(r.hi <= Rat(11674, 10000));
    RatInterval m2 = emb.evaluate_abs_sq(x, 2, 128);
    RatInterval m3 = emb.evaluate_abs_sq(x, 3, 128);
    // 0.8421902323860583^2 = 0.70928438...
    CHECK(m2.lo >= Rat(70, 100));
    CHECK(m2.hi <= Rat(71, 100));
    // 1.0990003151464574^2 = 1.20780169...
    CHECK(m3.lo >= Rat(120, 100));
    CHECK(m3.hi <= Rat(121, 100));
    // cross-check against the Durand-Kerner oracle
    auto moduli = oracle::upper_half_moduli({-1, -1, 0, 0, 0, 1});
    REQUIRE(moduli.size() == 2);
    CHECK(encloses(emb.evaluate_abs_sq(x, 2, 64), moduli[0] * moduli[0]));
    CHECK(encloses(emb.evaluate_abs_sq(x, 3, 64), moduli[1] * moduli[1]));
}

TEST_CASE("evaluation respects conjugation and index conventions") {
    EmbeddingSet emb = EmbeddingSet::isolate(quintic(), 96);
    FieldElement x = FieldElement::generator(emb.field());
    ComplexBox up = emb.evaluate(x, 2, 96);
    ComplexBox dn = emb.evaluate(x, 4, 96); // conjugate partner of index 2
    CHECK(up.re.lo == dn.re.lo);
    CHECK(up.re.hi == dn.re.hi);
    CHECK(up.im.lo == -dn.im.hi);
    CHECK(up.im.hi == -dn.im.lo);
    ComplexBox real_im = emb.evaluate(x, 1, 96);
    CHECK(real_im.im.lo == 0);
    CHECK(real_im.im.hi == 0);
    CHECK_THROWS_AS(emb.evaluate(x, 0, 96), error);
    CHECK_THROWS_AS(emb.evaluate(x, 6, 96), error);
}

TEST_CASE("evaluation is compatible with field arithmetic") {
    EmbeddingSet emb = EmbeddingSet::isolate(cubic(), 128);
    FieldPtr f = emb.field();
    FieldElement x = FieldElement::generator(f);
    FieldElement a = x * x - FieldElement::one(f);
    for (int idx = 1; idx <= 3; ++idx) {
        ComplexBox va = emb.evaluate(a, idx, 100);
        ComplexBox vx = emb.evaluate(x, idx, 100);
        ComplexBox vxx = vx * vx - ComplexBox::point(Rat(1), Rat(0));
        CHECK(va.re.intersects(vxx.re));
        CHECK(va.im.intersects(vxx.im));
    }
    // product over all three embeddings of |x|^2 equals norm(x)^2 = 1
    RatInterval prod = emb.evaluate_abs_sq(x, 1, 128);
    for (int idx = 2; idx <= 3; ++idx) prod = prod * emb.evaluate_abs_sq(x, idx, 128);
    CHECK(prod.contains(Rat(1))); // |N(x)|^2 with N(x) = 1
}

TEST_CASE("requested widths are honored") {
    EmbeddingSet emb = EmbeddingSet::isolate(cubic(), 64);
    FieldElement x = FieldElement::generator(emb.field());
    for (long bits : {64L, 200L, 400L}) {
        RatInterval r = emb.real_root(0, bits);
        CHECK(r.width() <= pow2(-bits));
        ComplexBox z = emb.evaluate(x, 2, bits);
        CHECK(z.max_halfwidth() * 2 <= pow2(-bits));
    }
}

TEST_CASE("total sign decision at real embeddings") {
    EmbeddingSet emb = EmbeddingSet::isolate(sextic(), 128);
    FieldPtr f = emb.field();
    FieldElement x = FieldElement::generator(f);
    // real roots of x^6 - x^2 - 1 are +-1.150969538698... (sorted ascending)
    CHECK(emb.sign_at(x, 1) == -1);
    CHECK(emb.sign_at(x, 2) == 1);
    CHECK(emb.sign_at(x * x, 1) == 1);
    CHECK(emb.sign_at(x * x, 2) == 1);
    CHECK(emb.sign_at(FieldElement::zero(f), 1) == 0);
    CHECK(emb.sign_at(FieldElement::from_rational(f, Rat(-3)), 2) == -1);
    CHECK_THROWS_AS(emb.sign_at(x, 3), error); // complex index
}

TEST_CASE("isolation at higher target precision is consistent") {
    EmbeddingSet lo = EmbeddingSet::isolate(quintic(), 64);
    EmbeddingSet hi = EmbeddingSet::isolate(quintic(), 512);
    RatInterval a = lo.real_root(0, 64);
    RatInterval b = hi.real_root(0, 512);
    CHECK(a.lo <= b.lo);
    CHECK(b.hi <= a.hi);
    CHECK(b.width() <= pow2(-512));
}
