#include "otlck/embeddings.hpp"

#include <mpfr.h>

#include <algorithm>
#include <mutex>
#include <optional>
#include <vector>

namespace otlck {

namespace {

// ---------------------------------------------------------------------
// Untrusted seeding: Aberth-Ehrlich simultaneous iteration in MPFR
// floating point (round-to-nearest, no error control). Results are only
// hints; everything that matters is re-established by the exact
// interval-Newton certification below.
// ---------------------------------------------------------------------

struct MpfrVec {
    std::vector<__mpfr_struct> v;
    MpfrVec(size_t n, mpfr_prec_t p) : v(n) {
        for (auto& x : v) mpfr_init2(&x, p);
    }
    ~MpfrVec() {
        for (auto& x : v) mpfr_clear(&x);
    }
    MpfrVec(const MpfrVec&) = delete;
    MpfrVec& operator=(const MpfrVec&) = delete;
    mpfr_ptr operator[](size_t i) { return &v[i]; }
};

struct Scratch {
    mpfr_t t1, t2, t3, t4, t5, t6;
    explicit Scratch(mpfr_prec_t p) {
        mpfr_init2(t1, p);
        mpfr_init2(t2, p);
        mpfr_init2(t3, p);
        mpfr_init2(t4, p);
        mpfr_init2(t5, p);
        mpfr_init2(t6, p);
    }
    ~Scratch() {
        mpfr_clear(t1);
        mpfr_clear(t2);
        mpfr_clear(t3);
        mpfr_clear(t4);
        mpfr_clear(t5);
        mpfr_clear(t6);
    }
};

// (or, oi) = (ar, ai) * (br, bi); outputs must not alias inputs
void cmul(mpfr_ptr orr, mpfr_ptr oi, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
          mpfr_srcptr bi, Scratch& w) {
    mpfr_mul(w.t1, ar, br, MPFR_RNDN);
    mpfr_mul(w.t2, ai, bi, MPFR_RNDN);
    mpfr_sub(orr, w.t1, w.t2, MPFR_RNDN);
    mpfr_mul(w.t1, ar, bi, MPFR_RNDN);
    mpfr_mul(w.t2, ai, br, MPFR_RNDN);
    mpfr_add(oi, w.t1, w.t2, MPFR_RNDN);
}

// (or, oi) = (ar, ai) / (br, bi); outputs must not alias inputs
void cdiv(mpfr_ptr orr, mpfr_ptr oi, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
          mpfr_srcptr bi, Scratch& w) {
    mpfr_mul(w.t3, br, br, MPFR_RNDN);
    mpfr_mul(w.t4, bi, bi, MPFR_RNDN);
    mpfr_add(w.t3, w.t3, w.t4, MPFR_RNDN); // |b|^2
    mpfr_mul(w.t1, ar, br, MPFR_RNDN);
    mpfr_mul(w.t2, ai, bi, MPFR_RNDN);
    mpfr_add(w.t1, w.t1, w.t2, MPFR_RNDN);
    mpfr_div(orr, w.t1, w.t3, MPFR_RNDN);
    mpfr_mul(w.t1, ai, br, MPFR_RNDN);
    mpfr_mul(w.t2, ar, bi, MPFR_RNDN);
    mpfr_sub(w.t1, w.t1, w.t2, MPFR_RNDN);
    mpfr_div(oi, w.t1, w.t3, MPFR_RNDN);
}

struct Seed {
    Rat re, im;
    Rat step; // coarse bound on the last correction, sizes the first box
};

// All-root simultaneous iteration at working precision prec. Returns
// false on non-convergence; the caller escalates.
bool aberth_seeds(const QPoly& f, long prec, std::vector<Seed>& out) {
    const int n = f.degree();
    if (n < 1) return false;
    MpfrVec cr(static_cast<size_t>(n) + 1, prec);
    for (int k = 0; k <= n; ++k) {
        Rat c = f.c[static_cast<size_t>(k)] / f.lc();
        mpfr_set_q(cr[static_cast<size_t>(k)], c.get_mpq_t(), MPFR_RNDN);
    }
    MpfrVec zr(static_cast<size_t>(n), prec), zi(static_cast<size_t>(n), prec);
    MpfrVec wr(static_cast<size_t>(n), prec), wi(static_cast<size_t>(n), prec);
    Scratch w(prec);
    mpfr_t pr, pi, dr, di, nr, ni, sr, si, ur, ui;
    mpfr_inits2(prec, pr, pi, dr, di, nr, ni, sr, si, ur, ui, static_cast<mpfr_ptr>(nullptr));

    // initial guesses on a circle just outside the root bound, angles
    // offset so no guess starts on the real axis
    Rat bound = cauchy_root_bound(f);
    mpfr_set_q(w.t1, bound.get_mpq_t(), MPFR_RNDN);
    mpfr_t pi_const, theta;
    mpfr_init2(pi_const, prec);
    mpfr_init2(theta, prec);
    mpfr_const_pi(pi_const, MPFR_RNDN);
    for (int j = 0; j < n; ++j) {
        // theta = pi * (2j + 0.5 + 1/(n+2)) / n
        mpfr_set_ui(theta, 4UL * static_cast<unsigned long>(j) + 1UL, MPFR_RNDN);
        mpfr_div_ui(theta, theta, 2, MPFR_RNDN);
        mpfr_set_ui(w.t2, 1, MPFR_RNDN);
        mpfr_div_ui(w.t2, w.t2, static_cast<unsigned long>(n) + 2, MPFR_RNDN);
        mpfr_add(theta, theta, w.t2, MPFR_RNDN);
        mpfr_mul(theta, theta, pi_const, MPFR_RNDN);
        mpfr_div_ui(theta, theta, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_cos(w.t3, theta, MPFR_RNDN);
        mpfr_sin(w.t4, theta, MPFR_RNDN);
        mpfr_mul(zr[static_cast<size_t>(j)], w.t3, w.t1, MPFR_RNDN);
        mpfr_mul(zi[static_cast<size_t>(j)], w.t4, w.t1, MPFR_RNDN);
    }
    mpfr_clear(pi_const);
    mpfr_clear(theta);

    const long max_sweeps = 200 + 2 * prec;
    bool converged = false;
    for (long sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            size_t si_ = static_cast<size_t>(i);
            // Horner for p and p' at z_i
            mpfr_set(pr, cr[static_cast<size_t>(n)], MPFR_RNDN);
            mpfr_set_ui(pi, 0, MPFR_RNDN);
            mpfr_set_ui(dr, 0, MPFR_RNDN);
            mpfr_set_ui(di, 0, MPFR_RNDN);
            for (int k = n - 1; k >= 0; --k) {
                cmul(w.t5, w.t6, dr, di, zr[si_], zi[si_], w);
                mpfr_add(dr, w.t5, pr, MPFR_RNDN);
                mpfr_set(di, w.t6, MPFR_RNDN);
                mpfr_add(di, di, pi, MPFR_RNDN);
                cmul(w.t5, w.t6, pr, pi, zr[si_], zi[si_], w);
                mpfr_add(pr, w.t5, cr[static_cast<size_t>(k)], MPFR_RNDN);
                mpfr_set(pi, w.t6, MPFR_RNDN);
            }
            if (!mpfr_number_p(pr) || !mpfr_number_p(pi)) goto bail;
            if (mpfr_zero_p(pr) && mpfr_zero_p(pi)) {
                mpfr_set_ui(wr[si_], 0, MPFR_RNDN);
                mpfr_set_ui(wi[si_], 0, MPFR_RNDN);
                continue;
            }
            if (mpfr_zero_p(dr) && mpfr_zero_p(di)) goto bail;
            cdiv(nr, ni, pr, pi, dr, di, w); // Newton correction p/p'
            // S = sum_{j != i} 1 / (z_i - z_j)
            mpfr_set_ui(sr, 0, MPFR_RNDN);
            mpfr_set_ui(si, 0, MPFR_RNDN);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                mpfr_sub(w.t5, zr[si_], zr[static_cast<size_t>(j)], MPFR_RNDN);
                mpfr_sub(w.t6, zi[si_], zi[static_cast<size_t>(j)], MPFR_RNDN);
                if (mpfr_zero_p(w.t5) && mpfr_zero_p(w.t6)) goto bail; // collision
                // 1 / (t5 + i t6) = (t5 - i t6) / (t5^2 + t6^2)
                mpfr_mul(w.t1, w.t5, w.t5, MPFR_RNDN);
                mpfr_mul(w.t2, w.t6, w.t6, MPFR_RNDN);
                mpfr_add(w.t1, w.t1, w.t2, MPFR_RNDN);
                mpfr_div(ur, w.t5, w.t1, MPFR_RNDN);
                mpfr_div(ui, w.t6, w.t1, MPFR_RNDN);
                mpfr_neg(ui, ui, MPFR_RNDN);
                mpfr_add(sr, sr, ur, MPFR_RNDN);
                mpfr_add(si, si, ui, MPFR_RNDN);
            }
            // w = N / (1 - N S)
            cmul(ur, ui, nr, ni, sr, si, w);
            mpfr_ui_sub(ur, 1, ur, MPFR_RNDN);
            mpfr_neg(ui, ui, MPFR_RNDN);
            if (mpfr_zero_p(ur) && mpfr_zero_p(ui)) {
                mpfr_set(wr[si_], nr, MPFR_RNDN);
                mpfr_set(wi[si_], ni, MPFR_RNDN);
            } else {
                cdiv(wr[si_], wi[si_], nr, ni, ur, ui, w);
            }
            if (!mpfr_number_p(wr[si_]) || !mpfr_number_p(wi[si_])) goto bail;
            mpfr_sub(zr[si_], zr[si_], wr[si_], MPFR_RNDN);
            mpfr_sub(zi[si_], zi[si_], wi[si_], MPFR_RNDN);
            // relative convergence: max(|w|) <= (1 + max(|z|)) * 2^-(prec-8)
            mpfr_abs(w.t5, wr[si_], MPFR_RNDN);
            mpfr_abs(w.t6, wi[si_], MPFR_RNDN);
            mpfr_max(w.t5, w.t5, w.t6, MPFR_RNDN);
            mpfr_abs(w.t6, zr[si_], MPFR_RNDN);
            mpfr_abs(ur, zi[si_], MPFR_RNDN);
            mpfr_max(w.t6, w.t6, ur, MPFR_RNDN);
            mpfr_add_ui(w.t6, w.t6, 1, MPFR_RNDN);
            mpfr_mul_2si(w.t6, w.t6, -(prec - 8), MPFR_RNDN);
            if (mpfr_cmp(w.t5, w.t6) > 0) converged = false;
        }
    }
    if (!converged) goto bail;

    out.clear();
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        size_t si_ = static_cast<size_t>(i);
        Seed s;
        mpfr_get_q(s.re.get_mpq_t(), zr[si_]);
        mpfr_get_q(s.im.get_mpq_t(), zi[si_]);
        s.re.canonicalize();
        s.im.canonicalize();
        // last correction plus a few ulps of the value itself
        mpfr_abs(w.t5, wr[si_], MPFR_RNDU);
        mpfr_abs(w.t6, wi[si_], MPFR_RNDU);
        mpfr_add(w.t5, w.t5, w.t6, MPFR_RNDU);
        Rat corr;
        mpfr_get_q(corr.get_mpq_t(), w.t5);
        corr.canonicalize();
        Rat scale = Rat(1) + abs(s.re) + abs(s.im);
        s.step = corr + scale * pow2(-(prec - 8));
        out.push_back(std::move(s));
    }
    mpfr_clears(pr, pi, dr, di, nr, ni, sr, si, ur, ui, static_cast<mpfr_ptr>(nullptr));
    return true;

bail:
    mpfr_clears(pr, pi, dr, di, nr, ni, sr, si, ur, ui, static_cast<mpfr_ptr>(nullptr));
    return false;
}

// ---------------------------------------------------------------------
// Trusted side: exact interval-Newton certification and refinement.
// ---------------------------------------------------------------------

bool strictly_inside(const RatInterval& a, const RatInterval& b) {
    return b.lo < a.lo && a.hi < b.hi;
}

std::optional<ComplexBox> intersect(const ComplexBox& a, const ComplexBox& b) {
    Rat rlo = std::max(a.re.lo, b.re.lo), rhi = std::min(a.re.hi, b.re.hi);
    Rat ilo = std::max(a.im.lo, b.im.lo), ihi = std::min(a.im.hi, b.im.hi);
    if (rlo > rhi || ilo > ihi) return std::nullopt;
    return ComplexBox{{rlo, rhi}, {ilo, ihi}};
}

// Newton operator K(X) = m - f(m) / f'(X); K(X) strictly inside X proves
// existence and uniqueness of a root in X, and the root lies in K.
std::optional<ComplexBox> certify_box(const QPoly& f, const QPoly& df, const Seed& seed) {
    if (sign(seed.im) <= 0) return std::nullopt;
    Rat r0 = seed.step * 4;
    if (sign(r0) == 0) r0 = pow2(-64);
    for (int growth = 0; growth < 3; ++growth) {
        Rat r = r0 * pow_rat(Rat(8), growth);
        ComplexBox X{{seed.re - r, seed.re + r}, {seed.im - r, seed.im + r}};
        if (sign(X.im.lo) <= 0) continue;
        bool good = false;
        for (int iter = 0; iter < 8; ++iter) {
            ComplexBox D = interval_eval(df, X);
            if (D.contains_zero()) break;
            Rat hw = X.max_halfwidth();
            long cur = sign(hw) > 0 ? ceil_log2(Rat(1) / hw) : 256;
            long budget = std::max(64L, 3 * cur + 16);
            Rat mr = dyadic_floor(X.re.mid(), budget);
            Rat mi = dyadic_floor(X.im.mid(), budget);
            if (!(X.re.lo < mr && mr < X.re.hi)) mr = X.re.mid();
            if (!(X.im.lo < mi && mi < X.im.hi)) mi = X.im.mid();
            ComplexBox m = ComplexBox::point(mr, mi);
            ComplexBox K = m - divide(interval_eval(f, m), D);
            if (strictly_inside(K.re, X.re) && strictly_inside(K.im, X.im)) {
                auto tight = intersect(K, X);
                X = tight ? *tight : X;
                good = true;
                break;
            }
            auto next = intersect(K, X);
            if (!next) break; // no root here; try a larger box
            ComplexBox rounded = next->round_outward(budget);
            auto clipped = intersect(rounded, X);
            X = clipped ? *clipped : *next;
        }
        if (good && sign(X.im.lo) > 0) return X;
    }
    return std::nullopt;
}

void refine_box(const QPoly& f, const QPoly& df, ComplexBox& X, long target_bits) {
    Rat tol = pow2(-target_bits);
    long guard = 0;
    while (X.max_halfwidth() > tol) {
        if (++guard > 4000)
            fail(errc::precision_exhausted, "complex enclosure refinement stalled");
        ComplexBox D = interval_eval(df, X);
        if (D.contains_zero())
            fail(errc::precision_exhausted, "derivative enclosure lost certification");
        Rat hw = X.max_halfwidth();
        long cur = sign(hw) > 0 ? ceil_log2(Rat(1) / hw) : target_bits;
        long budget = std::min(target_bits + 16, std::max(64L, 3 * cur + 16));
        Rat mr = dyadic_floor(X.re.mid(), budget);
        Rat mi = dyadic_floor(X.im.mid(), budget);
        if (!(X.re.lo < mr && mr < X.re.hi)) mr = X.re.mid();
        if (!(X.im.lo < mi && mi < X.im.hi)) mi = X.im.mid();
        ComplexBox m = ComplexBox::point(mr, mi);
        ComplexBox K = m - divide(interval_eval(f, m), D);
        auto next = intersect(K, X);
        if (!next) fail(errc::precision_exhausted, "complex enclosure became inconsistent");
        ComplexBox rounded = next->round_outward(budget);
        auto clipped = intersect(rounded, X);
        X = clipped ? *clipped : *next;
    }
}

void refine_real(const QPoly& f, const QPoly& df, RatInterval& X, long target_bits) {
    Rat tol = pow2(-target_bits);
    if (X.width() <= tol) return;
    if (sign(f.eval(X.lo)) == 0) {
        X = RatInterval::point(X.lo);
        return;
    }
    if (sign(f.eval(X.hi)) == 0) {
        X = RatInterval::point(X.hi);
        return;
    }
    int sign_lo = sign(f.eval(X.lo));
    long guard = 0;
    while (X.width() > tol) {
        if (++guard > 4000) fail(errc::precision_exhausted, "real enclosure refinement stalled");
        Rat hw = X.width();
        long cur = sign(hw) > 0 ? ceil_log2(Rat(1) / hw) : target_bits;
        long budget = std::min(target_bits + 16, std::max(64L, 3 * cur + 16));
        bool newton_done = false;
        RatInterval D = interval_eval(df, X);
        if (!D.contains_zero()) {
            Rat m = dyadic_floor(X.mid(), budget);
            if (!(X.lo < m && m < X.hi)) m = X.mid();
            Rat fm = f.eval(m);
            if (sign(fm) == 0) {
                X = RatInterval::point(m);
                return;
            }
            RatInterval K = RatInterval::point(m) - divide(RatInterval::point(fm), D);
            Rat nlo = std::max(K.lo, X.lo), nhi = std::min(K.hi, X.hi);
            if (nlo <= nhi) {
                RatInterval Xn{dyadic_floor(nlo, budget), dyadic_ceil(nhi, budget)};
                Xn.lo = std::max(Xn.lo, X.lo);
                Xn.hi = std::min(Xn.hi, X.hi);
                if (Xn.width() <= hw * Rat(7, 8)) {
                    X = Xn;
                    newton_done = true;
                }
            }
        }
        if (!newton_done) {
            Rat m = dyadic_floor(X.mid(), budget);
            if (!(X.lo < m && m < X.hi)) m = X.mid();
            int sm = sign(f.eval(m));
            if (sm == 0) {
                X = RatInterval::point(m);
                return;
            }
            if (sm == sign_lo)
                X.lo = m;
            else
                X.hi = m;
        }
    }
}

} // namespace

struct EmbeddingSet::Impl {
    QPoly fq, dfq;
    ZPoly fz;
    long max_bits = 16384;
    mutable std::mutex mu;
    mutable std::vector<RatInterval> reals;
    mutable std::vector<ComplexBox> boxes;
};

EmbeddingSet EmbeddingSet::isolate(FieldPtr field, long precision_bits, long max_bits) {
    if (!field) fail(errc::field_mismatch, "no field to isolate roots for");
    if (precision_bits < 1 || max_bits < precision_bits)
        fail(errc::invalid_index, "invalid precision request");
    auto impl = std::make_shared<Impl>();
    impl->fq = field->minpoly();
    impl->dfq = impl->fq.derivative();
    impl->fz = to_primitive_z(impl->fq);
    impl->max_bits = max_bits;

    SturmChain chain(impl->fz);
    auto isolated = isolate_real_roots(chain);
    for (auto& [lo, hi] : isolated) impl->reals.push_back(RatInterval{lo, hi});
    if (static_cast<int>(impl->reals.size()) != field->real_embeddings())
        fail(errc::no_real_embedding, "real root count does not match the field signature");

    const int t = field->complex_pairs();
    if (t > 0) {
        bool done = false;
        for (long p = 64; p <= max_bits; p *= 2) {
            std::vector<Seed> seeds;
            if (!aberth_seeds(impl->fq, p, seeds)) continue;
            Rat cut = pow2(-std::max(p / 4, 8L));
            std::vector<Seed> upper;
            for (auto& s : seeds)
                if (s.im > cut) upper.push_back(s);
            if (static_cast<int>(upper.size()) != t) continue;
            std::vector<ComplexBox> boxes;
            bool ok = true;
            for (auto& s : upper) {
                auto box = certify_box(impl->fq, impl->dfq, s);
                if (!box) {
                    ok = false;
                    break;
                }
                boxes.push_back(*box);
            }
            if (!ok) continue;
            for (size_t i = 0; i < boxes.size() && ok; ++i)
                for (size_t j = i + 1; j < boxes.size(); ++j)
                    if (boxes[i].intersects(boxes[j])) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            std::sort(boxes.begin(), boxes.end(), [](const ComplexBox& a, const ComplexBox& b) {
                return a.re.lo != b.re.lo ? a.re.lo < b.re.lo : a.im.lo < b.im.lo;
            });
            impl->boxes = std::move(boxes);
            done = true;
            break;
        }
        if (!done)
            fail(errc::precision_exhausted,
                 "complex root certification failed at the precision cap");
    }

    EmbeddingSet set;
    set.field_ = std::move(field);
    set.impl_ = std::move(impl);
    // refine everything to the requested starting width
    for (int k = 0; k < set.real_count(); ++k) set.real_root(k, precision_bits);
    for (int k = 0; k < set.pair_count(); ++k) set.upper_root(k, precision_bits);
    return set;
}

int EmbeddingSet::real_count() const { return field_->real_embeddings(); }
int EmbeddingSet::pair_count() const { return field_->complex_pairs(); }
int EmbeddingSet::size() const { return field_->degree(); }
long EmbeddingSet::max_precision_bits() const { return impl_->max_bits; }

RatInterval EmbeddingSet::real_root(int k, long precision_bits) const {
    if (k < 0 || k >= real_count()) fail(errc::invalid_index, "real root index out of range");
    std::lock_guard<std::mutex> lock(impl_->mu);
    RatInterval& X = impl_->reals[static_cast<size_t>(k)];
    refine_real(impl_->fq, impl_->dfq, X, precision_bits);
    return X;
}

ComplexBox EmbeddingSet::upper_root(int k, long precision_bits) const {
    if (k < 0 || k >= pair_count()) fail(errc::invalid_index, "complex pair index out of range");
    std::lock_guard<std::mutex> lock(impl_->mu);
    ComplexBox& X = impl_->boxes[static_cast<size_t>(k)];
    refine_box(impl_->fq, impl_->dfq, X, precision_bits);
    return X;
}

ComplexBox EmbeddingSet::evaluate(const FieldElement& a, int index, long precision_bits) const {
    if (!a.field()->same_as(*field_)) fail(errc::field_mismatch, "element from a different field");
    const int s = real_count(), t = pair_count();
    if (index < 1 || index > s + 2 * t) fail(errc::invalid_index, "embedding index out of range");
    if (index > s + t) return evaluate(a, index - t, precision_bits).conj();
    QPoly rep = a.representative();
    Rat tol = pow2(-precision_bits);
    long p = std::min(std::max(precision_bits + 8, 64L), impl_->max_bits);
    while (true) {
        ComplexBox val;
        if (index <= s) {
            RatInterval x = real_root(index - 1, p);
            val = ComplexBox{interval_eval(rep, x), RatInterval::point(Rat(0))};
        } else {
            ComplexBox z = upper_root(index - s - 1, p);
            val = interval_eval(rep, z);
        }
        if (val.max_halfwidth() * 2 <= tol) return val;
        if (p >= impl_->max_bits)
            fail(errc::precision_exhausted, "embedding evaluation hit the precision cap");
        p = std::min(p * 2, impl_->max_bits);
    }
}

RatInterval EmbeddingSet::evaluate_abs_sq(const FieldElement& a, int index,
                                          long precision_bits) const {
    Rat tol = pow2(-precision_bits);
    long p = std::min(std::max(precision_bits + 8, 64L), impl_->max_bits);
    while (true) {
        ComplexBox val = evaluate(a, index, p);
        RatInterval sq = abs_sq(val);
        if (sq.width() <= tol) return sq;
        if (p >= impl_->max_bits)
            fail(errc::precision_exhausted, "modulus evaluation hit the precision cap");
        p = std::min(p * 2, impl_->max_bits);
    }
}

int EmbeddingSet::sign_at(const FieldElement& a, int index) const {
    if (!a.field()->same_as(*field_)) fail(errc::field_mismatch, "element from a different field");
    if (index < 1 || index > real_count())
        fail(errc::invalid_index, "sign is defined for real embeddings only");
    if (a.is_zero()) return 0;
    // cheap attempts first
    for (long p : {64L, 256L}) {
        if (p > impl_->max_bits) break;
        RatInterval x = real_root(index - 1, p);
        RatInterval v = interval_eval(a.representative(), x);
        auto cs = v.certain_sign();
        if (cs && *cs != 0) return *cs;
    }
    // exact zero detection: sigma_index(a) = 0 iff the representative
    // shares the root in this enclosure with f
    ZPoly az = to_primitive_z(a.representative());
    ZPoly g = gcd(impl_->fz, az);
    if (g.degree() >= 1) {
        RatInterval x = real_root(index - 1, 64);
        SturmChain gch(squarefree_part(g));
        if (gch.count_roots(x.lo, x.hi) == 1) return 0;
    }
    // nonzero at this embedding: refine until the sign is certain
    long p = 512;
    while (true) {
        if (p > impl_->max_bits)
            fail(errc::precision_exhausted, "sign determination hit the precision cap");
        RatInterval x = real_root(index - 1, p);
        RatInterval v = interval_eval(a.representative(), x);
        auto cs = v.certain_sign();
        if (cs && *cs != 0) return *cs;
        p *= 2;
    }
}

std::pair<int, int> signature(const QPoly& p) { return signature_of(p); }

} // namespace otlck
