#include "otlck/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace otlck {

// --- rational helpers -------------------------------------------------

long ceil_log2(const Rat& x) {
    if (sign(x) <= 0) fail(errc::zero_element, "ceil_log2 needs a positive argument");
    long k = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    // k is within 1 of log2(x); nudge to the exact ceiling.
    while (pow2(k) < x) ++k;
    while (pow2(k - 1) >= x) --k;
    return k;
}

Rat parse_rational(std::string_view text) {
    auto bad = [&](const char* why) {
        fail(errc::parse_error, "invalid rational '" + std::string(text) + "' (" + why + ")");
    };
    if (text.empty()) bad("empty");
    size_t pos = 0;
    auto scan_int = [&]() -> std::string {
        std::string out;
        if (pos < text.size() && text[pos] == '-') out += text[pos++];
        size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out += text[pos++];
            ++digits;
        }
        if (digits == 0) bad("missing digits");
        return out;
    };
    std::string num = scan_int();
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = scan_int();
        if (!den.empty() && den[0] == '-') bad("sign on denominator");
    }
    if (pos != text.size()) bad("trailing characters");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) bad("not a rational");
    if (q.get_den() == 0) bad("zero denominator");
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

std::string decimal_string(const Rat& q, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (sign(q) == 0) return "0";
    Rat a = abs(q);
    // decimal exponent e with 10^e <= a < 10^(e+1)
    long e = 0;
    Rat ten(10);
    if (a >= 1) {
        Rat p(1);
        while (p * ten <= a) {
            p *= ten;
            ++e;
        }
    } else {
        Rat p(1);
        while (p > a) {
            p /= ten;
            --e;
        }
    }
    // mantissa rounded to significant_digits digits
    Rat scaled = a * pow_rat(ten, significant_digits - 1 - e);
    Int mant;
    {
        Rat half = scaled + Rat(1, 2);
        mpz_fdiv_q(mant.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
    }
    std::string digits = mant.get_str();
    if (static_cast<int>(digits.size()) > significant_digits) {
        // rounding overflowed into one more digit (e.g. 999.95 -> 1000)
        ++e;
        digits.pop_back();
    }
    std::string out = sign(q) < 0 ? "-" : "";
    if (e >= 0 && e < significant_digits + 6 && e <= 18) {
        if (e + 1 >= static_cast<int>(digits.size())) {
            out += digits + std::string(e + 1 - digits.size(), '0');
        } else {
            out += digits.substr(0, e + 1) + "." + digits.substr(e + 1);
            while (out.back() == '0') out.pop_back();
            if (out.back() == '.') out.pop_back();
        }
    } else if (e < 0 && e >= -6) {
        out += "0." + std::string(-e - 1, '0') + digits;
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    } else {
        std::string m = digits.substr(0, 1);
        std::string rest = digits.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        out += m;
        if (!rest.empty()) out += "." + rest;
        out += "e" + std::to_string(e);
    }
    return out;
}

// --- ZPoly -------------------------------------------------------------

Int ZPoly::eval(const Int& x) const {
    Int acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat ZPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

ZPoly ZPoly::derivative() const {
    ZPoly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<long>(i));
    d.trim();
    return d;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

ZPoly operator-(const ZPoly& a) {
    ZPoly r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ZPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

Int content(const ZPoly& p) {
    Int g(0);
    for (const Int& v : p.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Divide by the (positive) content only; sign of the leading coefficient
// is preserved. Needed by the Sturm chain, where sign flips would break
// the variation count.
static ZPoly divide_content(const ZPoly& p) {
    if (p.is_zero()) return p;
    Int g = content(p);
    ZPoly r = p;
    for (auto& v : r.c) v /= g;
    return r;
}

ZPoly primitive_part(const ZPoly& p) {
    ZPoly r = divide_content(p);
    if (!r.is_zero() && sign(r.lc()) < 0)
        for (auto& v : r.c) v = -v;
    return r;
}

// lc(b)^(even power) * a  mod b over Z. The even exponent keeps the
// scaling positive, so root signs and Sturm variations are preserved.
static ZPoly pseudo_rem_positive(const ZPoly& a, const ZPoly& b) {
    assert(!b.is_zero());
    long delta = a.degree() - b.degree();
    if (delta < 0) return a;
    long e = delta + 1;
    if (e % 2 == 1) ++e;
    Int scale = pow_int(b.lc(), static_cast<unsigned long>(e));
    ZPoly r = a;
    for (auto& v : r.c) v *= scale;
    // ordinary polynomial remainder; divisions by lc(b) are exact thanks
    // to the pre-scaling
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Int q = r.lc() / b.lc();
        if (q * b.lc() != r.lc()) {
            // fall back to exact rational step: scale once more by lc(b)
            Int extra = b.lc();
            for (auto& v : r.c) v *= extra * extra; // keep positive scaling
            continue;
        }
        long shift = r.degree() - b.degree();
        for (long i = 0; i <= b.degree(); ++i) r.c[i + shift] -= q * b.c[i];
        r.trim();
    }
    return r;
}

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = primitive_part(a0), b = primitive_part(b0);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = pseudo_rem_positive(a, b);
        a = b;
        b = primitive_part(r);
    }
    return primitive_part(a);
}

// Exact division over Q, asserting zero remainder (used for squarefree
// parts, where divisibility is guaranteed).
static QPoly exact_div_q(const QPoly& a, const QPoly& b);

ZPoly squarefree_part(const ZPoly& p0) {
    ZPoly p = primitive_part(p0);
    if (p.is_zero() || p.degree() == 0) return p;
    ZPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    QPoly q = exact_div_q(to_q(p), to_q(g));
    return to_primitive_z(q);
}

// Bareiss fraction-free determinant. Divisions are exact by Sylvester's
// identity; entries stay integers of bounded minor size.
static Int bareiss_det(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign_flips = 0;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            ++sign_flips;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Int det = m[n - 1][n - 1];
    return sign_flips % 2 ? Int(-det) : det;
}

Int resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    const long da = a.degree(), db = b.degree();
    if (da == 0 && db == 0) return Int(1);
    if (da == 0) return pow_int(a.c[0], static_cast<unsigned long>(db));
    if (db == 0) return pow_int(b.c[0], static_cast<unsigned long>(da));
    const long n = da + db;
    std::vector<std::vector<Int>> syl(static_cast<size_t>(n),
                                      std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (long r = 0; r < db; ++r)
        for (long j = 0; j <= da; ++j) syl[r][r + j] = a.c[static_cast<size_t>(da - j)];
    for (long r = 0; r < da; ++r)
        for (long j = 0; j <= db; ++j) syl[db + r][r + j] = b.c[static_cast<size_t>(db - j)];
    return bareiss_det(std::move(syl));
}

Int l2_norm_upper(const ZPoly& p) {
    Int s(0);
    for (const Int& v : p.c) s += v * v;
    Int r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    if (r * r < s) ++r;
    if (r == 0) r = 1;
    return r;
}

ZPoly pair_product_poly(const ZPoly& g0) {
    ZPoly g = g0;
    if (g.is_zero() || g.degree() < 1)
        fail(errc::zero_polynomial, "pair product needs a nonconstant polynomial");
    if (g.lc() != 1) fail(errc::non_monic, "pair product needs a monic polynomial");
    if (g.c[0] == 0) fail(errc::zero_element, "pair product needs a nonzero constant term");
    const long m = g.degree();
    const long deg = m * m;
    // interpolation points 0, 1, -1, 2, -2, ...
    std::vector<Rat> xs;
    std::vector<Rat> ys;
    xs.reserve(static_cast<size_t>(deg + 1));
    for (long j = 0; j <= deg; ++j) {
        long v = (j + 1) / 2;
        if (j % 2 == 0) v = -v;
        Int x(v);
        // h(y) = sum_k g_k x^k y^(m-k); leading y-coefficient is g_0 != 0
        ZPoly h;
        h.c.assign(static_cast<size_t>(m + 1), Int(0));
        Int xp(1);
        for (long k = 0; k <= m; ++k) {
            h.c[static_cast<size_t>(m - k)] = g.c[static_cast<size_t>(k)] * xp;
            xp *= x;
        }
        h.trim();
        xs.emplace_back(x);
        ys.emplace_back(resultant(g, h));
    }
    // Newton divided differences, then expand to coefficients
    const size_t npts = xs.size();
    std::vector<Rat> dd = ys;
    for (size_t level = 1; level < npts; ++level)
        for (size_t i = npts - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    QPoly acc;          // running polynomial
    QPoly basis;        // prod (x - xs[i])
    basis.c = {Rat(1)};
    for (size_t i = 0; i < npts; ++i) {
        acc = acc + dd[i] * basis;
        QPoly lin;
        lin.c = {-xs[i], Rat(1)};
        basis = basis * lin;
    }
    if (!acc.integer_coeffs() || acc.degree() != deg || !acc.is_monic())
        fail(errc::zero_polynomial, "pair product interpolation failed consistency checks");
    ZPoly out;
    out.c.reserve(acc.c.size());
    for (const Rat& v : acc.c) out.c.push_back(v.get_num());
    return out;
}

// --- QPoly -------------------------------------------------------------

bool QPoly::integer_coeffs() const {
    for (const Rat& v : c)
        if (!is_integer(v)) return false;
    return true;
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const {
    QPoly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
    d.trim();
    return d;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

QPoly operator-(const QPoly& a) {
    QPoly r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    QPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

QPoly operator*(const Rat& s, const QPoly& a) {
    if (sign(s) == 0) return {};
    QPoly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) fail(errc::zero_polynomial, "division by the zero polynomial");
    QPoly q, r = a;
    if (a.degree() >= b.degree()) q.c.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rat f = r.lc() / b.lc();
        long shift = r.degree() - b.degree();
        q.c[static_cast<size_t>(shift)] = f;
        for (long i = 0; i <= b.degree(); ++i)
            r.c[static_cast<size_t>(i + shift)] -= f * b.c[static_cast<size_t>(i)];
        r.trim();
    }
    q.trim();
    return {q, r};
}

static QPoly exact_div_q(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(errc::zero_polynomial, "exact division left a remainder");
    return q;
}

QPoly gcd(const QPoly& a0, const QPoly& b0) {
    // run over Z for tame coefficient growth, normalize monic at the end
    ZPoly g = gcd(to_primitive_z(a0), to_primitive_z(b0));
    QPoly q = to_q(g);
    if (!q.is_zero() && !(q.lc() == 1)) {
        Rat inv = Rat(1) / q.lc();
        for (auto& v : q.c) v *= inv;
    }
    return q;
}

ZPoly to_primitive_z(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den(1);
    for (const Rat& v : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    ZPoly r;
    r.c.reserve(p.c.size());
    for (const Rat& v : p.c) {
        Rat scaled = v * Rat(den);
        r.c.push_back(scaled.get_num());
    }
    return primitive_part(r);
}

QPoly to_q(const ZPoly& p) {
    QPoly r;
    r.c.reserve(p.c.size());
    for (const Int& v : p.c) r.c.emplace_back(v);
    return r;
}

Rat cauchy_root_bound(const QPoly& p) {
    if (p.is_zero() || p.degree() < 1) return Rat(1);
    Rat m(0);
    for (size_t i = 0; i + 1 < p.c.size(); ++i) {
        Rat a = abs(p.c[i]);
        if (a > m) m = a;
    }
    return Rat(1) + m / abs(p.lc());
}

// --- Sturm -------------------------------------------------------------

SturmChain::SturmChain(const ZPoly& squarefree) {
    ZPoly p0 = divide_content(squarefree);
    if (p0.is_zero()) fail(errc::zero_polynomial, "Sturm chain of the zero polynomial");
    chain_.push_back(p0);
    if (p0.degree() == 0) return;
    ZPoly p1 = divide_content(p0.derivative());
    chain_.push_back(p1);
    while (!chain_.back().is_zero() && chain_.back().degree() > 0) {
        const ZPoly& a = chain_[chain_.size() - 2];
        const ZPoly& b = chain_.back();
        ZPoly r = pseudo_rem_positive(a, b);
        if (r.is_zero()) {
            // nonconstant gcd: input was not squarefree
            fail(errc::not_squarefree, "polynomial has repeated roots");
        }
        chain_.push_back(divide_content(-r));
    }
}

static int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const ZPoly& p : chain_) signs.push_back(sign(p.eval(x)));
    return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const ZPoly& p : chain_) {
        if (p.is_zero()) {
            signs.push_back(0);
            continue;
        }
        int s = sign(p.lc());
        if (p.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const ZPoly& p : chain_) signs.push_back(p.is_zero() ? 0 : sign(p.lc()));
    return count_variations(signs);
}

int SturmChain::count_roots(const Rat& lo, const Rat& hi) const {
    if (lo >= hi) return 0;
    return variations_at(lo) - variations_at(hi);
}

int SturmChain::count_real_roots() const {
    return variations_at_neg_inf() - variations_at_pos_inf();
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const SturmChain& chain) {
    const ZPoly& p = chain.poly();
    std::vector<std::pair<Rat, Rat>> out;
    if (p.degree() < 1) return out;
    Rat bound = cauchy_root_bound(to_q(p));
    Int b = bound.get_num() / bound.get_den() + 2; // integer, strictly outside all roots
    struct Seg {
        Rat lo, hi;
        int count;
    };
    std::vector<Seg> work;
    Rat lo(-b), hi(b);
    work.push_back({lo, hi, chain.count_roots(lo, hi)});
    while (!work.empty()) {
        Seg seg = work.back();
        work.pop_back();
        if (seg.count == 0) continue;
        if (seg.count == 1) {
            out.emplace_back(seg.lo, seg.hi);
            continue;
        }
        Rat mid = (seg.lo + seg.hi) / 2;
        if (sign(p.eval(mid)) == 0) {
            out.emplace_back(mid, mid);
            // carve a root-free margin around the exact root before recursing
            Rat eps = (seg.hi - seg.lo) / 4;
            while (sign(p.eval(mid - eps)) == 0 || sign(p.eval(mid + eps)) == 0 ||
                   chain.count_roots(mid - eps, mid + eps) > 1)
                eps /= 2;
            work.push_back({seg.lo, mid - eps, chain.count_roots(seg.lo, mid - eps)});
            work.push_back({mid + eps, seg.hi, chain.count_roots(mid + eps, seg.hi)});
        } else {
            work.push_back({seg.lo, mid, chain.count_roots(seg.lo, mid)});
            work.push_back({mid, seg.hi, chain.count_roots(mid, seg.hi)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b2) { return a.first < b2.first; });
    return out;
}

std::pair<int, int> signature_of(const QPoly& p) {
    if (p.is_zero()) fail(errc::zero_polynomial, "signature of the zero polynomial");
    if (p.degree() < 1) fail(errc::zero_polynomial, "signature of a constant polynomial");
    ZPoly z = to_primitive_z(p);
    if (gcd(z, z.derivative()).degree() > 0)
        fail(errc::not_squarefree, "signature requires a squarefree polynomial");
    SturmChain chain(z);
    int s = chain.count_real_roots();
    int n = z.degree();
    return {s, (n - s) / 2};
}

} // namespace otlck
