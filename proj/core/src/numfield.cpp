#include "otlck/numfield.hpp"

#include <algorithm>
#include <cassert>

namespace otlck {

namespace {

// Monic integer polynomials can only have integer rational roots, and
// Sturm bisection pins each real root to a short interval, so the test
// is complete without factoring the constant term.
bool has_integer_root(const ZPoly& squarefree) {
    SturmChain chain(squarefree);
    auto isolated = isolate_real_roots(chain);
    const ZPoly& p = chain.poly();
    for (auto& [lo, hi] : isolated) {
        if (lo == hi) {
            if (is_integer(lo)) return true;
            continue;
        }
        // narrow until at most one integer candidate fits
        Rat a = lo, b = hi;
        bool hit_root_midpoint = false;
        while (b - a >= Rat(1, 2)) {
            Rat mid = (a + b) / 2;
            int sm = sign(p.eval(mid));
            if (sm == 0) {
                if (is_integer(mid)) return true;
                hit_root_midpoint = true;
                break;
            }
            if (sm == sign(p.eval(a)))
                a = mid;
            else
                b = mid;
        }
        if (hit_root_midpoint) continue; // the root is a non-integer rational
        Int first, last;
        mpz_cdiv_q(first.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
        mpz_fdiv_q(last.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        for (Int k = first; k <= last; ++k)
            if (p.eval(k) == 0) return true;
    }
    return false;
}

} // namespace

FieldPtr NumberField::create(const QPoly& minpoly, int min_degree) {
    if (minpoly.is_zero()) fail(errc::zero_polynomial, "defining polynomial is zero");
    if (!minpoly.integer_coeffs())
        fail(errc::non_integer_coeffs, "defining polynomial must have integer coefficients");
    if (!minpoly.is_monic()) fail(errc::non_monic, "defining polynomial must be monic");
    if (minpoly.degree() < min_degree)
        fail(errc::degree_too_small, "defining polynomial degree " +
                                         std::to_string(minpoly.degree()) + " is below " +
                                         std::to_string(min_degree));
    ZPoly f = to_primitive_z(minpoly);
    if (gcd(f, f.derivative()).degree() > 0)
        fail(errc::not_squarefree, "defining polynomial has repeated roots");
    if (f.c[0] == 0 || has_integer_root(f))
        fail(errc::rational_root, "defining polynomial has a rational root");
    SturmChain chain(f);
    int s = chain.count_real_roots();
    if (s == 0) fail(errc::no_real_embedding, "defining polynomial has no real root");
    int t = (minpoly.degree() - s) / 2;
    return FieldPtr(new NumberField(minpoly, s, t));
}

FieldPtr validate_field(const QPoly& minpoly) { return NumberField::create(minpoly, 3); }

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) fail(errc::field_mismatch, "element without a field");
    if (static_cast<int>(coords_.size()) != field_->degree())
        fail(errc::dimension_mismatch,
             "element has " + std::to_string(coords_.size()) + " coordinates, field degree is " +
                 std::to_string(field_->degree()));
}

FieldElement FieldElement::zero(const FieldPtr& field) {
    return {field, std::vector<Rat>(static_cast<size_t>(field->degree()), Rat(0))};
}

FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, Rat(1)); }

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rat& v) {
    std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
    c[0] = v;
    return {field, std::move(c)};
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
    c[1] = 1;
    return {field, std::move(c)};
}

bool FieldElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& v) { return sign(v) == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(),
                       [](const Rat& v) { return sign(v) == 0; });
}

QPoly FieldElement::representative() const { return QPoly(coords_); }

void FieldElement::check_same_field(const FieldElement& o) const {
    if (!field_->same_as(*o.field_))
        fail(errc::field_mismatch, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(o);
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return {field_, std::move(c)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(o);
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return {field_, std::move(c)};
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c(coords_);
    for (auto& v : c) v = -v;
    return {field_, std::move(c)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    QPoly prod = representative() * o.representative();
    QPoly rem = divmod(prod, field_->minpoly()).second;
    std::vector<Rat> c(static_cast<size_t>(field_->degree()), Rat(0));
    for (size_t i = 0; i < rem.c.size(); ++i) c[i] = rem.c[i];
    return {field_, std::move(c)};
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->same_as(*o.field_) && coords_ == o.coords_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(errc::zero_element, "inverse of zero");
    // extended Euclid: r0 = f, r1 = a; track s-coefficients of a only
    QPoly r0 = field_->minpoly(), r1 = representative();
    QPoly s0, s1;
    s1.c = {Rat(1)};
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() > 0)
        fail(errc::reducible_minpoly,
             "defining polynomial shares a factor with an element representative");
    // r0 = g = s0 * a + t * f, constant; inverse is s0 / g
    Rat g = r0.c[0];
    std::vector<Rat> c(static_cast<size_t>(field_->degree()), Rat(0));
    for (size_t i = 0; i < s0.c.size(); ++i) c[i] = s0.c[i] / g;
    return {field_, std::move(c)};
}

FieldElement FieldElement::pow(long e) const {
    if (e == 0) return one(field_);
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement acc = one(field_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Rat norm(const FieldElement& a) {
    if (a.is_zero()) return Rat(0);
    const QPoly& f = a.field()->minpoly();
    QPoly rep = a.representative();
    if (rep.degree() == 0) return pow_rat(rep.c[0], a.field()->degree());
    // scale the representative to integer coefficients, divide the scale
    // back out of the resultant: norm(a) = Res(f, c*rep to Z) / c^n
    Int den(1);
    for (const Rat& v : rep.c)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    ZPoly az;
    az.c.reserve(rep.c.size());
    for (const Rat& v : rep.c) {
        Rat scaled = v * Rat(den);
        az.c.push_back(scaled.get_num());
    }
    az.trim();
    Int res = resultant(to_primitive_z(f), az);
    Rat out(res);
    out /= pow_rat(Rat(den), a.field()->degree());
    return out;
}

QPoly minimal_polynomial(const FieldElement& a) {
    const int n = a.field()->degree();
    // rows = coordinates of a^0 .. a^k; find the first linear dependency
    std::vector<std::vector<Rat>> powers;
    powers.push_back(FieldElement::one(a.field()).coords());
    FieldElement cur = FieldElement::one(a.field());
    for (int k = 1; k <= n; ++k) {
        cur = cur * a;
        powers.push_back(cur.coords());

        // scale rows to integers; remember the scale to recover exact
        // dependency coefficients on the original rows
        const size_t rows = powers.size();
        std::vector<Int> scale(rows, Int(1));
        std::vector<std::vector<Int>> m(rows,
                                        std::vector<Int>(static_cast<size_t>(n) + rows, Int(0)));
        for (size_t i = 0; i < rows; ++i) {
            Int den(1);
            for (const Rat& v : powers[i])
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
            scale[i] = den;
            for (int j = 0; j < n; ++j) {
                Rat scaled = powers[i][static_cast<size_t>(j)] * Rat(den);
                m[i][static_cast<size_t>(j)] = scaled.get_num();
            }
            m[i][static_cast<size_t>(n) + i] = 1; // augmented identity
        }
        // fraction-free elimination on the left block, carrying the
        // augmented columns along
        size_t pivot_row = 0;
        Int prev(1);
        for (int col = 0; col < n && pivot_row < rows; ++col) {
            size_t p = pivot_row;
            while (p < rows && m[p][static_cast<size_t>(col)] == 0) ++p;
            if (p == rows) continue;
            std::swap(m[pivot_row], m[p]);
            for (size_t i = pivot_row + 1; i < rows; ++i) {
                for (size_t j = static_cast<size_t>(col) + 1; j < m[i].size(); ++j) {
                    Int num = m[i][j] * m[pivot_row][static_cast<size_t>(col)] -
                              m[i][static_cast<size_t>(col)] * m[pivot_row][j];
                    mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                }
                m[i][static_cast<size_t>(col)] = 0;
            }
            prev = m[pivot_row][static_cast<size_t>(col)];
            ++pivot_row;
        }
        if (pivot_row == rows) continue; // rows independent, take one more power
        // some row past pivot_row has a zero left block: its augmented part
        // encodes an integer dependency on the scaled rows
        for (size_t r = pivot_row; r < rows; ++r) {
            bool zero = true;
            for (int j = 0; j < n; ++j)
                if (m[r][static_cast<size_t>(j)] != 0) {
                    zero = false;
                    break;
                }
            if (!zero) continue;
            std::vector<Rat> coeff(rows, Rat(0));
            for (size_t i = 0; i < rows; ++i)
                coeff[i] = Rat(m[r][static_cast<size_t>(n) + i] * scale[i]);
            QPoly mp(std::move(coeff));
            if (mp.is_zero() || mp.degree() != k)
                continue; // dependency not involving the newest power; keep looking
            Rat inv = Rat(1) / mp.lc();
            for (auto& v : mp.c) v *= inv;
            if (n % k != 0)
                fail(errc::reducible_minpoly,
                     "element degree " + std::to_string(k) + " does not divide field degree " +
                         std::to_string(n));
            return mp;
        }
        // a dependency exists at this k but only among earlier powers,
        // which contradicts minimality of previous iterations
        fail(errc::reducible_minpoly, "inconsistent power relations");
    }
    fail(errc::reducible_minpoly, "no annihilating polynomial of degree <= field degree");
}

bool is_unit(const FieldElement& a) {
    if (a.is_zero()) return false;
    QPoly mp = minimal_polynomial(a);
    if (!mp.integer_coeffs()) return false;
    Rat c0 = abs(mp.c[0]);
    return c0 == 1;
}

} // namespace otlck
