#pragma once

#include <memory>
#include <vector>

#include "otlck/poly.hpp"

namespace otlck {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// K = Q[x]/(f) for a monic squarefree integer polynomial f with at least
// one real root. Irreducibility of f is a trusted input assertion; it is
// cross-checked by the squarefreeness and rational-root tests here, and
// lazily by every inverse computation (a nontrivial gcd with f rejects
// the field after the fact).
class NumberField {
  public:
    // Library entry point: monic, integer coefficients, squarefree, no
    // rational root, degree >= min_degree, at least one real embedding.
    // Each violation raises a distinct labeled error.
    static FieldPtr create(const QPoly& minpoly, int min_degree = 2);

    const QPoly& minpoly() const { return minpoly_; }
    int degree() const { return degree_; }
    int real_embeddings() const { return real_embeddings_; } // s
    int complex_pairs() const { return complex_pairs_; }     // t

    bool same_as(const NumberField& o) const { return this == &o || minpoly_ == o.minpoly_; }

  private:
    NumberField(QPoly f, int s, int t)
        : minpoly_(std::move(f)), degree_(minpoly_.degree()),
          real_embeddings_(s), complex_pairs_(t) {}

    QPoly minpoly_;
    int degree_;
    int real_embeddings_;
    int complex_pairs_;
};

// The strict validator behind the CLI: same checks with degree >= 3,
// matching the geometric setting (s >= 1 and 2t >= 2 forces degree 3).
FieldPtr validate_field(const QPoly& minpoly);

// Element of K as exact rational coordinates in the power basis
// 1, x, ..., x^(n-1). Immutable; all operations are pure.
class FieldElement {
  public:
    FieldElement(FieldPtr field, std::vector<Rat> coords);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement from_rational(const FieldPtr& field, const Rat& v);
    // x mod f, the class of the variable.
    static FieldElement generator(const FieldPtr& field);

    const std::vector<Rat>& coords() const { return coords_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_rational() const; // all coordinates above degree 0 vanish
    QPoly representative() const; // degree < n

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;

    // Extended gcd with the defining polynomial; a nontrivial common
    // factor means f was reducible and rejects the field.
    FieldElement inverse() const;
    FieldElement pow(long e) const;

  private:
    void check_same_field(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<Rat> coords_; // size n
};

// Product of the images under all n embeddings, computed exactly as a
// resultant. norm(0) = 0.
Rat norm(const FieldElement& a);

// Monic least-degree rational polynomial annihilating a, by exact
// fraction-free elimination on the matrix of powers 1, a, a^2, ...
// Its degree divides n when f is irreducible; a nondivisor degree
// rejects the field (reducibility surfaced).
QPoly minimal_polynomial(const FieldElement& a);

// Algebraic integer of norm +-1: monic integer minimal polynomial with
// constant term +-1.
bool is_unit(const FieldElement& a);

} // namespace otlck
