#pragma once

#include <optional>
#include <vector>

#include "otlck/embeddings.hpp"
#include "otlck/interval.hpp"
#include "otlck/numfield.hpp"

namespace otlck {

// Working precision bounds threaded through every certified decision.
struct Precision {
    long target_bits = 128;
    long max_bits = 16384;
};

// l(u) = (log|sigma_1(u)|, ..., log|sigma_{s+t}(u)|) as certified
// enclosures of width <= 2^-target.
struct LogVector {
    std::vector<RatInterval> entries; // size s + t
    int real_count = 0;               // s
    int pair_count = 0;               // t
};

// Requires u to be a verified unit.
LogVector log_embedding(const FieldElement& u, const EmbeddingSet& emb, Precision prec);

// x_1 + ... + x_s + 2 x_{s+1} + ... + 2 x_{s+t}; contains 0 for units.
RatInterval dirichlet_residual(const LogVector& v);

// Lattice given by spanning rows with exact rational coordinates,
// canonicalized to a Hermite-style basis of independent rows (rows are
// scaled to integers internally; the Z-span is preserved).
class IntegerLattice {
  public:
    static IntegerLattice from_rows(std::vector<std::vector<Rat>> rows, int dimension);

    int dimension() const { return dimension_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<Rat>>& basis() const { return basis_; }

  private:
    std::vector<std::vector<Rat>> basis_; // independent rows
    int dimension_ = 0;
};

// Exact decision of v in the Z-span of the lattice basis.
bool lattice_membership(const std::vector<Rat>& v, const IntegerLattice& lattice);
// Same over Q (linear span).
bool rational_span_membership(const std::vector<Rat>& v, const IntegerLattice& lattice);

// Constructive counterpart of the fact that a lattice is not a finite
// union of proper-rank sublattices: returns a lattice vector belonging
// to no sublattice. Enumerates basis-coordinate vectors by increasing
// sup norm, lexicographically within a shell, and returns the first
// vector failing every membership test. Requires rank(sub) < rank(lattice)
// for every sublattice.
std::vector<Rat> lemma_witness(const IntegerLattice& lattice,
                               const std::vector<IntegerLattice>& sublattices);

// Generators verified to be units and totally positive (every real
// embedding strictly positive) at construction.
class UnitSubgroup {
  public:
    static UnitSubgroup create(std::vector<FieldElement> generators,
                               const EmbeddingSet& emb);
    // Units only, total positivity not required (rank is insensitive to
    // torsion twists).
    static UnitSubgroup create_units_only(std::vector<FieldElement> generators,
                                          const EmbeddingSet& emb);

    const std::vector<FieldElement>& generators() const { return gens_; }
    const FieldPtr& field() const { return field_; }
    bool empty() const { return gens_.empty(); }

  private:
    UnitSubgroup(FieldPtr f, std::vector<FieldElement> g)
        : field_(std::move(f)), gens_(std::move(g)) {}
    FieldPtr field_;
    std::vector<FieldElement> gens_;
};

// Rank of the group modulo torsion. Certified two-sided:
//   - independence of the reported rank is witnessed by an interval
//     minor determinant excluding zero;
//   - every dependent generator carries an integer relation, found by
//     lattice reduction on scaled log vectors and then verified EXACTLY
//     in field arithmetic (product of powers equals +-1; torsion is
//     {+-1} since s >= 1).
// When the precision cap is reached before both sides are certified the
// result is indeterminate -- a distinct outcome, never a guess.
struct RankResult {
    bool certified = false;               // false => indeterminate
    int rank = -1;                        // valid when certified
    // One row per generator outside the independent set: exponents over
    // all generators with product +-1, exactly verified.
    std::vector<std::vector<Int>> relations;
    long precision_bits_used = 0;
};

RankResult subgroup_rank(const UnitSubgroup& group, const EmbeddingSet& emb, Precision prec);

// Enclosure of the determinant of a square interval matrix (cofactor
// expansion; meant for the small minors used in rank certificates). A
// result excluding zero certifies a nonsingular point matrix inside.
RatInterval interval_det(const std::vector<std::vector<RatInterval>>& m);

} // namespace otlck
