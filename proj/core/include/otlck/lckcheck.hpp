#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "otlck/loglattice.hpp"

namespace otlck {

// Three-valued outcome of a certified equality decision. "equal" and
// "not_equal" are proofs; "indeterminate" means the separation bound
// needed more precision than the cap allows.
enum class Cmp { equal, not_equal, indeterminate };

struct CmpCertificate {
    int i = 0, j = 0;
    Cmp verdict = Cmp::indeterminate;
    long precision_bits = 0;
    // -log2 of the root-separation lower bound when one was computed.
    std::optional<long> separation_bits;
    // true when not_equal was proved by disjoint enclosures.
    bool by_disjointness = false;
};

// Decide |sigma_i(u)| = |sigma_j(u)| for complex indices s+1 <= i,j <= s+t
// and a verified unit u. Both squared moduli are roots of the pair-product
// polynomial of the minimal polynomial of u; overlap of enclosures refined
// below half its root-separation bound proves equality, disjointness at
// any width proves inequality.
Cmp decide_abs_equal(const FieldElement& u, int i, int j,
                     const EmbeddingSet& emb, Precision prec,
                     CmpCertificate* cert = nullptr);

struct GeneratorVerdict {
    bool holds = false;
    std::vector<CmpCertificate> comparisons;
};

struct CriterionVerdict {
    enum class Outcome { holds, fails, indeterminate };
    Outcome overall = Outcome::holds;
    std::vector<GeneratorVerdict> per_generator;
    long precision_bits = 0;
};

// |sigma_{s+1}(u)| = ... = |sigma_{s+t}(u)| for every generator; checking
// generators suffices because u -> (log|sigma_i(u)|) is a homomorphism.
// Vacuous (holds) when t = 1 or the generator list is empty.
CriterionVerdict lck_criterion(const UnitSubgroup& group, const EmbeddingSet& emb,
                               Precision prec);

// For k = 1..t-1 decide sigma_{s+k}(u) sigma_{s+t+k}(u) =
// sigma_{s+k+1}(u) sigma_{s+t+k+1}(u); both sides are squared moduli, so
// this is decide_abs_equal along the chain. Requires t >= 2.
std::vector<Cmp> relation_check(const FieldElement& u, const EmbeddingSet& emb,
                                Precision prec);

enum class Membership { on, off, indeterminate };

// Decide |sigma_1(u) sigma_j'(u)| = |sigma_k'(u) sigma_l'(u)| with
// 2 <= j',k',l' <= s+t, i.e. membership of l(u) in the hyperplane
// x_1 + x_j' = x_k' + x_l'. Equality certificates use the quadruple
// product polynomial (pair product of the pair product) when its exact
// computation is affordable; otherwise a degree/measure bound decides
// whether the cap can resolve equality at all.
Membership hyperplane_membership(const FieldElement& u, std::array<int, 3> jkl,
                                 const EmbeddingSet& emb, Precision prec,
                                 CmpCertificate* cert = nullptr);

struct SubfieldBoundRow {
    int s_prime = 0, t_prime = 0;
    int rank = 0; // s' + t' - 1
    bool satisfies_bound = false; // 2t - d(t'+1) < (d-1)s
};

// All signatures (s', t') with s' + 2t' = n/d for a proper divisor degree
// d >= 2, each with the unit rank of such a subfield and the inequality
// that keeps that rank below s.
std::vector<SubfieldBoundRow> subfield_rank_bound(int n, int d, int s, int t);

struct Classification {
    enum class Kind { proper_subfield, hyperplane, anomaly_none_found };
    Kind kind = Kind::proper_subfield;
    // proper_subfield: data of L = Q(u).
    int subfield_degree = 0;
    int subfield_s = 0, subfield_t = 0;
    int subfield_rank = 0; // s' + t' - 1
    // hyperplane: every witnessing triple found.
    std::vector<std::array<int, 3>> triples;
    int indeterminate_triples = 0;
};

// Trap a relation-satisfying unit in a rank-deficient sublattice: either
// u generates a proper subfield (degree < n), or l(u) lies on one of the
// hyperplanes above. "none found" is reported as an anomaly flag, not an
// error. Preconditions (verified): u is a totally positive unit and
// relation_check(u) holds on every adjacent pair.
Classification classify_element(const FieldElement& u, const EmbeddingSet& emb,
                                Precision prec);

struct Satisfier {
    std::vector<long> exponents; // over the generators, canonical order
    FieldElement element;
    Classification classification;
};

struct AuditReport {
    enum class Conclusion { consistent, inconsistent, withheld };

    int box_radius = 0;
    long units_enumerated = 0;
    long totally_positive_candidates = 0;
    std::vector<Satisfier> satisfiers;
    long indeterminate_comparisons = 0;
    RankResult satisfier_rank;
    Conclusion conclusion = Conclusion::withheld;
    // Imported admissibility flag for the input group: rank(l(U)) = s and
    // the projection of the log vectors to the first s coordinates has
    // certified rank s. Not part of the non-existence mechanism.
    std::optional<bool> ot_admissible;
};

// Desk-scale audit of the non-existence mechanism on a field with s >= 1,
// t >= 2 and s >= 2t: enumerate u = prod g_i^{e_i} over |e_i| <= B, keep
// the relation-satisfying units, classify each one, and certify that the
// satisfier set spans a log-lattice of rank < s. The conclusion is
// withheld if any comparison was indeterminate.
AuditReport nolck_audit(const UnitSubgroup& group, int box_radius,
                        const EmbeddingSet& emb, Precision prec);

struct SignatureVerdict {
    bool lck_exists = false;
    std::string reason; // case tag, stable strings
};

// Trichotomy by signature: t = 1 admits, t >= 2 does not, with the case
// tag naming which argument covers it.
SignatureVerdict classify_signature(int s, int t);

} // namespace otlck
