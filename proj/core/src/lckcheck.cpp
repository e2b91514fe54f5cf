#include "otlck/lckcheck.hpp"

#include <algorithm>
#include <cassert>

namespace otlck {

namespace {

// Mahler-style lower bound on the distance between distinct roots of a
// squarefree integer polynomial P of degree D >= 2:
//   sep(P) > 1 / (D^ceil((D+2)/2) * ||P||_2^(D-1)).
// Returns the bound as an exact rational. Conservative in both arguments,
// so upper bounds on degree and norm stay sound.
Rat separation_lower_bound(long degree, const Int& l2_upper) {
    assert(degree >= 2);
    unsigned long hd = static_cast<unsigned long>((degree + 2 + 1) / 2); // ceil((D+2)/2)
    Int denom = pow_int(Int(degree), hd) * pow_int(l2_upper, static_cast<unsigned long>(degree - 1));
    return Rat(1) / Rat(denom);
}

// Bits needed to refine two enclosures below a quarter of the separation
// bound (so overlap at that width certifies equality).
long bits_for_separation(const Rat& sep_lb) { return ceil_log2(Rat(4) / sep_lb); }

// Monic integer minimal polynomial of a unit.
ZPoly unit_minpoly_z(const QPoly& mp) {
    ZPoly z;
    z.c.reserve(mp.c.size());
    for (const Rat& v : mp.c) {
        if (!is_integer(v)) fail(errc::not_a_unit, "unit minimal polynomial must be integral");
        z.c.push_back(v.get_num());
    }
    z.trim();
    return z;
}

struct PairProductData {
    ZPoly squarefree; // squarefree part of the pair-product polynomial
    long degree = 0;
    Int l2_upper;
};

PairProductData pair_product_data(const ZPoly& g) {
    PairProductData d;
    ZPoly r2 = pair_product_poly(g);
    d.squarefree = squarefree_part(r2);
    d.degree = d.squarefree.degree();
    d.l2_upper = l2_norm_upper(d.squarefree);
    return d;
}

// Shared engine: decide equality of two positive algebraic numbers that
// are both roots of a known squarefree integer polynomial, given interval
// generators for each side. `approx(bits)` must return enclosures of
// width <= 2^-bits (or throw precision_exhausted).
template <typename Approx>
Cmp decide_equal_roots(long poly_degree, const Int& poly_l2, Approx approx, Precision prec,
                       CmpCertificate* cert) {
    auto note = [&](Cmp v, long bits, std::optional<long> sep, bool disjoint) {
        if (cert) {
            cert->verdict = v;
            cert->precision_bits = bits;
            cert->separation_bits = sep;
            cert->by_disjointness = disjoint;
        }
        return v;
    };
    // cheap disjointness first
    long p0 = std::min(std::max(prec.target_bits, 64L), prec.max_bits);
    try {
        auto [a, b] = approx(p0);
        if (!a.intersects(b)) return note(Cmp::not_equal, p0, std::nullopt, true);
    } catch (const error& e) {
        if (e.code() != errc::precision_exhausted) throw;
        return note(Cmp::indeterminate, p0, std::nullopt, false);
    }
    if (poly_degree <= 1) {
        // both values are roots of a linear polynomial: the same root
        return note(Cmp::equal, p0, std::nullopt, false);
    }
    Rat sep = separation_lower_bound(poly_degree, poly_l2);
    long need = bits_for_separation(sep);
    if (need <= prec.max_bits) {
        try {
            auto [a, b] = approx(need);
            if (!a.intersects(b)) return note(Cmp::not_equal, need, need, true);
            // widths are below sep/4 each; overlapping enclosures pin both
            // roots inside a window shorter than the separation bound
            return note(Cmp::equal, need, need, false);
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            return note(Cmp::indeterminate, need, need, false);
        }
    }
    // equality is out of reach; inequality may still be provable
    for (long p = p0; p < prec.max_bits;) {
        p = std::min(p * 2, prec.max_bits);
        try {
            auto [a, b] = approx(p);
            if (!a.intersects(b)) return note(Cmp::not_equal, p, need, true);
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            break;
        }
    }
    return note(Cmp::indeterminate, prec.max_bits, need, false);
}

void require_unit(const FieldElement& u) {
    if (!is_unit(u)) fail(errc::not_a_unit, "element is not a unit");
}

} // namespace

Cmp decide_abs_equal(const FieldElement& u, int i, int j, const EmbeddingSet& emb,
                     Precision prec, CmpCertificate* cert) {
    const int s = emb.real_count(), t = emb.pair_count();
    if (i < s + 1 || i > s + t || j < s + 1 || j > s + t)
        fail(errc::invalid_index, "moduli are compared at complex embeddings s+1..s+t");
    if (cert) {
        cert->i = i;
        cert->j = j;
    }
    require_unit(u);
    if (i == j) {
        if (cert) {
            cert->verdict = Cmp::equal;
            cert->precision_bits = 0;
            cert->by_disjointness = false;
        }
        return Cmp::equal;
    }
    QPoly mp = minimal_polynomial(u);
    if (mp.degree() == 1) {
        // rational unit: all embeddings agree
        if (cert) {
            cert->verdict = Cmp::equal;
            cert->precision_bits = 0;
        }
        return Cmp::equal;
    }
    PairProductData pp = pair_product_data(unit_minpoly_z(mp));
    auto approx = [&](long bits) {
        return std::make_pair(emb.evaluate_abs_sq(u, i, bits), emb.evaluate_abs_sq(u, j, bits));
    };
    return decide_equal_roots(pp.degree, pp.l2_upper, approx, prec, cert);
}

std::vector<Cmp> relation_check(const FieldElement& u, const EmbeddingSet& emb, Precision prec) {
    const int s = emb.real_count(), t = emb.pair_count();
    if (t < 2) fail(errc::hypothesis_failure, "the relation chain needs t >= 2");
    std::vector<Cmp> out;
    out.reserve(static_cast<size_t>(t - 1));
    // sigma_{s+k} sigma_{s+t+k} = |sigma_{s+k}|^2, so each adjacent pair
    // relation is a squared-modulus equality
    for (int k = 1; k <= t - 1; ++k) out.push_back(decide_abs_equal(u, s + k, s + k + 1, emb, prec));
    return out;
}

CriterionVerdict lck_criterion(const UnitSubgroup& group, const EmbeddingSet& emb,
                               Precision prec) {
    const int s = emb.real_count(), t = emb.pair_count();
    CriterionVerdict verdict;
    verdict.precision_bits = prec.target_bits;
    bool any_indeterminate = false, any_fail = false;
    for (const FieldElement& g : group.generators()) {
        GeneratorVerdict gv;
        gv.holds = true;
        if (t >= 2) {
            for (int k = 2; k <= t; ++k) {
                CmpCertificate cert;
                Cmp c = decide_abs_equal(g, s + 1, s + k, emb, prec, &cert);
                gv.comparisons.push_back(cert);
                if (c == Cmp::not_equal) {
                    gv.holds = false;
                    any_fail = true;
                } else if (c == Cmp::indeterminate) {
                    gv.holds = false;
                    any_indeterminate = true;
                }
            }
        }
        verdict.per_generator.push_back(std::move(gv));
    }
    if (any_fail)
        verdict.overall = CriterionVerdict::Outcome::fails;
    else if (any_indeterminate)
        verdict.overall = CriterionVerdict::Outcome::indeterminate;
    else
        verdict.overall = CriterionVerdict::Outcome::holds;
    return verdict;
}

Membership hyperplane_membership(const FieldElement& u, std::array<int, 3> jkl,
                                 const EmbeddingSet& emb, Precision prec,
                                 CmpCertificate* cert) {
    const int s = emb.real_count(), t = emb.pair_count();
    for (int idx : jkl)
        if (idx < 2 || idx > s + t)
            fail(errc::invalid_index, "hyperplane indices range over 2..s+t");
    require_unit(u);
    if (cert) {
        cert->i = jkl[0];
        cert->j = jkl[1];
    }
    // |sigma_1 sigma_j'|^2 and |sigma_k' sigma_l'|^2 as interval products;
    // the product width compounds, so evaluate factors adaptively tighter
    auto approx_adaptive = [&](long bits) {
        long fb = bits;
        while (true) {
            long t1 = fb + 4;
            try {
                RatInterval a =
                    emb.evaluate_abs_sq(u, 1, t1) * emb.evaluate_abs_sq(u, jkl[0], t1);
                RatInterval b =
                    emb.evaluate_abs_sq(u, jkl[1], t1) * emb.evaluate_abs_sq(u, jkl[2], t1);
                if (a.width() <= pow2(-bits) && b.width() <= pow2(-bits))
                    return std::make_pair(a, b);
            } catch (const error& e) {
                if (e.code() != errc::precision_exhausted) throw;
                fail(errc::precision_exhausted, "quadruple product enclosure too wide");
            }
            if (fb >= emb.max_precision_bits())
                fail(errc::precision_exhausted, "quadruple product enclosure too wide");
            fb = std::min(fb * 2, emb.max_precision_bits());
        }
    };

    QPoly mp = minimal_polynomial(u);
    Cmp out;
    if (mp.degree() == 1) {
        out = Cmp::equal; // single embedding value; both products coincide
        if (cert) {
            cert->verdict = out;
            cert->precision_bits = 0;
        }
    } else {
        PairProductData pp = pair_product_data(unit_minpoly_z(mp));
        if (pp.degree <= 1) {
            out = Cmp::equal; // all pairwise products equal
            if (cert) {
                cert->verdict = out;
                cert->precision_bits = 0;
            }
        } else {
            // Both products are roots of the pair product of the pair
            // product. Compute it exactly only when affordable; otherwise
            // bound its degree and norm without expanding it.
            const long quad_exact_cap = 160; // max squared degree we expand exactly
            if (pp.degree * pp.degree <= quad_exact_cap) {
                PairProductData quad = pair_product_data(pp.squarefree);
                out = decide_equal_roots(quad.degree, quad.l2_upper, approx_adaptive, prec, cert);
            } else {
                // degree(R4) = D^2; Mahler measure M(R4) <= ||R2*||_2^(2D)
                // (each root of R4 is a product of two roots of R2*, and
                // M(R2*) <= ||R2*||_2). Monotonicity of the separation
                // bound keeps the upper bounds sound.
                long d4 = pp.degree * pp.degree;
                Int m4 = pow_int(pp.l2_upper, static_cast<unsigned long>(2 * pp.degree));
                out = decide_equal_roots(d4, m4, approx_adaptive, prec, cert);
            }
        }
    }
    switch (out) {
    case Cmp::equal:
        return Membership::on;
    case Cmp::not_equal:
        return Membership::off;
    default:
        return Membership::indeterminate;
    }
}

std::vector<SubfieldBoundRow> subfield_rank_bound(int n, int d, int s, int t) {
    if (n < 1 || s < 0 || t < 0 || s + 2 * t != n)
        fail(errc::dimension_mismatch, "signature does not match the degree: s + 2t != n");
    if (d < 2) fail(errc::divisor_mismatch, "subfield index d must be at least 2");
    if (n % d != 0) fail(errc::divisor_mismatch, "d must divide the degree");
    const int m = n / d; // subfield degree
    std::vector<SubfieldBoundRow> rows;
    for (int t2 = 0; 2 * t2 <= m; ++t2) {
        SubfieldBoundRow row;
        row.t_prime = t2;
        row.s_prime = m - 2 * t2;
        row.rank = row.s_prime + row.t_prime - 1;
        row.satisfies_bound = 2 * t - d * (t2 + 1) < (d - 1) * s;
        rows.push_back(row);
    }
    return rows;
}

Classification classify_element(const FieldElement& u, const EmbeddingSet& emb, Precision prec) {
    const int s = emb.real_count(), t = emb.pair_count();
    require_unit(u);
    for (int k = 1; k <= s; ++k)
        if (emb.sign_at(u, k) <= 0)
            fail(errc::not_totally_positive, "element is not totally positive");
    for (Cmp c : relation_check(u, emb, prec))
        if (c != Cmp::equal)
            fail(errc::hypothesis_failure,
                 "element does not certifiably satisfy the adjacent-pair relations");

    Classification cls;
    QPoly mp = minimal_polynomial(u);
    const int n = emb.size();
    if (mp.degree() < n) {
        cls.kind = Classification::Kind::proper_subfield;
        cls.subfield_degree = mp.degree();
        auto [s2, t2] = signature_of(mp);
        cls.subfield_s = s2;
        cls.subfield_t = t2;
        cls.subfield_rank = s2 + t2 - 1;
        return cls;
    }
    // primitive element: search the hyperplane family
    cls.kind = Classification::Kind::hyperplane;
    for (int j = 2; j <= s + t; ++j)
        for (int k = 2; k <= s + t; ++k)
            for (int l = k; l <= s + t; ++l) {
                Membership m = hyperplane_membership(u, {j, k, l}, emb, prec);
                if (m == Membership::on)
                    cls.triples.push_back({j, k, l});
                else if (m == Membership::indeterminate)
                    ++cls.indeterminate_triples;
            }
    if (cls.triples.empty()) cls.kind = Classification::Kind::anomaly_none_found;
    return cls;
}

AuditReport nolck_audit(const UnitSubgroup& group, int box_radius, const EmbeddingSet& emb,
                        Precision prec) {
    const int s = emb.real_count(), t = emb.pair_count();
    if (s < 1) fail(errc::hypothesis_failure, "audit requires s >= 1");
    if (t < 2) fail(errc::hypothesis_failure, "audit requires t >= 2");
    if (s < 2 * t) fail(errc::hypothesis_failure, "audit requires s >= 2t");
    if (box_radius < 0) fail(errc::invalid_index, "box radius must be nonnegative");

    AuditReport report;
    report.box_radius = box_radius;

    const auto& gens = group.generators();
    const size_t k = gens.size();
    const long base = 2L * box_radius + 1L;

    std::vector<long> exps(k, 0);
    std::vector<Satisfier> satisfiers;
    long indeterminate = 0;

    // odometer over [-B, B]^k
    std::vector<long> odo(k, 0);
    bool running = true;
    while (running) {
        for (size_t i = 0; i < k; ++i) exps[i] = odo[i] - box_radius;
        ++report.units_enumerated;
        FieldElement u = FieldElement::one(group.field());
        for (size_t i = 0; i < k; ++i)
            if (exps[i] != 0) u = u * gens[i].pow(exps[i]);
        // generators are totally positive, so u is too; count and check
        ++report.totally_positive_candidates;
        bool satisfies = true;
        for (Cmp c : relation_check(u, emb, prec)) {
            if (c == Cmp::indeterminate) {
                ++indeterminate;
                satisfies = false;
            } else if (c == Cmp::not_equal) {
                satisfies = false;
            }
        }
        if (satisfies) {
            Satisfier sat{exps, u, classify_element(u, emb, prec)};
            indeterminate += sat.classification.indeterminate_triples;
            satisfiers.push_back(std::move(sat));
        }
        // advance
        size_t pos = 0;
        while (pos < k) {
            if (++odo[pos] < base) break;
            odo[pos] = 0;
            ++pos;
        }
        if (pos == k) running = false;
    }

    std::sort(satisfiers.begin(), satisfiers.end(),
              [](const Satisfier& a, const Satisfier& b) { return a.exponents < b.exponents; });
    report.satisfiers = std::move(satisfiers);
    report.indeterminate_comparisons = indeterminate;

    std::vector<FieldElement> sat_elems;
    sat_elems.reserve(report.satisfiers.size());
    for (const auto& sat : report.satisfiers) sat_elems.push_back(sat.element);
    UnitSubgroup sat_group = UnitSubgroup::create(std::move(sat_elems), emb);
    report.satisfier_rank = subgroup_rank(sat_group, emb, prec);

    if (indeterminate > 0 || !report.satisfier_rank.certified)
        report.conclusion = AuditReport::Conclusion::withheld;
    else if (report.satisfier_rank.rank < s)
        report.conclusion = AuditReport::Conclusion::consistent;
    else
        report.conclusion = AuditReport::Conclusion::inconsistent;

    // side note on the input group: admissible data has log rank s and an
    // s-column projection of full rank
    RankResult group_rank = subgroup_rank(group, emb, prec);
    if (group_rank.certified && group_rank.rank != s) {
        report.ot_admissible = false;
    } else if (group_rank.certified && group_rank.rank == s) {
        // certify rank s of the projection to the first s coordinates
        try {
            std::vector<LogVector> logs;
            for (const auto& g : gens) logs.push_back(log_embedding(g, emb, prec));
            // greedy s x s interval minor on the first s columns
            std::vector<size_t> rows_pick;
            std::vector<int> cols_pick;
            for (size_t j = 0; j < k && static_cast<int>(rows_pick.size()) < s; ++j) {
                for (int c = 0; c < s; ++c) {
                    if (std::find(cols_pick.begin(), cols_pick.end(), c) != cols_pick.end())
                        continue;
                    std::vector<std::vector<RatInterval>> m;
                    std::vector<size_t> rr = rows_pick;
                    rr.push_back(j);
                    std::vector<int> cc = cols_pick;
                    cc.push_back(c);
                    for (size_t r : rr) {
                        std::vector<RatInterval> row;
                        for (int c2 : cc) row.push_back(logs[r].entries[static_cast<size_t>(c2)]);
                        m.push_back(std::move(row));
                    }
                    if (!interval_det(m).contains_zero()) {
                        rows_pick.push_back(j);
                        cols_pick.push_back(c);
                        break;
                    }
                }
            }
            if (static_cast<int>(rows_pick.size()) == s) report.ot_admissible = true;
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
        }
    }
    return report;
}

SignatureVerdict classify_signature(int s, int t) {
    if (s < 1) fail(errc::no_real_embedding, "the construction needs s >= 1");
    if (t < 1) fail(errc::hypothesis_failure, "the construction needs t >= 1");
    SignatureVerdict v;
    if (t == 1) {
        v.lck_exists = true;
        v.reason = "t=1: single modulus, criterion vacuous, metrics exist";
    } else if (s == 1) {
        v.lck_exists = false;
        v.reason = "s=1, t>=2: solvmanifold argument";
    } else if (s >= 2 * t) {
        v.lck_exists = false;
        v.reason = "s>=2t, t>=2: log-lattice rank obstruction";
    } else {
        v.lck_exists = false;
        v.reason = "2<=s<2t, t>=2: unit-degree argument";
    }
    return v;
}

} // namespace otlck
