#include "otlck/loglattice.hpp"

#include <algorithm>
#include <cassert>

namespace otlck {

// --- log embedding -----------------------------------------------------

LogVector log_embedding(const FieldElement& u, const EmbeddingSet& emb, Precision prec) {
    if (!u.field()->same_as(*emb.field()))
        fail(errc::field_mismatch, "element from a different field");
    if (!is_unit(u)) fail(errc::not_a_unit, "log embedding is defined for units");
    const int s = emb.real_count(), t = emb.pair_count();
    LogVector out;
    out.real_count = s;
    out.pair_count = t;
    out.entries.reserve(static_cast<size_t>(s + t));
    Rat tol = pow2(-prec.target_bits);
    for (int i = 1; i <= s + t; ++i) {
        long p = std::max(prec.target_bits, 64L);
        while (true) {
            RatInterval q = emb.evaluate_abs_sq(u, i, p);
            if (sign(q.lo) > 0) {
                // log|sigma_i(u)| = log(|sigma_i(u)|^2) / 2
                RatInterval lg = log_enclosure(q, p + 32);
                lg = Rat(1, 2) * lg;
                // margin leaves room for the outward dyadic rounding below
                if (lg.width() <= tol * Rat(3, 4)) {
                    out.entries.push_back(lg.round_outward(prec.target_bits + 16));
                    break;
                }
            }
            if (p >= prec.max_bits)
                fail(errc::precision_exhausted, "log embedding hit the precision cap");
            p = std::min(p * 2, prec.max_bits);
        }
    }
    return out;
}

RatInterval dirichlet_residual(const LogVector& v) {
    RatInterval acc;
    for (int i = 0; i < v.real_count; ++i) acc = acc + v.entries[static_cast<size_t>(i)];
    for (int i = 0; i < v.pair_count; ++i)
        acc = acc + Rat(2) * v.entries[static_cast<size_t>(v.real_count + i)];
    return acc;
}

// --- lattices ----------------------------------------------------------

namespace {

// Row-style Hermite normalization of integer rows: echelon with positive
// pivots, entries above each pivot reduced into [0, pivot). Exact.
std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> rows, int dim) {
    std::vector<std::vector<Int>> basis;
    size_t done = 0; // rows [0, done) form the echelon so far
    for (int col = 0; col < dim && done < rows.size(); ++col) {
        // clear column col below the echelon using gcd steps
        while (true) {
            size_t nonzero = rows.size();
            for (size_t r = done; r < rows.size(); ++r)
                if (rows[r][static_cast<size_t>(col)] != 0) {
                    nonzero = r;
                    break;
                }
            if (nonzero == rows.size()) break; // column clear
            size_t second = rows.size();
            for (size_t r = nonzero + 1; r < rows.size(); ++r)
                if (rows[r][static_cast<size_t>(col)] != 0) {
                    second = r;
                    break;
                }
            if (second == rows.size()) {
                std::swap(rows[done], rows[nonzero]);
                if (sign(rows[done][static_cast<size_t>(col)]) < 0)
                    for (auto& v : rows[done]) v = -v;
                ++done;
                break;
            }
            // reduce the larger entry by the smaller
            Int& a = rows[nonzero][static_cast<size_t>(col)];
            Int& b = rows[second][static_cast<size_t>(col)];
            Int q;
            mpz_tdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
            for (size_t j = 0; j < rows[second].size(); ++j)
                rows[second][j] -= q * rows[nonzero][j];
            if (rows[second][static_cast<size_t>(col)] == 0) continue;
            std::swap(rows[nonzero], rows[second]);
        }
    }
    rows.resize(done);
    // reduce entries above each pivot
    for (size_t i = 0; i < rows.size(); ++i) {
        int pcol = 0;
        while (rows[i][static_cast<size_t>(pcol)] == 0) ++pcol;
        const Int& pivot = rows[i][static_cast<size_t>(pcol)];
        for (size_t r = 0; r < i; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][static_cast<size_t>(pcol)].get_mpz_t(),
                       pivot.get_mpz_t());
            if (q == 0) continue;
            for (size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= q * rows[i][j];
        }
    }
    return rows;
}

} // namespace

IntegerLattice IntegerLattice::from_rows(std::vector<std::vector<Rat>> rows, int dimension) {
    if (dimension < 1) fail(errc::dimension_mismatch, "lattice dimension must be positive");
    IntegerLattice lat;
    lat.dimension_ = dimension;
    if (rows.empty()) return lat;
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != dimension)
            fail(errc::dimension_mismatch, "lattice row length does not match the dimension");
    // common denominator over all rows, so the Z-span scales uniformly
    Int den(1);
    for (const auto& r : rows)
        for (const Rat& v : r)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<std::vector<Int>> zrows;
    zrows.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Int> zr;
        zr.reserve(r.size());
        for (const Rat& v : r) {
            Rat scaled = v * Rat(den);
            zr.push_back(scaled.get_num());
        }
        zrows.push_back(std::move(zr));
    }
    auto hnf = hermite_rows(std::move(zrows), dimension);
    Rat dq(den);
    for (auto& r : hnf) {
        std::vector<Rat> row;
        row.reserve(r.size());
        for (Int& v : r) row.push_back(Rat(v) / dq);
        lat.basis_.push_back(std::move(row));
    }
    return lat;
}

namespace {

// Reduce v against the echelon basis; returns the coefficients used, or
// nothing when a pivot division fails the integrality requirement.
bool reduce_against(const IntegerLattice& lattice, std::vector<Rat> v, bool require_integer) {
    for (const auto& row : lattice.basis()) {
        int pcol = 0;
        while (sign(row[static_cast<size_t>(pcol)]) == 0) ++pcol;
        Rat c = v[static_cast<size_t>(pcol)] / row[static_cast<size_t>(pcol)];
        if (require_integer && !is_integer(c)) return false;
        if (sign(c) != 0)
            for (size_t j = 0; j < v.size(); ++j) v[j] -= c * row[j];
    }
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sign(x) == 0; });
}

} // namespace

bool lattice_membership(const std::vector<Rat>& v, const IntegerLattice& lattice) {
    if (static_cast<int>(v.size()) != lattice.dimension())
        fail(errc::dimension_mismatch, "vector length does not match the lattice dimension");
    return reduce_against(lattice, v, true);
}

bool rational_span_membership(const std::vector<Rat>& v, const IntegerLattice& lattice) {
    if (static_cast<int>(v.size()) != lattice.dimension())
        fail(errc::dimension_mismatch, "vector length does not match the lattice dimension");
    return reduce_against(lattice, v, false);
}

std::vector<Rat> lemma_witness(const IntegerLattice& lattice,
                               const std::vector<IntegerLattice>& sublattices) {
    const int r = lattice.rank();
    if (r == 0)
        fail(errc::full_rank_sublattice, "the zero lattice admits no witness");
    for (const auto& sub : sublattices) {
        if (sub.dimension() != lattice.dimension())
            fail(errc::dimension_mismatch, "sublattice dimension mismatch");
        if (sub.rank() >= r)
            fail(errc::full_rank_sublattice,
                 "sublattice rank " + std::to_string(sub.rank()) +
                     " is not below the lattice rank " + std::to_string(r));
    }
    // enumerate coordinate vectors by sup-norm shells; per coordinate the
    // digit order is 0, 1, -1, 2, -2, ...
    auto digit = [](long idx) -> long {
        if (idx == 0) return 0;
        long mag = (idx + 1) / 2;
        return idx % 2 == 1 ? mag : -mag;
    };
    for (long shell = 1;; ++shell) {
        const long digits = 2 * shell + 1;
        std::vector<long> odo(static_cast<size_t>(r), 0);
        while (true) {
            long sup = 0;
            for (long d : odo) sup = std::max(sup, std::abs(digit(d)));
            if (sup == shell) {
                std::vector<Rat> v(static_cast<size_t>(lattice.dimension()), Rat(0));
                for (int i = 0; i < r; ++i) {
                    long coef = digit(odo[static_cast<size_t>(i)]);
                    if (coef == 0) continue;
                    const auto& row = lattice.basis()[static_cast<size_t>(i)];
                    for (size_t j = 0; j < v.size(); ++j) v[j] += Rat(coef) * row[j];
                }
                bool in_some = false;
                for (const auto& sub : sublattices)
                    if (lattice_membership(v, sub)) {
                        in_some = true;
                        break;
                    }
                if (!in_some) return v;
            }
            // odometer step
            size_t pos = 0;
            while (pos < odo.size()) {
                if (++odo[pos] < digits) break;
                odo[pos] = 0;
                ++pos;
            }
            if (pos == odo.size()) break;
        }
    }
}

// --- unit subgroups and rank -------------------------------------------

UnitSubgroup UnitSubgroup::create(std::vector<FieldElement> generators,
                                  const EmbeddingSet& emb) {
    for (size_t i = 0; i < generators.size(); ++i) {
        const FieldElement& g = generators[i];
        if (!g.field()->same_as(*emb.field()))
            fail(errc::field_mismatch, "generator " + std::to_string(i + 1) +
                                           " lives in a different field");
        if (!is_unit(g))
            fail(errc::not_a_unit, "generator " + std::to_string(i + 1) + " is not a unit");
        for (int k = 1; k <= emb.real_count(); ++k)
            if (emb.sign_at(g, k) <= 0)
                fail(errc::not_totally_positive,
                     "generator " + std::to_string(i + 1) +
                         " is not positive at real embedding " + std::to_string(k));
    }
    return UnitSubgroup(emb.field(), std::move(generators));
}

UnitSubgroup UnitSubgroup::create_units_only(std::vector<FieldElement> generators,
                                             const EmbeddingSet& emb) {
    for (size_t i = 0; i < generators.size(); ++i) {
        const FieldElement& g = generators[i];
        if (!g.field()->same_as(*emb.field()))
            fail(errc::field_mismatch, "generator " + std::to_string(i + 1) +
                                           " lives in a different field");
        if (!is_unit(g))
            fail(errc::not_a_unit, "generator " + std::to_string(i + 1) + " is not a unit");
    }
    return UnitSubgroup(emb.field(), std::move(generators));
}

RatInterval interval_det(const std::vector<std::vector<RatInterval>>& m) {
    const size_t n = m.size();
    if (n == 0) return RatInterval::point(Rat(1));
    if (n == 1) return m[0][0];
    RatInterval acc;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<RatInterval>> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            std::vector<RatInterval> row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        RatInterval term = m[0][j] * interval_det(minor);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

namespace {

// Textbook LLL (delta = 3/4) on integer rows, exact rational
// Gram-Schmidt. Row count and entry sizes here are small.
void lll_reduce(std::vector<std::vector<Int>>& b) {
    const size_t n = b.size();
    if (n < 2) return;
    // rational GSO data recomputed on structural change
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    auto recompute = [&]() {
        std::vector<std::vector<Rat>> gso(n, std::vector<Rat>(b[0].size(), Rat(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < b[i].size(); ++k) gso[i][k] = Rat(b[i][k]);
            for (size_t j = 0; j < i; ++j) {
                if (sign(B[j]) == 0) {
                    mu[i][j] = 0;
                    continue;
                }
                Rat num(0);
                for (size_t k = 0; k < b[i].size(); ++k) num += Rat(b[i][k]) * gso[j][k];
                mu[i][j] = num / B[j];
                for (size_t k = 0; k < gso[i].size(); ++k) gso[i][k] -= mu[i][j] * gso[j][k];
            }
            B[i] = Rat(0);
            for (size_t k = 0; k < gso[i].size(); ++k) B[i] += gso[i][k] * gso[i][k];
        }
    };
    recompute();
    size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 100000) fail(errc::precision_exhausted, "lattice reduction stalled");
        // size reduction
        for (size_t j = k; j-- > 0;) {
            Rat m = mu[k][j];
            Int q;
            Rat half = m + Rat(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
            if (q != 0) {
                for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
                recompute();
            }
        }
        // Lovasz condition
        Rat lhs = B[k];
        Rat rhs = (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            recompute();
            if (k > 1) --k;
        }
    }
}

} // namespace

RankResult subgroup_rank(const UnitSubgroup& group, const EmbeddingSet& emb, Precision prec) {
    RankResult result;
    const auto& gens = group.generators();
    const size_t k = gens.size();
    if (k == 0) {
        result.certified = true;
        result.rank = 0;
        result.precision_bits_used = 0;
        return result;
    }
    const int cols = emb.real_count() + emb.pair_count();
    const FieldPtr& field = group.field();

    for (long p = std::min(std::max(prec.target_bits, 64L), prec.max_bits);;
         p = std::min(p * 2, prec.max_bits)) {
        std::vector<LogVector> logs;
        logs.reserve(k);
        bool log_ok = true;
        try {
            for (const auto& g : gens) logs.push_back(log_embedding(g, emb, {p, prec.max_bits}));
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            log_ok = false;
        }
        if (log_ok) {
            // greedy certified-independent subset
            std::vector<size_t> indep, dependent;
            std::vector<int> chosen_cols;
            for (size_t j = 0; j < k; ++j) {
                bool extended = false;
                for (int c = 0; c < cols && !extended; ++c) {
                    if (std::find(chosen_cols.begin(), chosen_cols.end(), c) != chosen_cols.end())
                        continue;
                    std::vector<std::vector<RatInterval>> m;
                    std::vector<size_t> trial_rows = indep;
                    trial_rows.push_back(j);
                    std::vector<int> trial_cols = chosen_cols;
                    trial_cols.push_back(c);
                    for (size_t r : trial_rows) {
                        std::vector<RatInterval> row;
                        for (int cc : trial_cols)
                            row.push_back(logs[r].entries[static_cast<size_t>(cc)]);
                        m.push_back(std::move(row));
                    }
                    RatInterval det = interval_det(m);
                    if (!det.contains_zero()) {
                        indep.push_back(j);
                        chosen_cols.push_back(c);
                        extended = true;
                    }
                }
                if (!extended) dependent.push_back(j);
            }

            // every dependent generator needs an exactly verified relation
            std::vector<std::vector<Int>> relations;
            bool all_verified = true;
            for (size_t j : dependent) {
                std::vector<size_t> idx = indep;
                idx.push_back(j);
                const size_t rows = idx.size();
                const long q = std::max(32L, p - 16);
                std::vector<std::vector<Int>> mat(rows);
                for (size_t r = 0; r < rows; ++r) {
                    auto& row = mat[r];
                    row.assign(rows + static_cast<size_t>(cols), Int(0));
                    row[r] = 1;
                    for (int c = 0; c < cols; ++c) {
                        Rat scaled = logs[idx[r]].entries[static_cast<size_t>(c)].mid() * pow2(q);
                        Rat half = scaled + Rat(1, 2);
                        Int rounded;
                        mpz_fdiv_q(rounded.get_mpz_t(), half.get_num().get_mpz_t(),
                                   half.get_den().get_mpz_t());
                        row[rows + static_cast<size_t>(c)] = rounded;
                    }
                }
                lll_reduce(mat);
                bool found = false;
                for (const auto& cand : mat) {
                    // exponent part must involve the dependent generator
                    if (cand[rows - 1] == 0) continue;
                    // exact verification: product of powers is +-1
                    bool fits = true;
                    for (size_t r = 0; r < rows; ++r)
                        if (!cand[r].fits_slong_p()) fits = false;
                    if (!fits) continue;
                    FieldElement prod = FieldElement::one(field);
                    for (size_t r = 0; r < rows; ++r) {
                        long e = cand[r].get_si();
                        if (e != 0) prod = prod * gens[idx[r]].pow(e);
                    }
                    FieldElement one = FieldElement::one(field);
                    if (prod == one || prod == -one) {
                        std::vector<Int> rel(k, Int(0));
                        for (size_t r = 0; r < rows; ++r) rel[idx[r]] = cand[r];
                        relations.push_back(std::move(rel));
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    all_verified = false;
                    break;
                }
            }

            if (all_verified) {
                result.certified = true;
                result.rank = static_cast<int>(indep.size());
                result.relations = std::move(relations);
                result.precision_bits_used = p;
                return result;
            }
        }
        if (p >= prec.max_bits) {
            result.certified = false;
            result.rank = -1;
            result.precision_bits_used = p;
            return result;
        }
    }
}

} // namespace otlck
