#include <doctest.h>

#include <random>

#include "otlck/loglattice.hpp"

using namespace otlck;

namespace {

QPoly qp(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return QPoly(std::move(c));
}

FieldPtr cubic() { return NumberField::create(qp({-1, -1, 0, 1})); }
FieldPtr quintic() { return NumberField::create(qp({-1, -1, 0, 0, 0, 1})); }

std::vector<std::vector<Rat>> rows(std::vector<std::vector<long>> r) {
    std::vector<std::vector<Rat>> out;
    for (const auto& row : r) {
        std::vector<Rat> v;
        for (long x : row) v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

TEST_CASE("log embedding of the cubic fundamental unit") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    LogVector lv = log_embedding(x, emb, {128, 4096});
    REQUIRE(lv.entries.size() == 2);
    CHECK(lv.real_count == 1);
    CHECK(lv.pair_count == 1);
    // frozen oracle: log(1.3247179572447454) = 0.2811995743229614
    CHECK(lv.entries[0].lo >= Rat(28119, 100000));
    CHECK(lv.entries[0].hi <= Rat(28120, 100000));
    CHECK(lv.entries[0].width() <= pow2(-128));
    // complex entry is -0.14059978716148... = -log(rho)/2
    CHECK(lv.entries[1].lo >= Rat(-14060, 100000));
    CHECK(lv.entries[1].hi <= Rat(-14059, 100000));
    // Dirichlet identity: x_1 + 2 x_2 = 0 exactly for units
    RatInterval resid = dirichlet_residual(lv);
    CHECK(resid.contains(Rat(0)));
    CHECK(resid.width() <= pow2(-120));
}

TEST_CASE("log embedding rejects non-units") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 64);
    FieldElement two = FieldElement::from_rational(f, Rat(2));
    CHECK_THROWS_AS(log_embedding(two, emb, {64, 1024}), error);
    FieldElement xm2 = FieldElement::generator(f) - two; // norm -5
    CHECK_THROWS_AS(log_embedding(xm2, emb, {64, 1024}), error);
}

TEST_CASE("log embedding of torsion is the zero vector") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 64);
    FieldElement minus_one = FieldElement::from_rational(f, Rat(-1));
    LogVector lv = log_embedding(minus_one, emb, {64, 1024});
    for (const auto& e : lv.entries) {
        CHECK(e.contains(Rat(0)));
        CHECK(e.width() <= pow2(-64));
    }
}

TEST_CASE("integer lattice canonicalization") {
    IntegerLattice l = IntegerLattice::from_rows(rows({{2, 0}, {0, 3}, {2, 3}}), 2);
    CHECK(l.dimension() == 2);
    CHECK(l.rank() == 2);
    CHECK(l.basis() == rows({{2, 0}, {0, 3}}));
    // dependent and zero rows are dropped
    IntegerLattice one = IntegerLattice::from_rows(rows({{1, 2}, {2, 4}, {0, 0}}), 2);
    CHECK(one.rank() == 1);
    CHECK(one.basis() == rows({{1, 2}}));
    // rational rows scale consistently
    std::vector<std::vector<Rat>> half = {{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 2)}};
    IntegerLattice h = IntegerLattice::from_rows(half, 2);
    CHECK(h.rank() == 2);
    CHECK(h.basis()[0][0] == Rat(1, 2));
    // same span, different presentation, same canonical basis
    IntegerLattice l2 = IntegerLattice::from_rows(rows({{2, 3}, {2, 0}}), 2);
    CHECK(l2.basis() == l.basis());
    CHECK_THROWS_AS(IntegerLattice::from_rows(rows({{1, 2, 3}}), 2), error);
}

TEST_CASE("exact lattice membership") {
    IntegerLattice l = IntegerLattice::from_rows(rows({{1, 0}, {0, 2}}), 2);
    CHECK(lattice_membership({Rat(3), Rat(4)}, l));
    CHECK(lattice_membership({Rat(0), Rat(0)}, l));
    CHECK(lattice_membership({Rat(-2), Rat(6)}, l));
    CHECK_FALSE(lattice_membership({Rat(3), Rat(1)}, l));
    CHECK_FALSE(lattice_membership({Rat(1, 2), Rat(0)}, l));
    CHECK(rational_span_membership({Rat(3), Rat(1)}, l));
    IntegerLattice diag = IntegerLattice::from_rows(rows({{1, 1}}), 2);
    CHECK(rational_span_membership({Rat(5), Rat(5)}, diag));
    CHECK_FALSE(rational_span_membership({Rat(5), Rat(4)}, diag));
    CHECK(lattice_membership({Rat(5), Rat(5)}, diag));
    CHECK_FALSE(lattice_membership({Rat(5, 2), Rat(5, 2)}, diag));
}

TEST_CASE("witness avoiding proper sublattices, Z^1") {
    IntegerLattice z1 = IntegerLattice::from_rows(rows({{1}}), 1);
    IntegerLattice zero = IntegerLattice::from_rows(rows({{0}}), 1);
    std::vector<Rat> w = lemma_witness(z1, {zero});
    REQUIRE(w.size() == 1);
    CHECK(w[0] == Rat(1)); // first nonzero shell vector in enumeration order
}

TEST_CASE("witness avoiding proper sublattices, Z^2") {
    IntegerLattice z2 = IntegerLattice::from_rows(rows({{1, 0}, {0, 1}}), 2);
    std::vector<IntegerLattice> subs = {
        IntegerLattice::from_rows(rows({{1, 0}}), 2),
        IntegerLattice::from_rows(rows({{0, 1}}), 2),
        IntegerLattice::from_rows(rows({{1, 1}}), 2),
    };
    std::vector<Rat> w = lemma_witness(z2, subs);
    REQUIRE(w.size() == 2);
    CHECK(lattice_membership(w, z2));
    for (const auto& sub : subs) CHECK_FALSE(lattice_membership(w, sub));
    // deterministic
    CHECK(lemma_witness(z2, subs) == w);
}

TEST_CASE("witness requires proper-rank sublattices") {
    IntegerLattice z2 = IntegerLattice::from_rows(rows({{1, 0}, {0, 1}}), 2);
    IntegerLattice full = IntegerLattice::from_rows(rows({{2, 0}, {0, 2}}), 2);
    CHECK_THROWS_AS(lemma_witness(z2, {full}), error);
    try {
        lemma_witness(z2, {full});
    } catch (const error& e) {
        CHECK(e.code() == errc::full_rank_sublattice);
    }
}

TEST_CASE("randomized witness instances never land in a sublattice") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_int_distribution<int> dim_d(2, 4);
    std::uniform_int_distribution<int> count_d(1, 6);
    int built = 0;
    while (built < 50) {
        int d = dim_d(rng);
        // random full-rank lattice: start from the identity, add noise rows
        std::vector<std::vector<Rat>> base;
        for (int i = 0; i < d; ++i) {
            std::vector<Rat> row(d, Rat(0));
            row[i] = Rat(1 + std::abs(entry(rng)) % 3);
            for (int j = 0; j < d; ++j)
                if (j != i && entry(rng) > 3) row[j] = Rat(entry(rng));
            base.push_back(std::move(row));
        }
        IntegerLattice lattice = IntegerLattice::from_rows(base, d);
        if (lattice.rank() != d) continue;
        int nsub = count_d(rng);
        std::vector<IntegerLattice> subs;
        for (int sidx = 0; sidx < nsub; ++sidx) {
            // span of rank-1..d-1 random integer combinations of the basis
            std::uniform_int_distribution<int> rk_d(1, d - 1);
            int rk = rk_d(rng);
            std::vector<std::vector<Rat>> srows;
            for (int r = 0; r < rk; ++r) {
                std::vector<Rat> acc(d, Rat(0));
                for (int b = 0; b < d; ++b) {
                    Rat c(entry(rng));
                    for (int j = 0; j < d; ++j) acc[j] += c * lattice.basis()[b][j];
                }
                srows.push_back(std::move(acc));
            }
            subs.push_back(IntegerLattice::from_rows(srows, d));
        }
        bool all_proper = true;
        for (const auto& s : subs)
            if (s.rank() >= lattice.rank()) all_proper = false;
        if (!all_proper) continue;
        std::vector<Rat> w = lemma_witness(lattice, subs);
        CHECK(lattice_membership(w, lattice));
        for (const auto& s : subs) CHECK_FALSE(lattice_membership(w, s));
        ++built;
    }
}

TEST_CASE("unit subgroup construction checks units and positivity") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    CHECK_NOTHROW(UnitSubgroup::create({x}, emb)); // sigma_1(x) = 1.32... > 0
    CHECK_THROWS_AS(UnitSubgroup::create({-x}, emb), error);
    CHECK_THROWS_AS(UnitSubgroup::create({FieldElement::from_rational(f, Rat(2))}, emb), error);
    CHECK_NOTHROW(UnitSubgroup::create_units_only({-x}, emb));
    CHECK_THROWS_AS(UnitSubgroup::create_units_only(
                        {FieldElement::from_rational(f, Rat(2))}, emb),
                    error);
}

TEST_CASE("certified rank of unit subgroups") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    Precision prec{128, 8192};

    RankResult r1 = subgroup_rank(UnitSubgroup::create({x}, emb), emb, prec);
    CHECK(r1.certified);
    CHECK(r1.rank == 1);
    CHECK(r1.relations.empty());

    // x and x^2: rank 1 with an exactly verified relation
    RankResult r2 = subgroup_rank(UnitSubgroup::create({x, x * x}, emb), emb, prec);
    CHECK(r2.certified);
    CHECK(r2.rank == 1);
    REQUIRE(r2.relations.size() == 1);
    const auto& rel = r2.relations[0];
    REQUIRE(rel.size() == 2);
    // the relation must actually hold: x^a (x^2)^b = +-1
    FieldElement prod = x.pow(rel[0].get_si()) * (x * x).pow(rel[1].get_si());
    CHECK((prod == FieldElement::one(f) ||
           prod == FieldElement::from_rational(f, Rat(-1))));

    // x and x + 1 = x^3: dependent, rank 1
    FieldElement xp1 = x + FieldElement::one(f);
    RankResult r3 = subgroup_rank(UnitSubgroup::create({x, xp1}, emb), emb, prec);
    CHECK(r3.certified);
    CHECK(r3.rank == 1);
    REQUIRE(r3.relations.size() == 1);

    // empty group
    RankResult r0 = subgroup_rank(UnitSubgroup::create({}, emb), emb, prec);
    CHECK(r0.certified);
    CHECK(r0.rank == 0);
}

TEST_CASE("rank 2 subgroup in the quintic") {
    FieldPtr f = quintic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 128);
    FieldElement x = FieldElement::generator(f);
    FieldElement u = x * x + FieldElement::one(f); // norm Res(f, x^2+1) = 1
    CHECK(is_unit(u));
    RankResult r = subgroup_rank(UnitSubgroup::create_units_only({x, u}, emb), emb, {128, 8192});
    CHECK(r.certified);
    CHECK(r.rank == 2);
    CHECK(r.relations.empty());
}

TEST_CASE("torsion-only groups have rank 0") {
    FieldPtr f = cubic();
    EmbeddingSet emb = EmbeddingSet::isolate(f, 64);
    FieldElement minus_one = FieldElement::from_rational(f, Rat(-1));
    RankResult r = subgroup_rank(UnitSubgroup::create_units_only({minus_one}, emb), emb,
                                 {64, 4096});
    CHECK(r.certified);
    CHECK(r.rank == 0);
    REQUIRE(r.relations.size() == 1);
}

TEST_CASE("interval determinants certify nonsingularity") {
    auto pt = [](long v) { return RatInterval::point(Rat(v)); };
    std::vector<std::vector<RatInterval>> m = {{pt(2), pt(1)}, {pt(1), pt(1)}};
    RatInterval d = interval_det(m);
    CHECK(d.contains(Rat(1)));
    CHECK(d.width() == Rat(0));
    std::vector<std::vector<RatInterval>> wide = {
        {RatInterval(Rat(-1), Rat(1)), pt(0)},
        {pt(0), pt(1)},
    };
    CHECK(interval_det(wide).contains_zero());
}
