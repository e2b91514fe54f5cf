// Acceptance gate: one line per criterion, PASS or FAIL, exercising the
// library end to end (including the installed CLI binary). Returns the
// number of failed criteria as the process exit code.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "otlck/io.hpp"
#include "support/fieldsearch.hpp"
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

struct CliOutcome {
    int exit_code = -1;
    nlohmann::ordered_json report;
};

CliOutcome run_cli(const std::string& args) {
    std::string cmd = std::string(OTLCK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int rc = pclose(pipe);
    CliOutcome res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.report = nlohmann::ordered_json::parse(out);
    return res;
}

std::filesystem::path write_input(const std::string& name, const std::string& body) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
}

// ---------------------------------------------------------------------

// 1. Signature correctness against trivial values and the independent
//    grid-count oracle, under 1 s per field.
bool criterion_signature(std::string& detail) {
    using clock = std::chrono::steady_clock;
    struct Case {
        std::vector<long> coeffs;
        std::pair<int, int> expect;
    };
    std::vector<Case> cases = {
        {{-2, 0, 1}, {2, 0}},
        {{1, 0, 1}, {0, 1}},
        {{-1, -1, 0, 1}, {1, 1}},
        {{-1, -1, 0, 0, 0, 1}, {1, 2}},
    };
    for (const auto& c : cases) {
        auto t0 = clock::now();
        auto sig = signature_of(qp(c.coeffs));
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (sig != c.expect) {
            detail = "signature mismatch";
            return false;
        }
        if (secs >= 1.0) {
            detail = "signature exceeded 1 s";
            return false;
        }
    }
    // oracle agreement on the nontrivial fields
    std::vector<double> dcubic = {-1, -1, 0, 1};
    std::vector<double> dquintic = {-1, -1, 0, 0, 0, 1};
    if (oracle::real_root_count(dcubic, 4.0, 40000) != 1 ||
        oracle::real_root_count(dquintic, 4.0, 40000) != 1) {
        detail = "grid oracle disagrees";
        return false;
    }
    return true;
}

// 2. Dirichlet identity for 100 random units at 128 and 512 bits.
bool criterion_dirichlet(std::string& detail) {
    struct FieldGens {
        FieldPtr field;
        std::vector<FieldElement> gens;
    };
    std::vector<FieldGens> fields;
    {
        FieldPtr f = cubic();
        fields.push_back({f, {FieldElement::generator(f)}});
    }
    {
        FieldPtr f = quintic();
        FieldElement x = FieldElement::generator(f);
        fields.push_back({f, {x, x * x + FieldElement::one(f)}});
    }
    {
        FieldPtr f = sextic();
        FieldElement x = FieldElement::generator(f);
        fields.push_back({f, {x, x * x + FieldElement::one(f) + x}});
    }
    // verify generator unit status up front; drop non-units rather than guess
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<long> exp_d(-6, 6);
    int done = 0;
    for (const auto& fg : fields) {
        EmbeddingSet emb = EmbeddingSet::isolate(fg.field, 128);
        std::vector<FieldElement> gens;
        for (const auto& g : fg.gens)
            if (is_unit(g)) gens.push_back(g);
        if (gens.empty()) {
            detail = "no verified generators for a test field";
            return false;
        }
        int quota = done == 0 ? 34 : 33;
        for (int i = 0; i < quota; ++i) {
            FieldElement u = FieldElement::one(fg.field);
            bool trivial = true;
            for (const auto& g : gens) {
                long e = exp_d(rng);
                if (e != 0) trivial = false;
                u = u * g.pow(e);
            }
            if (trivial) u = u * gens.front();
            for (long bits : {128L, 512L}) {
                LogVector lv = log_embedding(u, emb, {bits, 16384});
                if (!dirichlet_residual(lv).contains(Rat(0))) {
                    detail = "residual excludes 0";
                    return false;
                }
            }
            ++done;
        }
    }
    if (done < 100) {
        detail = "fewer than 100 units exercised";
        return false;
    }
    return true;
}

// 3. CLI trichotomy endpoints with certified comparisons.
bool criterion_cli_endpoints(std::string& detail) {
    auto cpath = write_input("otlck_acc_cubic.in", "minpoly: -1 -1 0 1\ngenerator: 0 1 0\n");
    auto qpath = write_input("otlck_acc_quintic.in",
                             "minpoly: -1 -1 0 0 0 1\ngenerator: 0 1 0 0 0\n");
    CliOutcome holds = run_cli("lck-check " + cpath.string());
    if (holds.exit_code != 0 || holds.report.at("status") != "holds") {
        detail = "cubic lck-check did not hold (exit " + std::to_string(holds.exit_code) + ")";
        return false;
    }
    CliOutcome fails = run_cli("lck-check " + qpath.string());
    if (fails.exit_code != 1 || fails.report.at("status") != "fails") {
        detail = "quintic lck-check did not fail (exit " + std::to_string(fails.exit_code) + ")";
        return false;
    }
    auto cmp = fails.report.at("criterion").at("per_generator").at(0).at("comparisons").at(0);
    bool certified = cmp.at("by_disjointness").get<bool>() || !cmp.at("separation_bits").is_null();
    if (!certified) {
        detail = "comparison lacks a certificate";
        return false;
    }
    return true;
}

// 4. Verdict stability at 4x precision over the comparison corpus.
bool criterion_separation_stability(std::string& detail) {
    struct Item {
        FieldPtr field;
        FieldElement u;
        int i, j;
    };
    std::vector<Item> corpus;
    {
        FieldPtr f = quintic();
        FieldElement x = FieldElement::generator(f);
        corpus.push_back({f, x, 2, 3});
        corpus.push_back({f, x * x, 2, 3});
        corpus.push_back({f, x.inverse(), 2, 3});
    }
    {
        FieldPtr f = sextic();
        FieldElement x = FieldElement::generator(f);
        corpus.push_back({f, x, 3, 4});
        corpus.push_back({f, x * x, 3, 4});
        corpus.push_back({f, x * x * x, 3, 4});
        corpus.push_back({f, (x * x).inverse(), 3, 4});
    }
    auto found = fieldsearch::find_audit_field();
    if (found) {
        FieldElement g1 = found->gens[0];
        FieldElement g2 = found->gens[1];
        corpus.push_back({found->field, g1, 5, 6});
        corpus.push_back({found->field, g2, 5, 6});
        corpus.push_back({found->field, g1 * g2, 5, 6});
    }
    for (const auto& item : corpus) {
        EmbeddingSet emb = EmbeddingSet::isolate(item.field, 128);
        Cmp base = decide_abs_equal(item.u, item.i, item.j, emb, {128, 16384});
        Cmp high = decide_abs_equal(item.u, item.i, item.j, emb, {512, 16384});
        if (base == Cmp::indeterminate) {
            detail = "baseline comparison indeterminate";
            return false;
        }
        if (base != high) {
            detail = "verdict changed under 4x precision";
            return false;
        }
    }
    return true;
}

// 5. Constructive witness on 50 randomized lattice instances.
bool criterion_lemma_witness(std::string& detail) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_int_distribution<int> dim_d(2, 4);
    std::uniform_int_distribution<int> count_d(1, 6);
    int built = 0;
    int attempts = 0;
    while (built < 50 && attempts < 5000) {
        ++attempts;
        int d = dim_d(rng);
        std::vector<std::vector<Rat>> base;
        for (int i = 0; i < d; ++i) {
            std::vector<Rat> row(d, Rat(0));
            row[i] = Rat(1 + (std::abs(entry(rng)) % 3));
            for (int j = 0; j < d; ++j)
                if (j != i && entry(rng) > 3) row[j] = Rat(entry(rng));
            base.push_back(std::move(row));
        }
        IntegerLattice lattice = IntegerLattice::from_rows(base, d);
        if (lattice.rank() != d) continue;
        int nsub = count_d(rng);
        std::vector<IntegerLattice> subs;
        for (int sidx = 0; sidx < nsub; ++sidx) {
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
        std::vector<Rat> w = lemma_witness(lattice, subs);
        if (!lattice_membership(w, lattice)) {
            detail = "witness left the lattice";
            return false;
        }
        for (const auto& s : subs) {
            if (lattice_membership(w, s)) {
                detail = "witness fell into a sublattice";
                return false;
            }
        }
        ++built;
    }
    if (built < 50) {
        detail = "could not build 50 instances";
        return false;
    }
    return true;
}

// 6. Exhaustive subfield bound table for n <= 40.
bool criterion_subfield_bound(std::string& detail) {
    long rows = 0;
    for (int n = 8; n <= 40; ++n) {
        for (int t = 2; 4 * t <= n; ++t) {
            int s = n - 2 * t;
            if (s < 2 * t || s < 1) continue;
            for (int d = 2; d < n; ++d) {
                if (n % d != 0) continue;
                for (const auto& r : subfield_rank_bound(n, d, s, t)) {
                    ++rows;
                    if (r.rank != r.s_prime + r.t_prime - 1 || r.rank >= s || !r.satisfies_bound) {
                        detail = "bound violated at n=" + std::to_string(n) +
                                 " d=" + std::to_string(d);
                        return false;
                    }
                }
            }
        }
    }
    if (rows == 0) {
        detail = "empty enumeration";
        return false;
    }
    return true;
}

// 7. Desk-scale audit at B = 2 and 256 bits on a searched (4,2) octic.
bool criterion_audit(std::string& detail) {
    auto found = fieldsearch::find_audit_field();
    if (!found) {
        detail = "field search failed";
        return false;
    }
    EmbeddingSet emb = EmbeddingSet::isolate(found->field, 256);
    UnitSubgroup group = UnitSubgroup::create(found->gens, emb);
    RankResult gr = subgroup_rank(group, emb, {256, 16384});
    if (!gr.certified || gr.rank != 2) {
        detail = "generators not certified independent";
        return false;
    }
    AuditReport rep = nolck_audit(group, 2, emb, {256, 16384});
    if (rep.conclusion != AuditReport::Conclusion::consistent) {
        detail = "audit conclusion not consistent";
        return false;
    }
    if (!rep.satisfier_rank.certified || rep.satisfier_rank.rank >= 4) {
        detail = "satisfier rank not certified below s";
        return false;
    }
    if (rep.units_enumerated != 25) {
        detail = "expected 25 exponent vectors";
        return false;
    }
    for (const auto& s : rep.satisfiers) {
        bool ok = s.classification.kind == Classification::Kind::proper_subfield ||
                  s.classification.kind == Classification::Kind::hyperplane;
        if (!ok) {
            detail = "unclassified satisfier";
            return false;
        }
    }
    return true;
}

// 8. Criterion verdict invariance under generating-set transformations.
bool criterion_invariance(std::string& detail) {
    Precision prec{128, 16384};
    struct Setup {
        FieldPtr field;
        std::vector<FieldElement> gens;
    };
    std::vector<Setup> setups;
    {
        FieldPtr f = cubic();
        FieldElement x = FieldElement::generator(f);
        setups.push_back({f, {x, x * x}});
    }
    {
        FieldPtr f = quintic();
        FieldElement x = FieldElement::generator(f);
        setups.push_back({f, {x, x * x + FieldElement::one(f)}});
    }
    {
        FieldPtr f = sextic();
        FieldElement x = FieldElement::generator(f);
        setups.push_back({f, {x * x, x * x * x * x}});
    }
    auto found = fieldsearch::find_audit_field();
    if (found) setups.push_back({found->field, found->gens});
    for (const auto& st : setups) {
        EmbeddingSet emb = EmbeddingSet::isolate(st.field, 128);
        FieldElement g1 = st.gens[0];
        FieldElement g2 = st.gens[1];
        auto verdict = [&](std::vector<FieldElement> gens) {
            return lck_criterion(UnitSubgroup::create_units_only(std::move(gens), emb), emb, prec)
                .overall;
        };
        auto base = verdict({g1, g2});
        if (base == CriterionVerdict::Outcome::indeterminate) {
            detail = "baseline verdict indeterminate";
            return false;
        }
        if (verdict({g1 * g2, g2}) != base || verdict({g1.inverse(), g2}) != base ||
            verdict({g1, g2.inverse()}) != base || verdict({g2, g1}) != base) {
            detail = "verdict changed under a generating-set move";
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<bool(std::string&)> run;
        double limit_seconds;
    };
    std::vector<Criterion> criteria = {
        {1, "signature correctness vs. independent oracle", criterion_signature, 10},
        {2, "Dirichlet identity for 100 random units", criterion_dirichlet, 30},
        {3, "CLI trichotomy endpoints with certificates", criterion_cli_endpoints, 5},
        {4, "comparison verdicts stable at 4x precision", criterion_separation_stability, 120},
        {5, "constructive witness on 50 random lattices", criterion_lemma_witness, 10},
        {6, "subfield rank bound, exhaustive n <= 40", criterion_subfield_bound, 1},
        {7, "desk-scale audit on a (4,2) octic at B=2", criterion_audit, 600},
        {8, "criterion invariance under generator moves", criterion_invariance, 300},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > c.limit_seconds) {
            ok = false;
            detail = "runtime limit exceeded";
        }
        char line[256];
        std::snprintf(line, sizeof line, "criterion %d: %s — %s (%.2f s)%s%s", c.number,
                      ok ? "PASS" : "FAIL", c.name, secs, detail.empty() ? "" : " — ",
                      detail.c_str());
        std::cout << line << std::endl;
        if (!ok) ++failed;
    }
    return failed;
}
