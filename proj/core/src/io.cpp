#include "otlck/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace otlck::io {

using nlohmann::ordered_json;

// --- input parsing -----------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Rat parse_rat_at(const std::string& tok, int line) {
    try {
        return parse_rational(tok);
    } catch (const error&) {
        fail(errc::parse_error, "line " + std::to_string(line) + ": invalid rational '" + tok + "'");
    }
}

std::vector<Rat> parse_vector(const std::string& text, int line) {
    std::vector<Rat> out;
    for (const auto& tok : tokens(text)) out.push_back(parse_rat_at(tok, line));
    if (out.empty()) fail(errc::parse_error, "line " + std::to_string(line) + ": empty vector");
    return out;
}

std::vector<std::vector<Rat>> parse_rows(const std::string& text, int line) {
    std::vector<std::vector<Rat>> rows;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ';')) rows.push_back(parse_vector(piece, line));
    if (rows.empty()) fail(errc::parse_error, "line " + std::to_string(line) + ": empty row list");
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            fail(errc::parse_error,
                 "line " + std::to_string(line) + ": rows have inconsistent lengths");
    return rows;
}

} // namespace

InputSpec parse_input(std::istream& in) {
    InputSpec spec;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        size_t colon = s.find(':');
        if (colon == std::string::npos)
            fail(errc::parse_error, "line " + std::to_string(line) + ": expected 'key: values'");
        std::string key = trim(s.substr(0, colon));
        std::string value = trim(s.substr(colon + 1));
        if (key == "minpoly") {
            if (spec.minpoly)
                fail(errc::parse_error, "line " + std::to_string(line) + ": duplicate minpoly");
            std::vector<Rat> coeffs = parse_vector(value, line);
            for (const Rat& c : coeffs)
                if (!is_integer(c))
                    fail(errc::parse_error, "line " + std::to_string(line) +
                                                ": minpoly coefficients must be integers");
            spec.minpoly = QPoly(std::move(coeffs));
        } else if (key == "generator") {
            spec.generators.push_back(parse_vector(value, line));
        } else if (key == "lattice") {
            if (spec.lattice)
                fail(errc::parse_error, "line " + std::to_string(line) + ": duplicate lattice");
            spec.lattice = parse_rows(value, line);
        } else if (key == "sublattice") {
            spec.sublattices.push_back(parse_rows(value, line));
        } else {
            fail(errc::parse_error, "line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    return spec;
}

InputSpec parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open input file '" + path + "'");
    return parse_input(in);
}

// --- report helpers ----------------------------------------------------

namespace {

ordered_json interval_json(const RatInterval& x, int digits) {
    ordered_json j;
    j["lo"] = decimal_string(x.lo, digits);
    j["hi"] = decimal_string(x.hi, digits);
    Rat w = x.width();
    if (sign(w) == 0)
        j["width_log2"] = nullptr;
    else
        j["width_log2"] = ceil_log2(w);
    return j;
}

ordered_json box_json(const ComplexBox& z, int digits) {
    ordered_json j;
    j["re"] = interval_json(z.re, digits);
    j["im"] = interval_json(z.im, digits);
    return j;
}

ordered_json field_json(const FieldPtr& field) {
    ordered_json j;
    ordered_json coeffs = ordered_json::array();
    for (const Rat& c : field->minpoly().c) coeffs.push_back(to_string(c));
    j["minpoly"] = coeffs;
    j["degree"] = field->degree();
    j["s"] = field->real_embeddings();
    j["t"] = field->complex_pairs();
    return j;
}

ordered_json embeddings_json(const EmbeddingSet& emb, const Options& opt) {
    ordered_json j;
    ordered_json reals = ordered_json::array();
    for (int k = 0; k < emb.real_count(); ++k)
        reals.push_back(interval_json(emb.real_root(k, 48), opt.display_digits));
    j["real"] = reals;
    ordered_json upper = ordered_json::array();
    for (int k = 0; k < emb.pair_count(); ++k)
        upper.push_back(box_json(emb.upper_root(k, 48), opt.display_digits));
    j["upper"] = upper;
    j["order"] = "real ascending, then upper half plane by (re, im); "
                 "conjugates follow their partners";
    return j;
}

ordered_json rationals_json(const std::vector<Rat>& v) {
    ordered_json a = ordered_json::array();
    for (const Rat& x : v) a.push_back(to_string(x));
    return a;
}

ordered_json cmp_json(const CmpCertificate& c) {
    ordered_json j;
    j["i"] = c.i;
    j["j"] = c.j;
    switch (c.verdict) {
    case Cmp::equal:
        j["verdict"] = "equal";
        break;
    case Cmp::not_equal:
        j["verdict"] = "not-equal";
        break;
    default:
        j["verdict"] = "indeterminate";
        break;
    }
    j["precision_bits"] = c.precision_bits;
    if (c.separation_bits)
        j["separation_bits"] = *c.separation_bits;
    else
        j["separation_bits"] = nullptr;
    j["by_disjointness"] = c.by_disjointness;
    return j;
}

ordered_json rank_json(const RankResult& r) {
    ordered_json j;
    j["certified"] = r.certified;
    if (r.certified)
        j["rank"] = r.rank;
    else
        j["rank"] = nullptr;
    ordered_json rels = ordered_json::array();
    for (const auto& rel : r.relations) {
        ordered_json row = ordered_json::array();
        for (const Int& e : rel) row.push_back(e.get_str());
        rels.push_back(row);
    }
    j["relations"] = rels;
    j["precision_bits_used"] = r.precision_bits_used;
    return j;
}

ordered_json classification_json(const Classification& c) {
    ordered_json j;
    switch (c.kind) {
    case Classification::Kind::proper_subfield:
        j["kind"] = "proper-subfield";
        j["subfield_degree"] = c.subfield_degree;
        j["subfield_s"] = c.subfield_s;
        j["subfield_t"] = c.subfield_t;
        j["subfield_rank"] = c.subfield_rank;
        break;
    case Classification::Kind::hyperplane: {
        j["kind"] = "hyperplane";
        ordered_json triples = ordered_json::array();
        for (const auto& t : c.triples) triples.push_back({t[0], t[1], t[2]});
        j["triples"] = triples;
        j["indeterminate_triples"] = c.indeterminate_triples;
        break;
    }
    default:
        j["kind"] = "none-found";
        j["indeterminate_triples"] = c.indeterminate_triples;
        break;
    }
    return j;
}

FieldPtr field_from(const InputSpec& in) {
    if (!in.minpoly) fail(errc::parse_error, "input needs a minpoly line");
    return validate_field(*in.minpoly);
}

std::vector<FieldElement> elements_from(const InputSpec& in, const FieldPtr& field) {
    std::vector<FieldElement> out;
    out.reserve(in.generators.size());
    for (size_t i = 0; i < in.generators.size(); ++i) {
        if (static_cast<int>(in.generators[i].size()) != field->degree())
            fail(errc::dimension_mismatch,
                 "generator " + std::to_string(i + 1) + " has " +
                     std::to_string(in.generators[i].size()) + " coordinates, field degree is " +
                     std::to_string(field->degree()));
        out.emplace_back(field, in.generators[i]);
    }
    return out;
}

void check_options(const Options& opt) {
    if (opt.precision_bits < 8)
        fail(errc::invalid_index, "precision-bits must be at least 8");
    if (opt.max_precision_bits < opt.precision_bits)
        fail(errc::invalid_index, "max-precision-bits must be at least precision-bits");
    if (opt.box < 0) fail(errc::invalid_index, "box radius must be nonnegative");
}

RunResult guarded(const std::string& command, const Options& opt,
                  const std::function<RunResult(ordered_json&)>& body) {
    ordered_json rep;
    rep["schema"] = 1;
    rep["command"] = command;
    ordered_json o;
    o["precision_bits"] = opt.precision_bits;
    o["max_precision_bits"] = opt.max_precision_bits;
    o["box"] = opt.box;
    o["display_digits"] = opt.display_digits;
    rep["options"] = o;
    try {
        check_options(opt);
        return body(rep);
    } catch (const error& e) {
        ordered_json err;
        err["code"] = errc_label(e.code());
        err["message"] = e.what();
        rep["error"] = err;
        bool indet = e.code() == errc::precision_exhausted;
        rep["status"] = indet ? "indeterminate" : "error";
        return {rep, indet ? 3 : 2};
    }
}

Precision precision_of(const Options& opt) { return {opt.precision_bits, opt.max_precision_bits}; }

} // namespace

// --- runners -----------------------------------------------------------

RunResult run_signature(const InputSpec& in, const Options& opt) {
    return guarded("signature", opt, [&](ordered_json& rep) -> RunResult {
        FieldPtr field = field_from(in);
        rep["field"] = field_json(field);
        SignatureVerdict v = classify_signature(field->real_embeddings(), field->complex_pairs());
        ordered_json vj;
        vj["lck_exists"] = v.lck_exists;
        vj["reason"] = v.reason;
        rep["verdict"] = vj;
        rep["status"] = v.lck_exists ? "lck-exists" : "no-lck";
        return {rep, v.lck_exists ? 0 : 1};
    });
}

RunResult run_lck_check(const InputSpec& in, const Options& opt) {
    return guarded("lck-check", opt, [&](ordered_json& rep) -> RunResult {
        FieldPtr field = field_from(in);
        rep["field"] = field_json(field);
        EmbeddingSet emb =
            EmbeddingSet::isolate(field, opt.precision_bits, opt.max_precision_bits);
        rep["embeddings"] = embeddings_json(emb, opt);
        std::vector<FieldElement> gens = elements_from(in, field);
        ordered_json gj = ordered_json::array();
        for (const auto& g : gens) gj.push_back(rationals_json(g.coords()));
        rep["generators"] = gj;
        if (gens.empty()) rep["warnings"] = {"empty generator list; the criterion is vacuous"};
        UnitSubgroup group = UnitSubgroup::create(std::move(gens), emb);
        CriterionVerdict cv = lck_criterion(group, emb, precision_of(opt));
        ordered_json cj;
        switch (cv.overall) {
        case CriterionVerdict::Outcome::holds:
            cj["outcome"] = "holds";
            break;
        case CriterionVerdict::Outcome::fails:
            cj["outcome"] = "fails";
            break;
        default:
            cj["outcome"] = "indeterminate";
            break;
        }
        ordered_json pg = ordered_json::array();
        for (const auto& g : cv.per_generator) {
            ordered_json gje;
            gje["holds"] = g.holds;
            ordered_json comps = ordered_json::array();
            for (const auto& c : g.comparisons) comps.push_back(cmp_json(c));
            gje["comparisons"] = comps;
            pg.push_back(gje);
        }
        cj["per_generator"] = pg;
        rep["criterion"] = cj;
        SignatureVerdict sv = classify_signature(field->real_embeddings(), field->complex_pairs());
        ordered_json svj;
        svj["lck_exists"] = sv.lck_exists;
        svj["reason"] = sv.reason;
        rep["signature_verdict"] = svj;
        int exit_code = 0;
        std::string status = "holds";
        if (cv.overall == CriterionVerdict::Outcome::fails) {
            exit_code = 1;
            status = "fails";
        } else if (cv.overall == CriterionVerdict::Outcome::indeterminate) {
            exit_code = 3;
            status = "indeterminate";
        }
        rep["status"] = status;
        return {rep, exit_code};
    });
}

RunResult run_audit(const InputSpec& in, const Options& opt) {
    return guarded("audit", opt, [&](ordered_json& rep) -> RunResult {
        FieldPtr field = field_from(in);
        rep["field"] = field_json(field);
        EmbeddingSet emb =
            EmbeddingSet::isolate(field, opt.precision_bits, opt.max_precision_bits);
        rep["embeddings"] = embeddings_json(emb, opt);
        std::vector<FieldElement> gens = elements_from(in, field);
        ordered_json gj = ordered_json::array();
        for (const auto& g : gens) gj.push_back(rationals_json(g.coords()));
        rep["generators"] = gj;
        UnitSubgroup group = UnitSubgroup::create(std::move(gens), emb);
        AuditReport audit = nolck_audit(group, opt.box, emb, precision_of(opt));
        ordered_json aj;
        aj["box_radius"] = audit.box_radius;
        aj["units_enumerated"] = audit.units_enumerated;
        aj["totally_positive_candidates"] = audit.totally_positive_candidates;
        ordered_json sats = ordered_json::array();
        for (const auto& s : audit.satisfiers) {
            ordered_json sj;
            sj["exponents"] = s.exponents;
            sj["element"] = rationals_json(s.element.coords());
            sj["classification"] = classification_json(s.classification);
            sats.push_back(sj);
        }
        aj["satisfiers"] = sats;
        aj["indeterminate_comparisons"] = audit.indeterminate_comparisons;
        aj["satisfier_rank"] = rank_json(audit.satisfier_rank);
        std::string conclusion;
        int exit_code = 0;
        switch (audit.conclusion) {
        case AuditReport::Conclusion::consistent:
            conclusion = "consistent";
            exit_code = 0;
            break;
        case AuditReport::Conclusion::inconsistent:
            conclusion = "inconsistent";
            exit_code = 1;
            break;
        default:
            conclusion = "withheld";
            exit_code = 3;
            break;
        }
        aj["conclusion"] = conclusion;
        if (audit.ot_admissible)
            aj["ot_admissible"] = *audit.ot_admissible;
        else
            aj["ot_admissible"] = nullptr;
        rep["audit"] = aj;
        rep["status"] = conclusion;
        return {rep, exit_code};
    });
}

RunResult run_lemma_witness(const InputSpec& in, const Options& opt) {
    return guarded("lemma-witness", opt, [&](ordered_json& rep) -> RunResult {
        if (!in.lattice) fail(errc::parse_error, "input needs a lattice line");
        int dim = static_cast<int>(in.lattice->front().size());
        IntegerLattice lattice = IntegerLattice::from_rows(*in.lattice, dim);
        std::vector<IntegerLattice> subs;
        subs.reserve(in.sublattices.size());
        for (const auto& rows : in.sublattices)
            subs.push_back(IntegerLattice::from_rows(rows, dim));
        ordered_json lj;
        lj["dimension"] = lattice.dimension();
        lj["rank"] = lattice.rank();
        ordered_json basis = ordered_json::array();
        for (const auto& row : lattice.basis()) basis.push_back(rationals_json(row));
        lj["basis"] = basis;
        rep["lattice"] = lj;
        ordered_json sj = ordered_json::array();
        for (const auto& sub : subs) {
            ordered_json one;
            one["rank"] = sub.rank();
            sj.push_back(one);
        }
        rep["sublattices"] = sj;
        std::vector<Rat> witness = lemma_witness(lattice, subs);
        rep["witness"] = rationals_json(witness);
        ordered_json mj = ordered_json::array();
        for (const auto& sub : subs) mj.push_back(lattice_membership(witness, sub));
        rep["memberships"] = mj;
        rep["status"] = "ok";
        return {rep, 0};
    });
}

RunResult run_rank(const InputSpec& in, const Options& opt) {
    return guarded("rank", opt, [&](ordered_json& rep) -> RunResult {
        FieldPtr field = field_from(in);
        rep["field"] = field_json(field);
        EmbeddingSet emb =
            EmbeddingSet::isolate(field, opt.precision_bits, opt.max_precision_bits);
        std::vector<FieldElement> gens = elements_from(in, field);
        ordered_json gj = ordered_json::array();
        for (const auto& g : gens) gj.push_back(rationals_json(g.coords()));
        rep["generators"] = gj;
        UnitSubgroup group = UnitSubgroup::create_units_only(std::move(gens), emb);
        RankResult rr = subgroup_rank(group, emb, precision_of(opt));
        rep["rank"] = rank_json(rr);
        rep["status"] = rr.certified ? "certified" : "indeterminate";
        return {rep, rr.certified ? 0 : 3};
    });
}

RunResult run_log_embedding(const InputSpec& in, const Options& opt) {
    return guarded("log-embedding", opt, [&](ordered_json& rep) -> RunResult {
        FieldPtr field = field_from(in);
        rep["field"] = field_json(field);
        EmbeddingSet emb =
            EmbeddingSet::isolate(field, opt.precision_bits, opt.max_precision_bits);
        rep["embeddings"] = embeddings_json(emb, opt);
        std::vector<FieldElement> gens = elements_from(in, field);
        if (gens.empty()) fail(errc::parse_error, "input needs at least one generator line");
        UnitSubgroup group = UnitSubgroup::create_units_only(gens, emb);
        ordered_json vecs = ordered_json::array();
        for (size_t i = 0; i < gens.size(); ++i) {
            LogVector lv = log_embedding(gens[i], emb, precision_of(opt));
            ordered_json vj;
            vj["generator"] = static_cast<long>(i + 1);
            ordered_json entries = ordered_json::array();
            for (const auto& e : lv.entries) entries.push_back(interval_json(e, opt.display_digits));
            vj["entries"] = entries;
            vj["dirichlet_residual"] = interval_json(dirichlet_residual(lv), opt.display_digits);
            vecs.push_back(vj);
        }
        rep["log_vectors"] = vecs;
        rep["status"] = "ok";
        return {rep, 0};
    });
}

RunResult run_command(const std::string& command, const InputSpec& in, const Options& opt) {
    if (command == "signature") return run_signature(in, opt);
    if (command == "lck-check") return run_lck_check(in, opt);
    if (command == "audit") return run_audit(in, opt);
    if (command == "lemma-witness") return run_lemma_witness(in, opt);
    if (command == "rank") return run_rank(in, opt);
    if (command == "log-embedding") return run_log_embedding(in, opt);
    fail(errc::parse_error, "unknown command '" + command + "'");
}

std::string render_report(const ordered_json& report) { return report.dump(2) + "\n"; }

} // namespace otlck::io
