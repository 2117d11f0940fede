#include "fitdet/json_io.hpp"

namespace fitdet {

const RingSpec& IoContext::intern(RingSpec s) {
    for (const auto& existing : specs)
        if (existing == s) return existing;
    specs.push_back(std::move(s));
    return specs.back();
}

namespace {

json z_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

mpz_class z_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument("json: expected integer or integer string");
}

}  // namespace

json scalar_to_json(const mpq_class& v) {
    json j;
    j["num"] = z_to_json(mpz_class(v.get_num()));
    j["den"] = z_to_json(mpz_class(v.get_den()));
    return j;
}

mpq_class scalar_from_json(const json& j) {
    mpz_class num = z_from_json(j.at("num"));
    mpz_class den = j.contains("den") ? z_from_json(j.at("den")) : mpz_class(1);
    if (den == 0) throw std::invalid_argument("json: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

json spec_to_json(const RingSpec& spec) {
    json j;
    j["prime"] = spec.prime();
    j["group"] = spec.group_orders();
    j["vars"] = spec.vars();
    j["mode"] = spec.mode() == RingMode::Exact ? "exact" : "truncated";
    if (spec.mode() == RingMode::Truncated) j["precision"] = {spec.prec_n(), spec.prec_m()};
    return j;
}

const RingSpec& spec_from_json(IoContext& ctx, const json& j) {
    unsigned long prime = j.at("prime").get<unsigned long>();
    std::vector<unsigned> group = j.value("group", std::vector<unsigned>{});
    unsigned vars = j.value("vars", 0u);
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact") return ctx.intern(RingSpec(prime, group, vars, RingMode::Exact));
    if (mode != "truncated") throw std::invalid_argument("json: unknown ring mode");
    auto prec = j.at("precision");
    return ctx.intern(RingSpec(prime, group, vars, RingMode::Truncated, prec.at(0).get<unsigned>(),
                               prec.at(1).get<unsigned>()));
}

json elem_to_json(const RingElem& e) {
    json terms = json::array();
    const RingSpec& spec = e.spec();
    for (const auto& [k, v] : e.terms()) {
        json t;
        t["group"] = spec.group_decode(spec.basis_group(k));
        t["monomial"] = spec.monomial(spec.basis_monomial(k));
        t["num"] = z_to_json(mpz_class(v.get_num()));
        t["den"] = z_to_json(mpz_class(v.get_den()));
        terms.push_back(std::move(t));
    }
    return terms;
}

RingElem elem_from_json(const RingSpec& spec, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("json: element must be a list of terms");
    RingElem e(spec);
    for (const auto& t : j) {
        std::vector<unsigned> group = t.value("group", std::vector<unsigned>{});
        std::vector<unsigned> monomial = t.value("monomial", std::vector<unsigned>{});
        group.resize(spec.group_orders().size(), 0);
        monomial.resize(spec.vars(), 0);
        auto mi = spec.monomial_index(monomial);
        if (!mi) throw std::invalid_argument("json: monomial beyond degree cutoff");
        mpq_class v = scalar_from_json(t);
        e.add_term(spec.basis_index(spec.group_encode(group), *mi), v);
    }
    return e;
}

json matrix_to_json(const RMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(elem_to_json(m.at(i, c)));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

RMatrix matrix_from_json(const RingSpec& spec, const json& j) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    RMatrix m(spec, rows, cols);
    const json& entries = j.at("entries");
    if (entries.size() != rows) throw std::invalid_argument("json: matrix row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols)
            throw std::invalid_argument("json: matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = elem_from_json(spec, entries[i][c]);
    }
    return m;
}

json module_to_json(const FPModule& m) {
    json j;
    j["ring"] = spec_to_json(m.spec());
    j["presentation"] = matrix_to_json(m.rel);
    return j;
}

FPModule module_from_json(IoContext& ctx, const json& j) {
    const RingSpec& spec = spec_from_json(ctx, j.at("ring"));
    return FPModule(spec, matrix_from_json(spec, j.at("presentation")));
}

json eff_to_json(const Eff& e) {
    if (e.is_exact()) return json();  // null: exact verdict
    return json::array({e.val, e.deg});
}

json ideal_to_json(const FracIdeal& a) {
    json j;
    j["ring"] = spec_to_json(a.spec());
    json gens = json::array();
    for (const auto& g : a.gens()) gens.push_back(elem_to_json(g));
    j["gens"] = std::move(gens);
    j["den"] = elem_to_json(a.den());
    j["effective_precision"] = eff_to_json(a.eff());
    // canonical sorted basis rows of the numerator lattice
    BaseMat basis = numerator_basis(a);
    json rows = json::array();
    for (std::size_t i = 0; i < basis.rows; ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < basis.cols; ++c) {
            row.push_back(z_to_json(mpz_class(basis.at(i, c).get_num())));
            if (basis.at(i, c).get_den() != 1)
                row.back() = scalar_to_json(basis.at(i, c));
        }
        rows.push_back(std::move(row));
    }
    j["normal_form"] = std::move(rows);
    return j;
}

FracIdeal ideal_from_json(IoContext& ctx, const json& j) {
    const RingSpec& spec = spec_from_json(ctx, j.at("ring"));
    std::vector<RingElem> gens;
    for (const auto& g : j.at("gens")) gens.push_back(elem_from_json(spec, g));
    RingElem den = j.contains("den") ? elem_from_json(spec, j.at("den")) : RingElem::one(spec);
    return FracIdeal::fractional(spec, std::move(gens), den);
}

json complex_to_json(const PerfectComplex& f) {
    json j;
    j["ring"] = spec_to_json(f.spec());
    j["lo"] = f.lo;
    j["hi"] = f.hi();
    j["ranks"] = f.ranks;
    json diffs = json::array();
    for (const auto& d : f.diffs) diffs.push_back(matrix_to_json(d));
    j["differentials"] = std::move(diffs);
    return j;
}

PerfectComplex complex_from_json(IoContext& ctx, const json& j) {
    const RingSpec& spec = spec_from_json(ctx, j.at("ring"));
    long lo = j.at("lo").get<long>();
    std::vector<std::size_t> ranks = j.at("ranks").get<std::vector<std::size_t>>();
    std::vector<RMatrix> diffs;
    for (const auto& d : j.at("differentials")) diffs.push_back(matrix_from_json(spec, d));
    return make_complex(spec, lo, std::move(ranks), std::move(diffs));
}

PlaceData place_from_json(const RingSpec& spec, const json& j) {
    PlaceData p;
    p.label = j.value("label", std::string{});
    for (const auto& d : j.at("decomposition")) p.decomposition.push_back(elem_from_json(spec, d));
    if (j.contains("frobenius") && !j.at("frobenius").is_null())
        p.frobenius = elem_from_json(spec, j.at("frobenius"));
    if (j.contains("norm") && !j.at("norm").is_null()) p.norm = j.at("norm").get<long>();
    return p;
}

}  // namespace fitdet
