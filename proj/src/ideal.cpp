#include "fitdet/ideal.hpp"

#include <algorithm>
#include <cassert>

namespace fitdet {

namespace {

std::vector<RVec> as_vectors(const std::vector<RingElem>& gens) {
    std::vector<RVec> v;
    v.reserve(gens.size());
    for (const auto& g : gens) v.push_back(RVec{g});
    return v;
}

std::vector<RingElem> span_reduce(const RingSpec& spec, const std::vector<RingElem>& gens) {
    std::vector<RingElem> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return {};
    BaseMat rows = rspan_rows(spec, as_vectors(nonzero));
    BaseMat basis = span_basis(spec, rows);
    std::vector<RingElem> out;
    for (std::size_t i = 0; i < basis.rows; ++i) {
        RingElem e(spec);
        for (std::size_t j = 0; j < basis.cols; ++j)
            if (basis.at(i, j) != 0) e.add_term(j, basis.at(i, j));
        if (!e.is_zero()) out.push_back(e);
    }
    return out;
}

}  // namespace

FracIdeal FracIdeal::zero(const RingSpec& spec) {
    FracIdeal f;
    f.spec_ = &spec;
    f.den_ = RingElem::one(spec);
    f.eff_ = Eff::full(spec);
    return f;
}

FracIdeal FracIdeal::unit(const RingSpec& spec) {
    return integral(spec, {RingElem::one(spec)});
}

FracIdeal FracIdeal::integral(const RingSpec& spec, std::vector<RingElem> gens) {
    return fractional(spec, std::move(gens), RingElem::one(spec));
}

FracIdeal FracIdeal::fractional(const RingSpec& spec, std::vector<RingElem> gens, RingElem den,
                                Eff carried) {
    if (!regular_certificate(den))
        throw std::runtime_error("ideal: denominator is not a certified non-zero-divisor");
    FracIdeal f;
    f.spec_ = &spec;
    f.gens_ = span_reduce(spec, gens);
    f.den_ = den;
    f.eff_ = Eff::full(spec).cut(precision_loss(den)).min(carried);
    return f;
}

FracIdeal FracIdeal::principal(const RingSpec& spec, const RingElem& g) {
    return integral(spec, {g});
}

FracIdeal FracIdeal::principal_inverse(const RingSpec& spec, const RingElem& g) {
    return fractional(spec, {RingElem::one(spec)}, g);
}

FracIdeal multiply(const FracIdeal& a, const FracIdeal& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("ideal: mixed-ring operands");
    if (a.is_zero() || b.is_zero()) return FracIdeal::zero(a.spec());
    std::vector<RingElem> prods;
    for (const auto& x : a.gens())
        for (const auto& y : b.gens()) prods.push_back(x * y);
    return FracIdeal::fractional(a.spec(), std::move(prods), a.den() * b.den(),
                                 a.eff().min(b.eff()));
}

FracIdeal pow_ideal(const FracIdeal& a, long e) {
    if (e < 0) return pow_ideal(inverse(a), -e);
    FracIdeal r = FracIdeal::unit(a.spec());
    for (long i = 0; i < e; ++i) r = multiply(r, a);
    return r;
}

Eff verdict_eff(const FracIdeal& a, const FracIdeal& b) {
    // each side's eff already accounts for its own denominator
    Eff e = a.eff().min(b.eff());
    if (!e.usable()) throw std::runtime_error("ideal: precision exhausted");
    return e;
}

namespace {

BaseMat cross_rows(const FracIdeal& a, const RingElem& mult) {
    std::vector<RingElem> gens;
    for (const auto& g : a.gens()) gens.push_back(g * mult);
    if (gens.empty()) return BaseMat(0, a.spec().rank());
    return rspan_rows(a.spec(), as_vectors(gens));
}

}  // namespace

bool equals(const FracIdeal& a, const FracIdeal& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("ideal: mixed-ring operands");
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    Eff e = verdict_eff(a, b);
    BaseMat shadow = shadow_rows(a.spec(), e);
    bool same_den = a.den() == b.den();
    BaseMat ra = cross_rows(a, same_den ? RingElem::one(a.spec()) : b.den());
    BaseMat rb = cross_rows(b, same_den ? RingElem::one(a.spec()) : a.den());
    return span_basis(a.spec(), ra, &shadow) == span_basis(a.spec(), rb, &shadow);
}

bool contains(const FracIdeal& a, const FracIdeal& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("ideal: mixed-ring operands");
    if (b.is_zero()) return true;
    if (a.is_zero()) return false;
    Eff e = verdict_eff(a, b);
    BaseMat shadow = shadow_rows(a.spec(), e);
    bool same_den = a.den() == b.den();
    BaseMat ra = cross_rows(a, same_den ? RingElem::one(a.spec()) : b.den());
    BaseMat basis = span_basis(a.spec(), ra, &shadow);
    for (const auto& g : b.gens()) {
        RingElem x = same_den ? g : g * a.den();
        BaseVec v = flatten({x});
        if (!span_member(a.spec(), basis, v)) return false;
    }
    return true;
}

bool is_unit_ideal(const FracIdeal& a) { return equals(a, FracIdeal::unit(a.spec())); }

namespace {

// certified non-zero-divisor inside the numerator span, or nullopt
std::optional<RingElem> find_regular_member(const FracIdeal& a) {
    for (const auto& g : a.gens())
        if (regular_certificate(g)) return g;
    // bounded deterministic combinations
    const auto& gens = a.gens();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            RingElem s = gens[i] + gens[j];
            if (regular_certificate(s)) return s;
            RingElem d = gens[i] - gens[j];
            if (regular_certificate(d)) return d;
        }
    Rng rng(0x1dea1u);
    const RingSpec& spec = a.spec();
    for (unsigned t = 0; t < 64 && !gens.empty(); ++t) {
        RingElem c = RingElem::zero(spec);
        for (const auto& g : gens) {
            long s = rng.range(-2, 2);
            if (s) c = c + g * mpq_class(s);
        }
        if (regular_certificate(c)) return c;
    }
    return std::nullopt;
}

}  // namespace

FracIdeal inverse(const FracIdeal& a) {
    const RingSpec& spec = a.spec();
    if (a.is_zero()) throw std::runtime_error("ideal: not invertible");
    auto f = find_regular_member(a);
    if (!f) throw std::runtime_error("ideal: not invertible");
    // colon (fR : A): x with x * gen in f R for every generator
    const std::size_t r = spec.rank();
    const std::size_t k = a.gens().size();
    BaseMat sys(r * k, r * (1 + k));
    BaseMat fm = mult_matrix(*f);
    for (std::size_t g = 0; g < k; ++g) {
        BaseMat gm = mult_matrix(a.gens()[g]);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                sys.at(g * r + i, j) = gm.at(i, j);
                sys.at(g * r + i, (1 + g) * r + j) = -fm.at(i, j);
            }
    }
    auto ker = kernel_base(spec, sys);
    std::vector<RingElem> colon;
    for (const auto& v : ker) {
        RingElem x(spec);
        for (std::size_t j = 0; j < r; ++j)
            if (v[j] != 0) x.add_term(j, v[j]);
        if (!x.is_zero()) colon.push_back(x);
    }
    std::vector<RingElem> gens;
    for (const auto& c : colon) gens.push_back(c * a.den());
    FracIdeal inv = FracIdeal::fractional(spec, std::move(gens), *f, a.eff());
    if (!is_unit_ideal(multiply(a, inv))) throw std::runtime_error("ideal: not invertible");
    return inv;
}

std::optional<RingElem> principal_generator(const FracIdeal& a, std::uint64_t seed,
                                            unsigned budget) {
    const RingSpec& spec = a.spec();
    if (a.is_zero()) return std::nullopt;
    auto candidate_works = [&](const RingElem& c) {
        if (c.is_zero()) return false;
        FracIdeal cand = FracIdeal::fractional(spec, {c}, a.den(), a.eff());
        return equals(cand, a);
    };
    for (const auto& g : a.gens())
        if (candidate_works(g)) return g;
    Rng rng(seed);
    const std::size_t r = spec.rank();
    for (unsigned t = 0; t < budget; ++t) {
        RingElem c = RingElem::zero(spec);
        for (const auto& g : a.gens()) {
            long s = rng.range(-(static_cast<long>(spec.prime()) / 2),
                               static_cast<long>(spec.prime()) / 2);
            std::size_t b = static_cast<std::size_t>(rng.below(r));
            if (s) c = c + g * RingElem::basis(spec, b, mpq_class(s));
        }
        if (candidate_works(c)) return c;
    }
    return std::nullopt;
}

FracIdeal apply_hom(const RingHom& h, const FracIdeal& a) {
    if (a.spec() != h.source()) throw std::invalid_argument("ideal: wrong source ring");
    if (a.is_zero()) return FracIdeal::zero(h.target());
    RingElem den = h.apply(a.den());
    if (!regular_certificate(den))
        throw std::runtime_error("ideal: denominator becomes a zero divisor under the map");
    std::vector<RingElem> gens;
    for (const auto& g : a.gens()) gens.push_back(h.apply(g));
    return FracIdeal::fractional(h.target(), std::move(gens), den, a.eff());
}

BaseMat numerator_basis(const FracIdeal& a) {
    if (a.is_zero()) return BaseMat(0, a.spec().rank());
    return span_basis(a.spec(), rspan_rows(a.spec(), as_vectors(a.gens())));
}

}  // namespace fitdet
