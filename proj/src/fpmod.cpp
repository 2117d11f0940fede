#include "fitdet/fpmod.hpp"

#include <algorithm>
#include <cassert>

namespace fitdet {

FPModule zero_module(const RingSpec& spec) { return FPModule(spec, RMatrix(spec, 0, 0)); }

FPModule free_module(const RingSpec& spec, std::size_t n) {
    return FPModule(spec, RMatrix(spec, n, 0));
}

FPModule cyclic_quotient(const RingSpec& spec, const std::vector<RingElem>& ideal_gens) {
    RMatrix m(spec, 1, ideal_gens.size());
    for (std::size_t j = 0; j < ideal_gens.size(); ++j) m.at(0, j) = ideal_gens[j];
    return FPModule(spec, std::move(m));
}

FPModule quotient_power(const RingSpec& spec, const RingElem& c, std::size_t a) {
    RMatrix m(spec, a, a);
    for (std::size_t i = 0; i < a; ++i) m.at(i, i) = c;
    return FPModule(spec, std::move(m));
}

BaseMat relation_span(const FPModule& m) {
    std::vector<RVec> cols;
    for (std::size_t j = 0; j < m.nrels(); ++j) cols.push_back(m.rel.column(j));
    if (cols.empty()) return BaseMat(0, m.spec().rank() * m.ngens());
    return rspan_rows(m.spec(), cols);
}

FPModule minimize(const FPModule& m_in) {
    const RingSpec& spec = m_in.spec();
    RMatrix a = m_in.rel;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < a.rows() && !changed; ++i)
            for (std::size_t j = 0; j < a.cols() && !changed; ++j) {
                if (a.at(i, j).is_zero() || !is_unit(a.at(i, j))) continue;
                RingElem uinv = *try_invert(a.at(i, j));
                for (std::size_t j2 = 0; j2 < a.cols(); ++j2) {
                    if (j2 == j || a.at(i, j2).is_zero()) continue;
                    RingElem c = a.at(i, j2) * uinv;
                    for (std::size_t r = 0; r < a.rows(); ++r)
                        a.at(r, j2) = a.at(r, j2) - a.at(r, j) * c;
                }
                a = a.drop_row_col(i, j);
                changed = true;
            }
    }
    // drop zero relation columns
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (!a.at(i, j).is_zero()) {
                zero = false;
                break;
            }
        if (!zero) keep.push_back(j);
    }
    if (keep.size() != a.cols()) {
        std::vector<std::size_t> all_rows(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) all_rows[i] = i;
        a = a.submatrix(all_rows, keep);
    }
    return FPModule(spec, std::move(a));
}

FPModule direct_sum(const FPModule& a, const FPModule& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("fpmod: mixed-ring operands");
    const RingSpec& spec = a.spec();
    RMatrix m(spec, a.ngens() + b.ngens(), a.nrels() + b.nrels());
    for (std::size_t i = 0; i < a.ngens(); ++i)
        for (std::size_t j = 0; j < a.nrels(); ++j) m.at(i, j) = a.rel.at(i, j);
    for (std::size_t i = 0; i < b.ngens(); ++i)
        for (std::size_t j = 0; j < b.nrels(); ++j)
            m.at(a.ngens() + i, a.nrels() + j) = b.rel.at(i, j);
    return FPModule(spec, std::move(m));
}

FPModule base_change(const RingHom& h, const FPModule& m) {
    RMatrix out(h.target(), m.ngens(), m.nrels());
    for (std::size_t i = 0; i < m.ngens(); ++i)
        for (std::size_t j = 0; j < m.nrels(); ++j) out.at(i, j) = h.apply(m.rel.at(i, j));
    return FPModule(h.target(), std::move(out));
}

bool is_zero_module(const FPModule& m, const Eff& eff) {
    if (m.ngens() == 0) return true;
    const RingSpec& spec = m.spec();
    const std::size_t r = spec.rank();
    BaseMat shadow = shadow_rows(spec, eff);
    BaseMat wide(shadow.rows * m.ngens(), r * m.ngens());
    for (std::size_t blk = 0; blk < m.ngens(); ++blk)
        for (std::size_t i = 0; i < shadow.rows; ++i)
            for (std::size_t j = 0; j < shadow.cols; ++j)
                wide.at(blk * shadow.rows + i, blk * r + j) = shadow.at(i, j);
    BaseMat rows = relation_span(m);
    BaseMat basis = span_basis(spec, rows, wide.rows ? &wide : nullptr);
    for (std::size_t g = 0; g < m.ngens(); ++g) {
        BaseVec e(r * m.ngens(), mpq_class(0));
        e[g * r] = 1;  // generator g = 1 * basis element 1
        if (!span_member(spec, basis, e)) return false;
    }
    return true;
}

bool is_torsion(const FPModule& m) {
    if (m.spec().mode() == RingMode::Truncated) return true;  // finite base ring
    if (m.ngens() == 0) return true;
    return rank_q(expand(m.rel)) == m.spec().rank() * m.ngens();
}

unsigned annihilator_exponent(const FPModule& m) {
    const RingSpec& spec = m.spec();
    if (m.ngens() == 0) return 0;
    if (spec.mode() == RingMode::Exact && !is_torsion(m))
        throw std::runtime_error("fpmod: annihilator exponent of a non-torsion module");
    const std::size_t r = spec.rank();
    BaseMat basis = span_basis(spec, relation_span(m));
    long cap = spec.mode() == RingMode::Truncated ? spec.prec_n() : 0;
    if (spec.mode() == RingMode::Exact) {
        // the largest elementary divisor is bounded by the total pivot
        // valuation of the relation lattice
        for (std::size_t i = 0; i < basis.rows; ++i)
            for (std::size_t j = 0; j < basis.cols; ++j)
                if (basis.at(i, j) != 0) {
                    cap += pval(basis.at(i, j), spec.prime_z());
                    break;
                }
    }
    for (long k = 0; k <= cap; ++k) {
        bool killed = true;
        mpq_class pk(pow_p(spec.prime_z(), k));
        for (std::size_t g = 0; g < m.ngens() && killed; ++g) {
            BaseVec e(r * m.ngens(), mpq_class(0));
            e[g * r] = pk;
            if (spec.mode() == RingMode::Truncated) e[g * r] = spec.reduce_scalar(e[g * r]);
            if (e[g * r] == 0) continue;
            if (!span_member(spec, basis, e)) killed = false;
        }
        if (killed) return static_cast<unsigned>(k);
    }
    throw std::runtime_error("fpmod: annihilator exponent not found");
}

std::optional<RMatrix> pd_le_1_witness(const FPModule& m_in, const Eff& eff) {
    FPModule m = minimize(m_in);
    const RingSpec& spec = m.spec();
    const std::size_t n = m.ngens();
    if (n == 0) return RMatrix(spec, 0, 0);
    if (m.nrels() < n) return std::nullopt;

    BaseMat shadow = shadow_rows(spec, eff);
    BaseMat wide(shadow.rows * n, spec.rank() * n);
    for (std::size_t blk = 0; blk < n; ++blk)
        for (std::size_t i = 0; i < shadow.rows; ++i)
            for (std::size_t j = 0; j < shadow.cols; ++j)
                wide.at(blk * shadow.rows + i, blk * spec.rank() + j) = shadow.at(i, j);
    const BaseMat* sh = wide.rows ? &wide : nullptr;
    BaseMat full = span_basis(spec, relation_span(m), sh);

    std::vector<std::vector<std::size_t>> csets;
    {
        std::vector<std::size_t> cur(n);
        auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
            if (csets.size() >= 300) return;
            if (depth == n) {
                csets.push_back(cur);
                return;
            }
            for (std::size_t i = start; i + (n - depth) <= m.nrels(); ++i) {
                cur[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        rec(rec, 0, 0);
    }
    std::vector<std::size_t> all_rows(n);
    for (std::size_t i = 0; i < n; ++i) all_rows[i] = i;
    for (const auto& cs : csets) {
        RMatrix h = m.rel.submatrix(all_rows, cs);
        std::vector<RVec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(h.column(j));
        BaseMat sub = span_basis(spec, rspan_rows(spec, cols), sh);
        if (!(sub == full)) continue;
        if (regular_certificate(rdet(h))) return h;
    }
    return std::nullopt;
}

KernelResult kernel_of_surjection(const FPModule& src, const RMatrix& f, const FPModule& tgt,
                                  const Eff& eff) {
    const RingSpec& spec = src.spec();
    if (tgt.spec() != spec) throw std::invalid_argument("fpmod: mixed-ring operands");
    if (f.rows() != tgt.ngens() || f.cols() != src.ngens())
        throw std::invalid_argument("fpmod: map has wrong shape");
    const std::size_t r = spec.rank();

    // well-definedness: f maps source relations into target relations
    BaseMat tgt_span = span_basis(spec, relation_span(tgt));
    if (src.nrels()) {
        RMatrix mapped = f * src.rel;
        for (std::size_t j = 0; j < mapped.cols(); ++j) {
            BaseVec v = flatten(mapped.column(j));
            if (tgt.ngens() == 0) continue;
            if (!span_member(spec, tgt_span, v))
                throw std::runtime_error("fpmod: not a module map");
        }
    }

    // surjectivity: columns of [f | tgt.rel] span the full generator lattice
    if (tgt.ngens() > 0) {
        RMatrix combined = f.hcat(tgt.rel);
        std::vector<RVec> cols;
        for (std::size_t j = 0; j < combined.cols(); ++j) cols.push_back(combined.column(j));
        BaseMat basis = span_basis(spec, rspan_rows(spec, cols));
        if (!(basis == BaseMat::identity(r * tgt.ngens())))
            throw std::runtime_error("fpmod: not surjective");
    }

    // preimage of im(tgt.rel) under f, as columns over the source generators
    RMatrix combined = f.hcat(tgt.rel);
    std::vector<RVec> pre;
    for (const auto& v : kernel(combined)) {
        RVec u(v.begin(), v.begin() + static_cast<long>(src.ngens()));
        pre.push_back(std::move(u));
    }
    BaseMat src_span = relation_span(src);
    std::vector<RVec> kept =
        prune_generators(spec, canonical_generators(spec, pre),
                         src_span.rows ? &src_span : nullptr, eff);
    RMatrix incl = RMatrix::from_columns(spec, src.ngens(), kept);

    // relations among the kernel generators modulo source relations
    RMatrix wide = incl.hcat(src.rel);
    std::vector<RVec> rels;
    for (const auto& v : kernel(wide)) {
        RVec c(v.begin(), v.begin() + static_cast<long>(kept.size()));
        rels.push_back(std::move(c));
    }
    rels = prune_generators(spec, canonical_generators(spec, rels), nullptr, eff);
    RMatrix pres = RMatrix::from_columns(spec, kept.size(), rels);
    return KernelResult{FPModule(spec, std::move(pres)), std::move(incl)};
}

}  // namespace fitdet
