#include "fitdet/complexes.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fitdet {

std::size_t PerfectComplex::rank_at(long degree) const {
    if (degree < lo || degree > hi()) return 0;
    return ranks[static_cast<std::size_t>(degree - lo)];
}

const RMatrix& PerfectComplex::diff_at(long degree) const {
    static const RMatrix empty;
    (void)empty;
    if (degree < lo || degree >= hi()) throw std::out_of_range("complex: no differential there");
    return diffs[static_cast<std::size_t>(degree - lo)];
}

PerfectComplex make_complex(const RingSpec& spec, long lo, std::vector<std::size_t> ranks,
                            std::vector<RMatrix> diffs) {
    PerfectComplex f;
    f.spec_ptr = &spec;
    f.lo = lo;
    f.ranks = std::move(ranks);
    f.diffs = std::move(diffs);
    if (!f.ranks.empty() && f.diffs.size() + 1 != f.ranks.size())
        throw std::invalid_argument("complex: need one differential per adjacent pair");
    validate_complex(f);
    return f;
}

PerfectComplex two_term_complex(const RingSpec& spec, const RMatrix& h, long top) {
    PerfectComplex f;
    f.spec_ptr = &spec;
    f.lo = top - 1;
    f.ranks = {h.cols(), h.rows()};
    f.diffs = {h};
    return f;
}

void validate_complex(const PerfectComplex& f) {
    for (std::size_t i = 0; i + 1 < f.diffs.size(); ++i) {
        if (!(f.diffs[i + 1] * f.diffs[i]).is_zero()) {
            std::ostringstream os;
            os << "complex: d o d != 0 at degree " << (f.lo + static_cast<long>(i));
            throw std::invalid_argument(os.str());
        }
    }
    for (std::size_t i = 0; i < f.diffs.size(); ++i)
        if (f.diffs[i].rows() != f.ranks[i + 1] || f.diffs[i].cols() != f.ranks[i])
            throw std::invalid_argument("complex: differential shape mismatch");
}

PerfectComplex shift(const PerfectComplex& f, long n) {
    PerfectComplex g = f;
    g.lo = f.lo - n;
    if (n % 2 != 0)
        for (auto& d : g.diffs) d = -d;
    return g;
}

PerfectComplex cone(const ChainMap& fm) {
    const PerfectComplex& a = *fm.from;
    const PerfectComplex& b = *fm.to;
    const RingSpec& spec = a.spec();
    if (b.spec() != spec) throw std::invalid_argument("complex: mixed-ring cone");
    // commutation check
    for (long d = a.lo; d < a.hi(); ++d) {
        auto it0 = fm.maps.find(d), it1 = fm.maps.find(d + 1);
        RMatrix f0 = it0 != fm.maps.end() ? it0->second : RMatrix(spec, b.rank_at(d), a.rank_at(d));
        RMatrix f1 = it1 != fm.maps.end() ? it1->second
                                          : RMatrix(spec, b.rank_at(d + 1), a.rank_at(d + 1));
        RMatrix lhs = (d >= b.lo && d < b.hi()) ? b.diff_at(d) * f0
                                                : RMatrix(spec, b.rank_at(d + 1), a.rank_at(d));
        RMatrix rhs = f1 * a.diff_at(d);
        if (!(lhs + (-rhs)).is_zero()) throw std::invalid_argument("complex: not a chain map");
    }

    long lo = std::min(a.lo - 1, b.lo);
    long hi = std::max(a.hi() - 1, b.hi());
    PerfectComplex c;
    c.spec_ptr = &spec;
    c.lo = lo;
    for (long d = lo; d <= hi; ++d) c.ranks.push_back(a.rank_at(d + 1) + b.rank_at(d));
    for (long d = lo; d < hi; ++d) {
        std::size_t ra1 = a.rank_at(d + 1), rb = b.rank_at(d);
        std::size_t ra2 = a.rank_at(d + 2), rb1 = b.rank_at(d + 1);
        RMatrix m(spec, ra2 + rb1, ra1 + rb);
        if (ra1 && ra2) {
            const RMatrix& da = a.diff_at(d + 1);
            for (std::size_t i = 0; i < ra2; ++i)
                for (std::size_t j = 0; j < ra1; ++j) m.at(i, j) = -da.at(i, j);
        }
        if (ra1 && rb1) {
            auto it = fm.maps.find(d + 1);
            if (it != fm.maps.end())
                for (std::size_t i = 0; i < rb1; ++i)
                    for (std::size_t j = 0; j < ra1; ++j) m.at(ra2 + i, j) = it->second.at(i, j);
        }
        if (rb && rb1 && d >= b.lo && d < b.hi()) {
            const RMatrix& db = b.diff_at(d);
            for (std::size_t i = 0; i < rb1; ++i)
                for (std::size_t j = 0; j < rb; ++j) m.at(ra2 + i, ra1 + j) = db.at(i, j);
        }
        c.diffs.push_back(std::move(m));
    }
    validate_complex(c);
    return c;
}

FPModule cohomology(const PerfectComplex& f, long degree) {
    const RingSpec& spec = f.spec();
    std::size_t rk = f.rank_at(degree);
    if (rk == 0) return zero_module(spec);
    Eff eff = Eff::full(spec);

    std::vector<RVec> cyc;
    if (degree < f.hi()) {
        cyc = kernel(f.diff_at(degree));
    } else {
        for (std::size_t i = 0; i < rk; ++i) {
            RVec e(rk, RingElem::zero(spec));
            e[i] = RingElem::one(spec);
            cyc.push_back(std::move(e));
        }
    }
    RMatrix img(spec, rk, 0);
    if (degree > f.lo) img = f.diff_at(degree - 1);
    std::vector<RVec> img_cols;
    for (std::size_t j = 0; j < img.cols(); ++j) img_cols.push_back(img.column(j));
    BaseMat img_span = img_cols.empty() ? BaseMat(0, spec.rank() * rk)
                                        : rspan_rows(spec, img_cols);
    std::vector<RVec> gens =
        prune_generators(spec, canonical_generators(spec, cyc),
                         img_span.rows ? &img_span : nullptr, eff);
    RMatrix incl = RMatrix::from_columns(spec, rk, gens);
    RMatrix wide = incl.hcat(img);
    std::vector<RVec> rels;
    for (const auto& v : kernel(wide)) {
        RVec c(v.begin(), v.begin() + static_cast<long>(gens.size()));
        rels.push_back(std::move(c));
    }
    rels = prune_generators(spec, canonical_generators(spec, rels), nullptr, eff);
    return FPModule(spec, RMatrix::from_columns(spec, gens.size(), rels));
}

bool acyclic(const PerfectComplex& f, const Eff& eff) {
    for (long d = f.lo; d <= f.hi(); ++d)
        if (!is_zero_module(cohomology(f, d), eff)) return false;
    return true;
}

bool torsion_complex(const PerfectComplex& f) {
    for (long d = f.lo; d <= f.hi(); ++d)
        if (!is_torsion(cohomology(f, d))) return false;
    return true;
}

PerfectComplex minimize_complex(PerfectComplex f) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < f.diffs.size() && !changed; ++k) {
            RMatrix& d = f.diffs[k];
            for (std::size_t r = 0; r < d.rows() && !changed; ++r)
                for (std::size_t c = 0; c < d.cols() && !changed; ++c) {
                    if (d.at(r, c).is_zero() || !is_unit(d.at(r, c))) continue;
                    RingElem uinv = *try_invert(d.at(r, c));
                    // Schur complement on d; adjacent differentials lose the
                    // paired row/column (d o d = 0 determines them)
                    RMatrix nd(f.spec(), d.rows() - 1, d.cols() - 1);
                    for (std::size_t i = 0, io = 0; i < d.rows(); ++i) {
                        if (i == r) continue;
                        for (std::size_t j = 0, jo = 0; j < d.cols(); ++j) {
                            if (j == c) continue;
                            nd.at(io, jo) = d.at(i, j) - d.at(i, c) * uinv * d.at(r, j);
                            ++jo;
                        }
                        ++io;
                    }
                    if (k > 0) {
                        RMatrix& prev = f.diffs[k - 1];
                        RMatrix np(f.spec(), prev.rows() - 1, prev.cols());
                        for (std::size_t i = 0, io = 0; i < prev.rows(); ++i) {
                            if (i == c) continue;
                            for (std::size_t j = 0; j < prev.cols(); ++j)
                                np.at(io, j) = prev.at(i, j);
                            ++io;
                        }
                        prev = np;
                    }
                    if (k + 1 < f.diffs.size()) {
                        RMatrix& next = f.diffs[k + 1];
                        RMatrix nn(f.spec(), next.rows(), next.cols() - 1);
                        for (std::size_t i = 0; i < next.rows(); ++i)
                            for (std::size_t j = 0, jo = 0; j < next.cols(); ++j) {
                                if (j == r) continue;
                                nn.at(i, jo) = next.at(i, j);
                                ++jo;
                            }
                        next = nn;
                    }
                    d = nd;
                    f.ranks[k] -= 1;
                    f.ranks[k + 1] -= 1;
                    changed = true;
                }
        }
    }
    // trim zero-rank outer degrees
    while (!f.ranks.empty() && f.ranks.front() == 0) {
        f.ranks.erase(f.ranks.begin());
        if (!f.diffs.empty()) f.diffs.erase(f.diffs.begin());
        f.lo += 1;
    }
    while (!f.ranks.empty() && f.ranks.back() == 0) {
        f.ranks.pop_back();
        if (!f.diffs.empty()) f.diffs.pop_back();
    }
    return f;
}

PerfectComplex base_change(const RingHom& h, const PerfectComplex& f) {
    PerfectComplex g;
    g.spec_ptr = &h.target();
    g.lo = f.lo;
    g.ranks = f.ranks;
    for (const auto& d : f.diffs) {
        RMatrix nd(h.target(), d.rows(), d.cols());
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) nd.at(i, j) = h.apply(d.at(i, j));
        g.diffs.push_back(std::move(nd));
    }
    validate_complex(g);
    return g;
}

PerfectComplex phi(const FPModule& m_in, unsigned depth_cap) {
    const RingSpec& spec = m_in.spec();
    FPModule m = minimize(m_in);
    Eff eff = Eff::full(spec);
    if (m.ngens() == 0) {
        PerfectComplex f;
        f.spec_ptr = &spec;
        return f;
    }
    if (auto h = pd_le_1_witness(m, eff)) {
        if (h->rows() == 0) {
            PerfectComplex f;
            f.spec_ptr = &spec;
            return f;
        }
        return two_term_complex(spec, *h, 0);
    }
    std::vector<RMatrix> steps;  // steps[0] = presentation, steps[i+1] = syzygies of steps[i]
    steps.push_back(m.rel);
    for (unsigned depth = 0;; ++depth) {
        if (depth >= depth_cap) throw std::runtime_error("complex: resolution depth exhausted");
        const RMatrix& last = steps.back();
        std::vector<RVec> syz = prune_generators(spec, kernel(last), nullptr, eff);
        if (syz.empty()) break;
        steps.push_back(RMatrix::from_columns(spec, last.cols(), syz));
    }
    PerfectComplex f;
    f.spec_ptr = &spec;
    f.lo = -static_cast<long>(steps.size());
    f.ranks.push_back(steps.back().cols());
    for (std::size_t i = steps.size(); i-- > 0;) {
        f.ranks.push_back(steps[i].rows());
    }
    for (std::size_t i = steps.size(); i-- > 0;) f.diffs.push_back(steps[i]);
    validate_complex(f);
    return minimize_complex(f);
}

namespace {

constexpr unsigned kDetDepthCap = 64;

struct Reduction {
    FracIdeal ideal;
    std::vector<std::pair<FPModule, int>> parts;
};

// strip the top free term when H^hi = 0: split off an acyclic two-term
// identity summand through a section of the surjective last differential
PerfectComplex strip_top(const PerfectComplex& f) {
    const RingSpec& spec = f.spec();
    const RMatrix& d = f.diffs.back();
    std::size_t top_rank = f.ranks.back();
    RMatrix s(spec, d.cols(), top_rank);
    for (std::size_t j = 0; j < top_rank; ++j) {
        RVec e(top_rank, RingElem::zero(spec));
        e[j] = RingElem::one(spec);
        auto x = solve(d, e);
        if (!x) throw std::runtime_error("complex: top differential is not surjective");
        for (std::size_t i = 0; i < d.cols(); ++i) s.at(i, j) = (*x)[i];
    }
    PerfectComplex g;
    g.spec_ptr = &spec;
    std::size_t nterm = f.ranks.size();
    if (nterm == 2) {
        g.lo = f.lo - 1;
        g.ranks = {top_rank, f.ranks[0]};
        g.diffs = {s};
        return g;
    }
    g.lo = f.lo;
    g.ranks.assign(f.ranks.begin(), f.ranks.end() - 1);
    g.ranks[nterm - 3] += top_rank;
    g.diffs.assign(f.diffs.begin(), f.diffs.end() - 1);
    // widen the differential into degree hi-1 by the section columns
    g.diffs[nterm - 3] = g.diffs[nterm - 3].hcat(s);
    if (nterm >= 4) {
        RMatrix& into = g.diffs[nterm - 4];
        RMatrix wide(spec, into.rows() + top_rank, into.cols());
        for (std::size_t i = 0; i < into.rows(); ++i)
            for (std::size_t j = 0; j < into.cols(); ++j) wide.at(i, j) = into.at(i, j);
        into = wide;
    }
    validate_complex(g);
    return g;
}

Reduction reduce(PerfectComplex f, Eff eff, int sign, unsigned depth);

Reduction reduce_split(const PerfectComplex& f, Eff eff, int sign, unsigned depth) {
    // H^0 is the top nonzero cohomology; peel [f F^0 -> F^0]
    const RingSpec& spec = f.spec();
    FPModule h0 = cohomology(f, 0);
    RingElem killer = choose_killer(h0, eff);
    PrecLoss loss = chain_step_loss(h0, RVec{killer});
    std::size_t r0 = f.ranks.back();

    PerfectComplex sub = two_term_complex(spec, RMatrix::diagonal(spec, RVec(r0, killer)), 0);
    // lift: degree -1 map L with d^{-1} L = killer * id
    const RMatrix& d = f.diffs.back();
    RMatrix lift(spec, d.cols(), r0);
    for (std::size_t j = 0; j < r0; ++j) {
        RVec target(r0, RingElem::zero(spec));
        target[j] = killer;
        auto x = solve(d, target);
        if (!x) throw std::runtime_error("complex: killer does not annihilate top cohomology");
        for (std::size_t i = 0; i < d.cols(); ++i) lift.at(i, j) = (*x)[i];
    }
    ChainMap cm;
    cm.from = &sub;
    cm.to = &f;
    cm.maps[-1] = lift;
    cm.maps[0] = RMatrix::identity(spec, r0);
    PerfectComplex rest = cone(cm);

    Reduction out = reduce(std::move(rest), eff.cut(loss), sign, depth + 1);
    out.ideal = multiply(out.ideal, FracIdeal::principal_inverse(spec, pow(killer, r0)));
    out.parts.emplace_back(quotient_power(spec, killer, r0), sign);
    return out;
}

Reduction reduce(PerfectComplex f, Eff eff, int sign, unsigned depth) {
    const RingSpec& spec = f.spec();
    if (depth > kDetDepthCap)
        throw std::runtime_error("complex: determinant reduction depth exceeded");
    f = minimize_complex(std::move(f));
    if (f.empty()) {
        Reduction r{FracIdeal::unit(spec), {}};
        r.ideal.set_eff(eff);
        return r;
    }
    if (spec.mode() == RingMode::Exact && !torsion_complex(f))
        throw std::runtime_error("complex: determinant of a non-torsion complex");

    long top = f.lo - 1;
    for (long d0 = f.hi(); d0 >= f.lo; --d0)
        if (!is_zero_module(cohomology(f, d0), eff)) {
            top = d0;
            break;
        }
    if (top < f.lo) {
        Reduction r{FracIdeal::unit(spec), {}};
        r.ideal.set_eff(eff);
        return r;
    }
    if (top != 0) {
        Reduction inner = reduce(shift(f, top), eff, (top % 2 == 0) ? sign : -sign, depth + 1);
        if (top % 2 != 0) inner.ideal = inverse(inner.ideal);
        return inner;
    }
    while (f.hi() > 0) {
        f = minimize_complex(strip_top(f));
        if (f.empty() || f.hi() < 0) {
            // stripping consumed everything above; re-enter with what is left
            return reduce(std::move(f), eff, sign, depth + 1);
        }
    }

    // two-term square with vanishing kernel: Det = (det h)^{-1}, the normalization anchor
    if (f.ranks.size() == 2 && f.lo == -1 && f.ranks[0] == f.ranks[1]) {
        if (is_zero_module(cohomology(f, -1), eff)) {
            RingElem d = rdet(f.diffs[0]);
            if (regular_certificate(d)) {
                Reduction r{FracIdeal::principal_inverse(spec, d),
                            {{FPModule(spec, f.diffs[0]), sign}}};
                r.ideal.set_eff(r.ideal.eff().min(eff));
                return r;
            }
        }
    }
    // concentrated cohomology with a pd <= 1 witness
    bool concentrated = true;
    for (long d0 = f.lo; d0 < 0; ++d0)
        if (!is_zero_module(cohomology(f, d0), eff)) {
            concentrated = false;
            break;
        }
    if (concentrated) {
        FPModule h0 = cohomology(f, 0);
        if (auto h = pd_le_1_witness(h0, eff)) {
            RingElem d = rdet(*h);
            Reduction r{FracIdeal::principal_inverse(spec, d), {{h0, sign}}};
            r.ideal.set_eff(r.ideal.eff().min(eff));
            return r;
        }
    }
    return reduce_split(f, eff, sign, depth);
}

}  // namespace

FracIdeal det_complex(const PerfectComplex& f) {
    validate_complex(f);
    return reduce(f, Eff::full(f.spec()), 1, 0).ideal;
}

std::vector<std::pair<FPModule, int>> k0_reduce(const PerfectComplex& f) {
    validate_complex(f);
    auto parts = reduce(f, Eff::full(f.spec()), 1, 0).parts;
    std::reverse(parts.begin(), parts.end());
    return parts;
}

FracIdeal k0_det(const K0Class& c) {
    if (c.parts.empty()) throw std::invalid_argument("complex: empty K0 class");
    const RingSpec& spec = c.parts.front().first.spec();
    FracIdeal acc = FracIdeal::unit(spec);
    for (const auto& [cx, mult] : c.parts)
        acc = multiply(acc, pow_ideal(det_complex(cx), mult));
    return acc;
}

FracIdeal k0_det_of_modules(const std::vector<std::pair<FPModule, int>>& parts) {
    if (parts.empty()) throw std::invalid_argument("complex: empty class list");
    const RingSpec& spec = parts.front().first.spec();
    FracIdeal acc = FracIdeal::unit(spec);
    for (const auto& [m, mult] : parts) {
        // Det(phi([Q])) = Fitt(Q)^{-1}
        acc = multiply(acc, pow_ideal(fitt(m), -mult));
    }
    return acc;
}

FracIdeal euler_factor(const RingElem& sigma_v, long nv) {
    const RingSpec& spec = sigma_v.spec();
    if (!is_unit(sigma_v)) throw std::runtime_error("euler: sigma_v is not a unit");
    if (nv % static_cast<long>(spec.prime()) == 0)
        throw std::runtime_error("euler: norm must be prime to p");
    RingElem one = RingElem::one(spec);
    RingElem den = one - sigma_v;
    if (!regular_certificate(den))
        throw std::runtime_error("euler: Euler factor undefined at this level");
    mpq_class nv_inv = spec.reduce_scalar(mpq_class(1, nv));
    RingElem num = one - sigma_v * nv_inv;
    return FracIdeal::fractional(spec, {num}, den);
}

}  // namespace fitdet
