#include "fitdet/ring.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "fitdet/linalg.hpp"

namespace fitdet {

long pval(const mpz_class& z, const mpz_class& p) {
    if (z == 0) return kValInfinity;
    mpz_class rem;
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

long pval(const mpq_class& q, const mpz_class& p) {
    if (q == 0) return kValInfinity;
    return pval(mpz_class(q.get_num()), p) - pval(mpz_class(q.get_den()), p);
}

mpz_class pow_p(const mpz_class& p, long k) {
    assert(k >= 0);
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

mpq_class residue_mod_pk(const mpq_class& x, const mpz_class& p, long k) {
    if (x == 0) return mpq_class(0);
    long w = pval(x, p);
    if (w >= k) return mpq_class(0);
    // x = p^w * (a/b) with a, b prime to p; residue is p^w * (a b^{-1} mod p^{k-w})
    mpz_class pk = pow_p(p, k - w);
    mpq_class unit_part = x;
    if (w >= 0)
        unit_part /= mpq_class(pow_p(p, w));
    else
        unit_part *= mpq_class(pow_p(p, -w));
    mpz_class a = unit_part.get_num(), b = unit_part.get_den(), binv;
    if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::logic_error("residue_mod_pk: denominator not prime to p");
    mpz_class r = (a * binv) % pk;
    if (r < 0) r += pk;
    mpq_class res(r);
    if (w >= 0)
        res *= mpq_class(pow_p(p, w));
    else
        res /= mpq_class(pow_p(p, -w));
    return res;
}

RingSpec::RingSpec(unsigned long prime, std::vector<unsigned> group_orders, unsigned vars,
                   RingMode mode, unsigned prec_n, unsigned prec_m)
    : prime_(prime), p_(static_cast<unsigned long>(prime)), vars_(vars), mode_(mode),
      prec_n_(prec_n), prec_m_(prec_m) {
    if (prime < 3) throw std::invalid_argument("ring: prime must be >= 3");
    for (unsigned o : group_orders)
        if (o >= 2) orders_.push_back(o);
    if (mode_ == RingMode::Exact) {
        if (vars_ != 0) throw std::invalid_argument("ring: exact mode requires d = 0");
        prec_n_ = 0;
        prec_m_ = 1;
        pn_ = 0;
    } else {
        if (prec_n_ < 1 || prec_m_ < 1)
            throw std::invalid_argument("ring: truncated mode needs N >= 1, M >= 1");
        pn_ = pow_p(p_, prec_n_);
    }
    group_order_ = 1;
    for (unsigned o : orders_) group_order_ *= o;

    // monomials of total degree < M in graded-lex order
    {
        std::vector<unsigned> v(vars_, 0);
        auto emit = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
            if (vars_ == 0) {
                monomials_.push_back({});
                return;
            }
            if (pos + 1 == vars_) {
                v[pos] = remaining;
                monomials_.push_back(v);
                return;
            }
            for (unsigned e = remaining + 1; e-- > 0;) {
                v[pos] = e;
                self(self, pos + 1, remaining - e);
            }
        };
        for (unsigned deg = 0; deg < prec_m_; ++deg) {
            if (vars_ == 0) {
                if (deg == 0) monomials_.push_back({});
                continue;
            }
            emit(emit, 0, deg);
        }
    }
    mon_degree_.reserve(monomials_.size());
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        unsigned d = 0;
        for (unsigned e : monomials_[i]) d += e;
        mon_degree_.push_back(d);
        mon_index_[monomials_[i]] = i;
    }

    gtab_.assign(group_order_ * group_order_, 0);
    ginv_.assign(group_order_, 0);
    for (std::size_t a = 0; a < group_order_; ++a) {
        std::vector<unsigned> ra = group_decode(a);
        for (std::size_t b = 0; b < group_order_; ++b) {
            std::vector<unsigned> rb = group_decode(b);
            std::vector<unsigned> rc(orders_.size());
            for (std::size_t i = 0; i < orders_.size(); ++i) rc[i] = (ra[i] + rb[i]) % orders_[i];
            gtab_[a * group_order_ + b] = group_encode(rc);
        }
        std::vector<unsigned> ri(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) ri[i] = (orders_[i] - ra[i]) % orders_[i];
        ginv_[a] = group_encode(ri);
    }

    const std::size_t nm = monomials_.size();
    mtab_.assign(nm * nm, -1);
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) {
            if (mon_degree_[a] + mon_degree_[b] >= prec_m_ && vars_ > 0) continue;
            std::vector<unsigned> s(vars_);
            for (std::size_t i = 0; i < vars_; ++i) s[i] = monomials_[a][i] + monomials_[b][i];
            auto it = mon_index_.find(s);
            mtab_[a * nm + b] = (it == mon_index_.end()) ? -1 : static_cast<long>(it->second);
        }
}

std::vector<unsigned> RingSpec::group_decode(std::size_t a) const {
    std::vector<unsigned> r(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        r[i] = static_cast<unsigned>(a % orders_[i]);
        a /= orders_[i];
    }
    return r;
}

std::size_t RingSpec::group_encode(const std::vector<unsigned>& residues) const {
    assert(residues.size() == orders_.size());
    std::size_t a = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) a = a * orders_[i] + residues[i] % orders_[i];
    return a;
}

std::optional<std::size_t> RingSpec::monomial_index(const std::vector<unsigned>& exps) const {
    auto it = mon_index_.find(exps);
    if (it == mon_index_.end()) return std::nullopt;
    return it->second;
}

mpq_class RingSpec::reduce_scalar(const mpq_class& x) const {
    if (mode_ == RingMode::Exact) {
        if (mpz_class(x.get_den()) % p_ == 0)
            throw std::invalid_argument("ring: denominator divisible by p in exact mode");
        return x;
    }
    if (x == 0) return x;
    mpz_class den(x.get_den());
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pn_.get_mpz_t()) == 0)
        throw std::invalid_argument("ring: scalar not p-integral in truncated mode");
    mpz_class r = (mpz_class(x.get_num()) * deninv) % pn_;
    if (r < 0) r += pn_;
    return mpq_class(r);
}

bool RingSpec::operator==(const RingSpec& o) const {
    return prime_ == o.prime_ && orders_ == o.orders_ && vars_ == o.vars_ && mode_ == o.mode_ &&
           prec_n_ == o.prec_n_ && prec_m_ == o.prec_m_;
}

RingElem RingElem::one(const RingSpec& spec) { return scalar(spec, 1); }

RingElem RingElem::scalar(const RingSpec& spec, const mpq_class& v) {
    RingElem e(spec);
    e.add_term(0, v);
    return e;
}

RingElem RingElem::basis(const RingSpec& spec, std::size_t idx, const mpq_class& v) {
    RingElem e(spec);
    e.add_term(idx, v);
    return e;
}

RingElem RingElem::group_gen(const RingSpec& spec, std::size_t i, long e) {
    if (i >= spec.group_orders().size()) throw std::invalid_argument("ring: no such generator");
    unsigned ord = spec.group_orders()[i];
    long r = e % static_cast<long>(ord);
    if (r < 0) r += ord;
    std::vector<unsigned> residues(spec.group_orders().size(), 0);
    residues[i] = static_cast<unsigned>(r);
    return basis(spec, spec.basis_index(spec.group_encode(residues), 0), 1);
}

RingElem RingElem::var(const RingSpec& spec, std::size_t i) {
    if (i >= spec.vars()) throw std::invalid_argument("ring: no such variable");
    std::vector<unsigned> exps(spec.vars(), 0);
    exps[i] = 1;
    auto m = spec.monomial_index(exps);
    if (!m) throw std::invalid_argument("ring: variable beyond degree cutoff");
    return basis(spec, spec.basis_index(0, *m), 1);
}

void RingElem::add_term(std::uint64_t idx, const mpq_class& v) {
    mpq_class red = spec_->reduce_scalar(v);
    if (red == 0) return;
    auto it = c_.find(idx);
    if (it == c_.end()) {
        c_.emplace(idx, red);
        return;
    }
    it->second = spec_->reduce_scalar(it->second + red);
    if (it->second == 0) c_.erase(it);
}

mpq_class RingElem::coeff(std::uint64_t idx) const {
    auto it = c_.find(idx);
    return it == c_.end() ? mpq_class(0) : it->second;
}

void RingElem::check_compatible(const RingElem& o) const {
    if (!spec_ || !o.spec_ || *spec_ != *o.spec_)
        throw std::invalid_argument("ring: mixed-ring operands");
}

RingElem RingElem::operator+(const RingElem& o) const {
    check_compatible(o);
    RingElem r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
}

RingElem RingElem::operator-(const RingElem& o) const {
    check_compatible(o);
    RingElem r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, -v);
    return r;
}

RingElem RingElem::operator-() const {
    RingElem r(*spec_);
    for (const auto& [k, v] : c_) r.add_term(k, -v);
    return r;
}

RingElem RingElem::operator*(const RingElem& o) const {
    check_compatible(o);
    RingElem r(*spec_);
    const std::size_t nm = spec_->nmon();
    for (const auto& [k1, v1] : c_) {
        std::size_t g1 = k1 / nm, m1 = k1 % nm;
        for (const auto& [k2, v2] : o.c_) {
            std::size_t g2 = k2 / nm, m2 = k2 % nm;
            long m = spec_->monomial_mul(m1, m2);
            if (m < 0) continue;
            r.add_term(spec_->group_mul(g1, g2) * nm + static_cast<std::size_t>(m), v1 * v2);
        }
    }
    return r;
}

RingElem RingElem::operator*(const mpq_class& s) const {
    RingElem r(*spec_);
    for (const auto& [k, v] : c_) r.add_term(k, v * s);
    return r;
}

bool RingElem::operator==(const RingElem& o) const {
    check_compatible(o);
    return c_ == o.c_;
}

int RingElem::compare(const RingElem& a, const RingElem& b) {
    auto ia = a.c_.begin(), ib = b.c_.begin();
    while (ia != a.c_.end() && ib != b.c_.end()) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != a.c_.end()) return 1;
    if (ib != b.c_.end()) return -1;
    return 0;
}

std::string RingElem::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v;
        std::size_t g = spec_->basis_group(k), m = spec_->basis_monomial(k);
        if (g != 0) {
            auto residues = spec_->group_decode(g);
            for (std::size_t i = 0; i < residues.size(); ++i)
                if (residues[i]) os << "*g" << i << "^" << residues[i];
        }
        if (m != 0) {
            const auto& exps = spec_->monomial(m);
            for (std::size_t i = 0; i < exps.size(); ++i)
                if (exps[i]) os << "*T" << i << "^" << exps[i];
        }
    }
    return os.str();
}

RingElem pow(const RingElem& a, unsigned long e) {
    RingElem r = RingElem::one(a.spec());
    for (unsigned long i = 0; i < e; ++i) r = r * a;
    return r;
}

RingHom RingHom::augmentation(const RingSpec& source, const RingSpec& target) {
    if (target.group_order() != 1 || target.vars() != 0)
        throw std::invalid_argument("hom: augmentation target must be the base ring");
    if (target.prime() != source.prime() || target.mode() != source.mode())
        throw std::invalid_argument("hom: augmentation target has wrong base");
    return RingHom(Kind::Augmentation, source, target);
}

RingHom RingHom::projection(const RingSpec& source, const RingSpec& target) {
    if (target.prime() != source.prime() || target.mode() != source.mode())
        throw std::invalid_argument("hom: projection must preserve the base");
    if (target.group_orders().size() > source.group_orders().size())
        throw std::invalid_argument("hom: projection target group too large");
    for (std::size_t i = 0; i < target.group_orders().size(); ++i)
        if (source.group_orders()[i] % target.group_orders()[i] != 0)
            throw std::invalid_argument("hom: projection orders must divide source orders");
    if (target.vars() > source.vars())
        throw std::invalid_argument("hom: projection cannot add variables");
    return RingHom(Kind::Projection, source, target);
}

RingHom RingHom::twist(const RingSpec& spec, std::vector<mpq_class> character) {
    if (character.size() != spec.group_orders().size())
        throw std::invalid_argument("hom: twist needs one value per finite generator");
    RingHom h(Kind::Twist, spec, spec);
    for (std::size_t i = 0; i < character.size(); ++i) {
        RingElem v = RingElem::scalar(spec, character[i]);
        if (!is_unit(v)) throw std::invalid_argument("hom: twist character value is not a unit");
        RingElem pw = pow(v, spec.group_orders()[i]);
        if (pw != RingElem::one(spec))
            throw std::invalid_argument("hom: twist character value has wrong order");
        h.character_.push_back(spec.reduce_scalar(character[i]));
    }
    return h;
}

RingElem RingHom::apply(const RingElem& a) const {
    if (a.spec() != source()) throw std::invalid_argument("hom: element not in source ring");
    RingElem out(target());
    const std::size_t nm_src = source().nmon();
    for (const auto& [k, v] : a.terms()) {
        std::size_t g = k / nm_src, m = k % nm_src;
        switch (kind_) {
            case Kind::Augmentation: {
                if (source().monomial_degree(m) != 0) continue;  // T_i -> 0
                out.add_term(0, v);
                break;
            }
            case Kind::Projection: {
                const auto& exps = source().monomial(m);
                bool killed = false;
                std::vector<unsigned> kept(target().vars());
                for (std::size_t i = 0; i < source().vars(); ++i) {
                    if (i < target().vars())
                        kept[i] = exps[i];
                    else if (exps[i] > 0)
                        killed = true;
                }
                if (killed) continue;
                auto mi = target().monomial_index(kept);
                if (!mi) continue;  // beyond the target cutoff
                auto residues = source().group_decode(g);
                std::vector<unsigned> tr(target().group_orders().size());
                for (std::size_t i = 0; i < tr.size(); ++i)
                    tr[i] = residues[i] % target().group_orders()[i];
                out.add_term(target().basis_index(target().group_encode(tr), *mi), v);
                break;
            }
            case Kind::Twist: {
                auto residues = source().group_decode(g);
                mpq_class scale = v;
                for (std::size_t i = 0; i < residues.size(); ++i)
                    for (unsigned t = 0; t < residues[i]; ++t) scale *= character_[i];
                out.add_term(k, scale);
                break;
            }
        }
    }
    return out;
}

RingHom RingHom::inverse_twist() const {
    if (kind_ != Kind::Twist) throw std::logic_error("hom: inverse_twist on non-twist");
    std::vector<mpq_class> inv;
    for (std::size_t i = 0; i < character_.size(); ++i) {
        RingElem v = RingElem::scalar(source(), character_[i]);
        RingElem w = pow(v, source().group_orders()[i] - 1);
        inv.push_back(w.coeff(0));
    }
    return twist(source(), inv);
}

NzdResult is_nonzerodivisor(const RingElem& a) {
    const RingSpec& spec = a.spec();
    if (a.is_zero() && spec.rank() > 0) {
        return NzdResult{false, RingElem::one(spec)};
    }
    BaseMat m = mult_matrix(a);
    auto ker = kernel_base(spec, m);
    if (ker.empty()) return NzdResult{true, RingElem::zero(spec)};
    RingElem w(spec);
    for (std::size_t idx = 0; idx < ker[0].size(); ++idx)
        if (ker[0][idx] != 0) w.add_term(idx, ker[0][idx]);
    return NzdResult{false, w};
}

bool regular_certificate(const RingElem& a) {
    const RingSpec& spec = a.spec();
    if (a.is_zero()) return false;
    if (spec.mode() == RingMode::Exact) return is_nonzerodivisor(a).regular;
    // norm over the group layer, computed in the truncated coefficient ring:
    // a nonzero truncated norm certifies regularity of any exact preimage
    const std::size_t n = spec.group_order();
    const std::size_t nm = spec.nmon();
    RMatrix rep(spec, n, n);
    for (const auto& [k, v] : a.terms()) {
        std::size_t g = k / nm, m = k % nm;
        for (std::size_t h = 0; h < n; ++h)
            rep.at(spec.group_mul(g, h), h).add_term(m, v);  // coefficient stays in the poly part
    }
    return !rdet(rep).is_zero();
}

bool is_unit(const RingElem& a) {
    if (a.is_zero()) return false;
    mpq_class norm = det_base(mult_matrix(a));
    return norm != 0 && pval(norm, a.spec().prime_z()) == 0;
}

std::optional<RingElem> try_invert(const RingElem& a) {
    const RingSpec& spec = a.spec();
    BaseVec one(spec.rank(), mpq_class(0));
    if (spec.rank() == 0) return std::nullopt;
    one[0] = 1;
    auto x = solve_base(spec, mult_matrix(a), one);
    if (!x) return std::nullopt;
    RingElem inv(spec);
    for (std::size_t i = 0; i < x->size(); ++i)
        if ((*x)[i] != 0) inv.add_term(i, (*x)[i]);
    return inv;
}

PrecLoss precision_loss(const RingElem& a) {
    const RingSpec& spec = a.spec();
    if (a.is_zero()) return PrecLoss{kValInfinity, kValInfinity};
    long best_val = kValInfinity;
    for (const auto& [k, v] : a.terms()) {
        (void)k;
        best_val = std::min(best_val, pval(v, spec.prime_z()));
    }
    long best_deg = kValInfinity;
    for (const auto& [k, v] : a.terms()) {
        if (pval(v, spec.prime_z()) != best_val) continue;
        best_deg = std::min(best_deg,
                            static_cast<long>(spec.monomial_degree(spec.basis_monomial(k))));
    }
    return PrecLoss{best_val, best_deg};
}

}  // namespace fitdet
