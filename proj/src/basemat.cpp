#include "fitdet/basemat.hpp"

#include <algorithm>
#include <cassert>

namespace fitdet {

BaseMat BaseMat::identity(std::size_t n) {
    BaseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

BaseMat BaseMat::transpose() const {
    BaseMat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

Eff Eff::full(const RingSpec& spec) {
    if (spec.mode() == RingMode::Exact) return exact();
    return Eff{static_cast<long>(spec.prec_n()), static_cast<long>(spec.prec_m())};
}

Eff Eff::cut(const PrecLoss& loss) const {
    if (is_exact()) return *this;
    return Eff{val - loss.val, deg - loss.deg};
}

EchelonForm echelonize(BaseMat m, const mpz_class& p, bool want_u) {
    EchelonForm ef;
    ef.has_u = want_u;
    BaseMat u = want_u ? BaseMat::identity(m.rows) : BaseMat();
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        // pivot: minimal valuation among rows >= r, first such row on ties
        long bestv = kValInfinity;
        std::size_t best = m.rows;
        for (std::size_t i = r; i < m.rows; ++i) {
            if (m.at(i, col) == 0) continue;
            long v = pval(m.at(i, col), p);
            if (v < bestv) {
                bestv = v;
                best = i;
            }
        }
        if (best == m.rows) continue;
        if (best != r) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(best, j));
            if (want_u)
                for (std::size_t j = 0; j < u.cols; ++j) std::swap(u.at(r, j), u.at(best, j));
        }
        // normalize the pivot to exactly p^v (unit row scaling)
        mpq_class pivot_target(pow_p(p, bestv));
        mpq_class scale = pivot_target / m.at(r, col);
        if (scale != 1) {
            for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) *= scale;
            if (want_u)
                for (std::size_t j = 0; j < u.cols; ++j) u.at(r, j) *= scale;
        }
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col) == 0) continue;
            mpq_class q;
            if (i > r) {
                q = m.at(i, col) / pivot_target;  // valuation >= bestv by pivot choice
            } else {
                q = (m.at(i, col) - residue_mod_pk(m.at(i, col), p, bestv)) / pivot_target;
            }
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
            if (want_u)
                for (std::size_t j = 0; j < u.cols; ++j) u.at(i, j) -= q * u.at(r, j);
        }
        ef.pivots.push_back(Pivot{r, col, bestv});
        ++r;
    }
    ef.h = std::move(m);
    ef.u = std::move(u);
    return ef;
}

BaseMat shadow_rows(const RingSpec& spec, const Eff& eff) {
    if (spec.mode() == RingMode::Exact || eff.is_exact()) return BaseMat(0, 0);
    const std::size_t r = spec.rank();
    BaseMat s(r, r);
    mpz_class scale = pow_p(spec.prime_z(), std::max(eff.val, 0L));
    for (std::size_t idx = 0; idx < r; ++idx) {
        long deg = spec.monomial_degree(spec.basis_monomial(idx));
        s.at(idx, idx) = (deg >= eff.deg) ? mpq_class(1) : mpq_class(scale);
    }
    return s;
}

namespace {

BaseMat stack(const BaseMat& a, const BaseMat& b) {
    assert(a.cols == b.cols || a.rows == 0 || b.rows == 0);
    std::size_t cols = a.rows ? a.cols : b.cols;
    BaseMat s(a.rows + b.rows, cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) s.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) s.at(a.rows + i, j) = b.at(i, j);
    return s;
}

BaseMat pn_padding(const RingSpec& spec, std::size_t n) {
    BaseMat pad(n, n);
    for (std::size_t i = 0; i < n; ++i) pad.at(i, i) = mpq_class(spec.pn());
    return pad;
}

mpq_class mod_pn(const RingSpec& spec, const mpq_class& x) { return spec.reduce_scalar(x); }

}  // namespace

BaseMat span_basis(const RingSpec& spec, const BaseMat& rows_in, const BaseMat* extra) {
    BaseMat rows = rows_in;
    if (extra && extra->rows) rows = stack(rows, *extra);
    if (spec.mode() == RingMode::Truncated && rows.cols)
        rows = stack(rows, pn_padding(spec, rows.cols));
    EchelonForm ef = echelonize(std::move(rows), spec.prime_z(), false);
    BaseMat out(ef.pivots.size(), ef.h.cols);
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
        for (std::size_t j = 0; j < ef.h.cols; ++j) out.at(i, j) = ef.h.at(i, j);
    return out;
}

BaseVec reduce_against(const BaseMat& basis, const mpz_class& p, const BaseVec& v,
                       BaseVec* coeffs) {
    BaseVec rem = v;
    if (coeffs) coeffs->assign(basis.rows, mpq_class(0));
    for (std::size_t i = 0; i < basis.rows; ++i) {
        // leading pivot of row i
        std::size_t col = 0;
        while (col < basis.cols && basis.at(i, col) == 0) ++col;
        if (col == basis.cols) continue;
        if (rem[col] == 0) continue;
        long pv = pval(basis.at(i, col), p);
        mpq_class q = (rem[col] - residue_mod_pk(rem[col], p, pv)) / mpq_class(pow_p(p, pv));
        if (q == 0) continue;
        for (std::size_t j = col; j < basis.cols; ++j) rem[j] -= q * basis.at(i, j);
        if (coeffs) (*coeffs)[i] = q;
    }
    return rem;
}

bool span_member(const RingSpec& spec, const BaseMat& basis, const BaseVec& v) {
    BaseVec rem = reduce_against(basis, spec.prime_z(), v, nullptr);
    for (const auto& x : rem)
        if (x != 0) return false;
    return true;
}

bool span_equal(const RingSpec& spec, const BaseMat& rows_a, const BaseMat& rows_b) {
    return span_basis(spec, rows_a) == span_basis(spec, rows_b);
}

void IncrementalSpan::insert(BaseVec v) {
    while (true) {
        std::size_t c = 0;
        while (c < cols_ && v[c] == 0) ++c;
        if (c == cols_) return;
        long vv = pval(v[c], p_);
        auto it = rows_.find(c);
        if (it == rows_.end()) {
            // normalize pivot to p^vv
            mpq_class scale = mpq_class(pow_p(p_, vv)) / v[c];
            if (scale != 1)
                for (auto& x : v) x *= scale;
            rows_.emplace(c, std::move(v));
            return;
        }
        long wv = pval(it->second[c], p_);
        if (vv >= wv) {
            mpq_class q = (v[c] - residue_mod_pk(v[c], p_, wv)) / mpq_class(pow_p(p_, wv));
            for (std::size_t j = c; j < cols_; ++j) v[j] -= q * it->second[j];
            if (v[c] == 0) continue;  // fully cleared at c, move right
            vv = pval(v[c], p_);
        }
        // v is the better pivot at c; swap and re-insert the old row
        mpq_class scale = mpq_class(pow_p(p_, vv)) / v[c];
        if (scale != 1)
            for (auto& x : v) x *= scale;
        std::swap(it->second, v);
        // continue inserting the displaced row
    }
}

BaseVec IncrementalSpan::reduce(BaseVec v) const {
    for (const auto& [c, row] : rows_) {
        if (v[c] == 0) continue;
        long wv = pval(row[c], p_);
        mpq_class q = (v[c] - residue_mod_pk(v[c], p_, wv)) / mpq_class(pow_p(p_, wv));
        if (q == 0) continue;
        for (std::size_t j = c; j < cols_; ++j) v[j] -= q * row[j];
    }
    return v;
}

bool IncrementalSpan::contains(const BaseVec& v) const {
    BaseVec rem = reduce(v);
    for (const auto& x : rem)
        if (x != 0) return false;
    return true;
}

std::vector<BaseVec> kernel_base(const RingSpec& spec, const BaseMat& m) {
    std::vector<BaseVec> out;
    if (m.cols == 0) return out;
    if (spec.mode() == RingMode::Exact) {
        EchelonForm ef = echelonize(m.transpose(), spec.prime_z(), true);
        for (std::size_t i = ef.pivots.size(); i < ef.h.rows; ++i) {
            BaseVec v(m.cols);
            for (std::size_t j = 0; j < m.cols; ++j) v[j] = ef.u.at(i, j);
            out.push_back(std::move(v));
        }
        return out;
    }
    // mod p^N kernel: project the Z_(p) kernel of [m | p^N I]
    BaseMat aug(m.rows, m.cols + m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = mpq_class(spec.pn());
    }
    EchelonForm ef = echelonize(aug.transpose(), spec.prime_z(), true);
    for (std::size_t i = ef.pivots.size(); i < ef.h.rows; ++i) {
        BaseVec v(m.cols);
        bool nonzero = false;
        for (std::size_t j = 0; j < m.cols; ++j) {
            v[j] = mod_pn(spec, ef.u.at(i, j));
            if (v[j] != 0) nonzero = true;
        }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

std::optional<BaseVec> solve_base(const RingSpec& spec, const BaseMat& m, const BaseVec& b) {
    assert(b.size() == m.rows);
    const bool trunc = spec.mode() == RingMode::Truncated;
    std::size_t ncols = m.cols + (trunc ? m.rows : 0);
    if (ncols == 0) {
        for (const auto& x : b)
            if (x != 0) return std::nullopt;
        return BaseVec{};
    }
    // rows of cols^T span the column lattice; membership with tracked coefficients
    BaseMat colsT(ncols, m.rows);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) colsT.at(j, i) = m.at(i, j);
    if (trunc)
        for (std::size_t i = 0; i < m.rows; ++i) colsT.at(m.cols + i, i) = mpq_class(spec.pn());
    EchelonForm ef = echelonize(colsT, spec.prime_z(), true);
    BaseMat basis(ef.pivots.size(), ef.h.cols);
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
        for (std::size_t j = 0; j < ef.h.cols; ++j) basis.at(i, j) = ef.h.at(i, j);
    BaseVec coeffs;
    BaseVec rem = reduce_against(basis, spec.prime_z(), b, &coeffs);
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    BaseVec x(m.cols, mpq_class(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols; ++j) x[j] += coeffs[i] * ef.u.at(i, j);
    }
    if (trunc)
        for (auto& xi : x) xi = mod_pn(spec, xi);
    return x;
}

mpq_class det_base(BaseMat m) {
    assert(m.rows == m.cols);
    const std::size_t n = m.rows;
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = col; i < n; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == n) return mpq_class(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
            det = -det;
        }
        det *= m.at(col, col);
        mpq_class inv = 1 / m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            mpq_class q = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= q * m.at(col, j);
        }
    }
    return det;
}

std::size_t rank_q(const BaseMat& m) {
    BaseMat w = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        std::size_t piv = w.rows;
        for (std::size_t i = rank; i < w.rows; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == w.rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(rank, j), w.at(piv, j));
        mpq_class inv = 1 / w.at(rank, col);
        for (std::size_t i = rank + 1; i < w.rows; ++i) {
            if (w.at(i, col) == 0) continue;
            mpq_class q = w.at(i, col) * inv;
            for (std::size_t j = col; j < w.cols; ++j) w.at(i, j) -= q * w.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace fitdet
