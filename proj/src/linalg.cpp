#include "fitdet/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fitdet {

RMatrix::RMatrix(const RingSpec& spec, std::size_t rows, std::size_t cols)
    : spec_(&spec), rows_(rows), cols_(cols), e_(rows * cols, RingElem::zero(spec)) {}

RMatrix RMatrix::identity(const RingSpec& spec, std::size_t n) {
    RMatrix m(spec, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElem::one(spec);
    return m;
}

RMatrix RMatrix::from_columns(const RingSpec& spec, std::size_t rows,
                              const std::vector<RVec>& cols) {
    RMatrix m(spec, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        assert(cols[j].size() == rows);
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

RMatrix RMatrix::diagonal(const RingSpec& spec, const RVec& diag) {
    RMatrix m(spec, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
    return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
    assert(cols_ == o.rows_);
    RMatrix r(*spec_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return r;
}

RVec RMatrix::apply(const RVec& x) const {
    assert(x.size() == cols_);
    RVec y(rows_, RingElem::zero(*spec_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] = y[i] + at(i, j) * x[j];
    return y;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RMatrix r(*spec_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

RMatrix RMatrix::operator-() const {
    RMatrix r(*spec_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

RMatrix RMatrix::scaled(const RingElem& s) const {
    RMatrix r(*spec_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

bool RMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool RMatrix::operator==(const RMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!(e_[i] == o.e_[i])) return false;
    return true;
}

RVec RMatrix::column(std::size_t j) const {
    RVec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

RVec RMatrix::row(std::size_t i) const {
    RVec v;
    v.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
}

RMatrix RMatrix::hcat(const RMatrix& o) const {
    assert(rows_ == o.rows_);
    RMatrix r(*spec_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

RMatrix RMatrix::submatrix(const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) const {
    RMatrix r(*spec_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows[i], cols[j]);
    return r;
}

RMatrix RMatrix::drop_row_col(std::size_t r, std::size_t c) const {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < rows_; ++i)
        if (i != r) rs.push_back(i);
    for (std::size_t j = 0; j < cols_; ++j)
        if (j != c) cs.push_back(j);
    return submatrix(rs, cs);
}

BaseMat mult_matrix(const RingElem& a) {
    const RingSpec& spec = a.spec();
    const std::size_t r = spec.rank();
    const std::size_t nm = spec.nmon();
    BaseMat m(r, r);
    for (const auto& [k, v] : a.terms()) {
        std::size_t g1 = k / nm, m1 = k % nm;
        for (std::size_t idx = 0; idx < r; ++idx) {
            std::size_t g2 = idx / nm, m2 = idx % nm;
            long mm = spec.monomial_mul(m1, m2);
            if (mm < 0) continue;
            std::size_t out = spec.group_mul(g1, g2) * nm + static_cast<std::size_t>(mm);
            m.at(out, idx) = spec.reduce_scalar(m.at(out, idx) + v);
        }
    }
    return m;
}

BaseMat expand(const RMatrix& a) {
    const RingSpec& spec = a.spec();
    const std::size_t r = spec.rank();
    BaseMat m(r * a.rows(), r * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            BaseMat blk = mult_matrix(a.at(i, j));
            for (std::size_t bi = 0; bi < r; ++bi)
                for (std::size_t bj = 0; bj < r; ++bj)
                    if (blk.at(bi, bj) != 0) m.at(i * r + bi, j * r + bj) = blk.at(bi, bj);
        }
    return m;
}

BaseVec flatten(const RVec& v) {
    if (v.empty()) return {};
    const std::size_t r = v[0].spec().rank();
    BaseVec out(v.size() * r, mpq_class(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& [k, c] : v[i].terms()) out[i * r + k] = c;
    return out;
}

RVec unflatten(const RingSpec& spec, const BaseVec& v) {
    const std::size_t r = spec.rank();
    assert(v.size() % r == 0);
    RVec out(v.size() / r, RingElem::zero(spec));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = 0; k < r; ++k)
            if (v[i * r + k] != 0) out[i].add_term(k, v[i * r + k]);
    return out;
}

BaseMat rspan_rows(const RingSpec& spec, const std::vector<RVec>& gens) {
    const std::size_t r = spec.rank();
    if (gens.empty()) return BaseMat(0, 0);
    const std::size_t n = gens[0].size();
    BaseMat rows(gens.size() * r, n * r);
    std::size_t row = 0;
    for (const auto& g : gens) {
        assert(g.size() == n);
        for (std::size_t b = 0; b < r; ++b, ++row) {
            RingElem mult = RingElem::basis(spec, b);
            for (std::size_t i = 0; i < n; ++i) {
                if (g[i].is_zero()) continue;
                RingElem prod = g[i] * mult;
                for (const auto& [k, c] : prod.terms()) rows.at(row, i * r + k) = c;
            }
        }
    }
    return rows;
}

std::vector<RVec> kernel(const RMatrix& m) {
    const RingSpec& spec = m.spec();
    auto base = kernel_base(spec, expand(m));
    std::vector<RVec> out;
    out.reserve(base.size());
    for (auto& v : base) out.push_back(unflatten(spec, v));
    return out;
}

std::optional<RVec> solve(const RMatrix& m, const RVec& b) {
    const RingSpec& spec = m.spec();
    assert(b.size() == m.rows());
    auto x = solve_base(spec, expand(m), flatten(b));
    if (!x) return std::nullopt;
    return unflatten(spec, *x);
}

namespace {

RingElem laplace(const RMatrix& m, const std::vector<std::size_t>& rows, std::uint64_t colmask,
                 std::map<std::pair<std::size_t, std::uint64_t>, RingElem>& memo) {
    const RingSpec& spec = m.spec();
    std::size_t depth = rows.size() - static_cast<std::size_t>(__builtin_popcountll(colmask));
    if (colmask == 0) return RingElem::one(spec);
    auto key = std::make_pair(depth, colmask);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::size_t row = rows[depth];
    RingElem acc = RingElem::zero(spec);
    int sign = 1;
    for (std::size_t j = 0, seen = 0; j < m.cols(); ++j) {
        if (!(colmask & (1ULL << j))) continue;
        ++seen;
        if (!m.at(row, j).is_zero()) {
            RingElem sub = laplace(m, rows, colmask & ~(1ULL << j), memo);
            RingElem term = m.at(row, j) * sub;
            acc = (sign > 0) ? acc + term : acc - term;
        }
        sign = -sign;
        (void)seen;
    }
    memo[key] = acc;
    return acc;
}

}  // namespace

RingElem rdet(const RMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("linalg: det requires a square matrix");
    if (m.rows() == 0) return RingElem::one(m.spec());
    if (m.rows() > 16) throw std::invalid_argument("linalg: det size cap exceeded");
    std::vector<std::size_t> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = i;
    std::map<std::pair<std::size_t, std::uint64_t>, RingElem> memo;
    std::uint64_t full = (m.cols() >= 64) ? ~0ULL : ((1ULL << m.cols()) - 1);
    return laplace(m, rows, full, memo);
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<RingElem> minors(const RMatrix& m, std::size_t k) {
    std::vector<RingElem> out;
    if (k == 0) {
        out.push_back(RingElem::one(m.spec()));
        return out;
    }
    if (k > m.rows() || k > m.cols()) return out;
    std::vector<std::vector<std::size_t>> rsets, csets;
    subsets(m.rows(), k, rsets);
    subsets(m.cols(), k, csets);
    for (const auto& rs : rsets)
        for (const auto& cs : csets) out.push_back(rdet(m.submatrix(rs, cs)));
    return out;
}

std::vector<RVec> canonical_generators(const RingSpec& spec, const std::vector<RVec>& gens) {
    std::vector<RVec> out;
    if (gens.empty()) return out;
    BaseMat basis = span_basis(spec, rspan_rows(spec, gens));
    const std::size_t r = spec.rank();
    for (std::size_t i = 0; i < basis.rows; ++i) {
        BaseVec row(basis.cols);
        bool nonzero = false;
        for (std::size_t j = 0; j < basis.cols; ++j) {
            row[j] = basis.at(i, j);
            if (row[j] != 0) nonzero = true;
        }
        if (nonzero) out.push_back(unflatten(spec, row));
    }
    (void)r;
    return out;
}

std::vector<RVec> prune_generators(const RingSpec& spec, std::vector<RVec> gens,
                                   const BaseMat* context, const Eff& eff) {
    std::vector<RVec> kept;
    if (gens.empty()) return kept;
    const std::size_t n = gens[0].size();
    const std::size_t r = spec.rank();

    // two spans: the shadow participates only in the drop decision; kept
    // representatives are reduced against exact data alone so their
    // valuation/degree profile is not corrupted
    IncrementalSpan exact_span(spec.prime_z(), n * r);
    IncrementalSpan padded_span(spec.prime_z(), n * r);
    auto insert_both = [&](const BaseVec& row) {
        exact_span.insert(row);
        padded_span.insert(row);
    };
    if (context)
        for (std::size_t i = 0; i < context->rows; ++i) {
            BaseVec row(n * r);
            for (std::size_t j = 0; j < n * r; ++j) row[j] = context->at(i, j);
            insert_both(row);
        }
    if (spec.mode() == RingMode::Truncated)
        for (std::size_t j = 0; j < n * r; ++j) {
            BaseVec row(n * r);
            row[j] = mpq_class(spec.pn());
            insert_both(row);
        }
    BaseMat shadow = shadow_rows(spec, eff);
    for (std::size_t blk = 0; blk < n; ++blk)
        for (std::size_t i = 0; i < shadow.rows; ++i) {
            BaseVec row(n * r);
            for (std::size_t j = 0; j < shadow.cols; ++j) row[blk * r + j] = shadow.at(i, j);
            padded_span.insert(std::move(row));
        }
    // canonical order for determinism
    std::sort(gens.begin(), gens.end(), [](const RVec& a, const RVec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = RingElem::compare(a[i], b[i]);
            if (c) return c < 0;
        }
        return false;
    });

    for (const auto& g : gens) {
        BaseVec rem = exact_span.reduce(flatten(g));
        if (padded_span.contains(rem)) continue;
        RVec reduced = unflatten(spec, rem);
        kept.push_back(reduced);
        BaseMat rows = rspan_rows(spec, {reduced});
        for (std::size_t i = 0; i < rows.rows; ++i) {
            BaseVec row(n * r);
            for (std::size_t j = 0; j < n * r; ++j) row[j] = rows.at(i, j);
            insert_both(row);
        }
    }
    return kept;
}

}  // namespace fitdet
