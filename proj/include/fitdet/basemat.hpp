#pragma once
#include <map>
#include <optional>
#include <vector>

#include "fitdet/ring.hpp"

namespace fitdet {

// Dense matrix over the base scalars. All linear algebra over R is reduced to
// this layer via the regular representation; Truncated-mode questions are
// lifted to Z_(p)-lattice questions by p^N padding.
struct BaseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<mpq_class> a;

    BaseMat() = default;
    BaseMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, mpq_class(0)) {}

    mpq_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const mpq_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static BaseMat identity(std::size_t n);
    BaseMat transpose() const;
    bool operator==(const BaseMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using BaseVec = std::vector<mpq_class>;

struct Pivot {
    std::size_t row, col;
    long val;
};

struct EchelonForm {
    BaseMat h;                  // all input rows kept; pivot rows first, zero rows after
    BaseMat u;                  // h = u * input when requested
    std::vector<Pivot> pivots;
    bool has_u = false;
};

// Canonical valuation-pivoted Hermite echelon form over Z_(p) (entries may be
// any rationals; all row operations lie in GL over Z_(p)).
EchelonForm echelonize(BaseMat m, const mpz_class& p, bool want_u);

// effective precision of a truncated-mode result; exact() for Exact mode
struct Eff {
    long val = kValInfinity;
    long deg = kValInfinity;

    static Eff exact() { return Eff{}; }
    static Eff full(const RingSpec& spec);
    bool is_exact() const { return val >= kValInfinity && deg >= kValInfinity; }
    Eff cut(const PrecLoss& loss) const;
    Eff min(const Eff& o) const { return Eff{std::min(val, o.val), std::min(deg, o.deg)}; }
    bool usable() const { return val >= 1 && deg >= 1; }
};

// rows spanning the sublattice invisible at precision eff (empty in Exact mode)
BaseMat shadow_rows(const RingSpec& spec, const Eff& eff);

// Canonical basis of the row span: Hermite basis of the lattice in Exact mode,
// Howell basis (computed on the p^N-padded preimage lattice) in Truncated mode.
// Extra rows are appended before canonicalization when provided.
BaseMat span_basis(const RingSpec& spec, const BaseMat& rows_in, const BaseMat* extra = nullptr);

// canonical remainder of v against a span_basis result; coeffs (optional)
// receives the coefficients used on the basis rows
BaseVec reduce_against(const BaseMat& basis, const mpz_class& p, const BaseVec& v,
                       BaseVec* coeffs = nullptr);

bool span_member(const RingSpec& spec, const BaseMat& basis, const BaseVec& v);
bool span_equal(const RingSpec& spec, const BaseMat& rows_a, const BaseMat& rows_b);

// membership-sound echelon span with reduce-or-swap insertion; used where the
// canonical form is not needed (generator pruning, growing spans)
class IncrementalSpan {
  public:
    IncrementalSpan(const mpz_class& p, std::size_t cols) : p_(p), cols_(cols) {}
    void insert(BaseVec v);
    BaseVec reduce(BaseVec v) const;
    bool contains(const BaseVec& v) const;

  private:
    mpz_class p_;
    std::size_t cols_;
    std::map<std::size_t, BaseVec> rows_;  // pivot column -> row with pivot p^k
};

// generating set for the right kernel { x : m x = 0 } over the base ring
std::vector<BaseVec> kernel_base(const RingSpec& spec, const BaseMat& m);

// some x with m x = b, nullopt when the system is inconsistent over the base
std::optional<BaseVec> solve_base(const RingSpec& spec, const BaseMat& m, const BaseVec& b);

// exact determinant over Q (the caller interprets it per mode)
mpq_class det_base(BaseMat m);

std::size_t rank_q(const BaseMat& m);

}  // namespace fitdet
