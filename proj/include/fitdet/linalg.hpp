#pragma once
#include <optional>
#include <vector>

#include "fitdet/basemat.hpp"
#include "fitdet/ring.hpp"

namespace fitdet {

using RVec = std::vector<RingElem>;

// Matrix over R, column convention: an n x m matrix is the map R^m -> R^n.
class RMatrix {
  public:
    RMatrix() : spec_(nullptr), rows_(0), cols_(0) {}
    RMatrix(const RingSpec& spec, std::size_t rows, std::size_t cols);

    static RMatrix identity(const RingSpec& spec, std::size_t n);
    static RMatrix from_columns(const RingSpec& spec, std::size_t rows,
                                const std::vector<RVec>& cols);
    static RMatrix diagonal(const RingSpec& spec, const RVec& diag);

    const RingSpec& spec() const { return *spec_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RingElem& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RingElem& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RMatrix operator*(const RMatrix& o) const;
    RVec apply(const RVec& x) const;
    RMatrix operator+(const RMatrix& o) const;
    RMatrix operator-() const;
    RMatrix scaled(const RingElem& s) const;
    bool is_zero() const;
    bool operator==(const RMatrix& o) const;

    RVec column(std::size_t j) const;
    RVec row(std::size_t i) const;
    RMatrix hcat(const RMatrix& o) const;
    RMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const;
    RMatrix drop_row_col(std::size_t r, std::size_t c) const;

  private:
    const RingSpec* spec_;
    std::size_t rows_, cols_;
    std::vector<RingElem> e_;
};

// regular representation of a single element on the base lattice
BaseMat mult_matrix(const RingElem& a);

// base-scalar matrix of the R-linear map (block regular representation)
BaseMat expand(const RMatrix& m);

// coordinates of an R-vector on the base lattice and back
BaseVec flatten(const RVec& v);
RVec unflatten(const RingSpec& spec, const BaseVec& v);

// base-lattice row footprint of the R-span of a list of R-vectors: each vector
// contributes rank-of-R rows (its products with the R-basis)
BaseMat rspan_rows(const RingSpec& spec, const std::vector<RVec>& gens);

// generating set of the R-module of syzygies of m
std::vector<RVec> kernel(const RMatrix& m);

std::optional<RVec> solve(const RMatrix& m, const RVec& b);

// exact determinant over R by Laplace expansion with column-mask memoization
RingElem rdet(const RMatrix& m);

// all k x k minors in lexicographic (row-set, column-set) order
std::vector<RingElem> minors(const RMatrix& m, std::size_t k);

// canonical generator representatives: the Hermite/Howell basis rows of the
// spanned lattice, re-bundled into R-vectors
std::vector<RVec> canonical_generators(const RingSpec& spec, const std::vector<RVec>& gens);

// greedy generator pruning: drops vectors lying in the span of the kept ones
// plus context rows (and the precision shadow); kept vectors are reduced
std::vector<RVec> prune_generators(const RingSpec& spec, std::vector<RVec> gens,
                                   const BaseMat* context, const Eff& eff);

}  // namespace fitdet
