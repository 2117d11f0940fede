#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fitdet {

enum class RingMode { Exact, Truncated };

// p-adic valuation; LONG_MAX stands for val(0)
long pval(const mpz_class& z, const mpz_class& p);
long pval(const mpq_class& q, const mpz_class& p);
constexpr long kValInfinity = 0x3fffffffL;

mpz_class pow_p(const mpz_class& p, long k);

// canonical representative of x modulo p^k * Z_(p); handles val(x) < 0 and k arbitrary
mpq_class residue_mod_pk(const mpq_class& x, const mpz_class& p, long k);

// The ambient ring R: group algebra of a finite abelian group over Z_(p)
// (Exact, d = 0) or over (Z/p^N)[T_1..T_d]/(deg >= M) (Truncated).
class RingSpec {
  public:
    RingSpec(unsigned long prime, std::vector<unsigned> group_orders, unsigned vars,
             RingMode mode, unsigned prec_n = 0, unsigned prec_m = 1);

    unsigned long prime() const { return prime_; }
    const mpz_class& prime_z() const { return p_; }
    const std::vector<unsigned>& group_orders() const { return orders_; }
    unsigned vars() const { return vars_; }
    RingMode mode() const { return mode_; }
    bool truncated() const { return mode_ == RingMode::Truncated; }
    unsigned prec_n() const { return prec_n_; }
    unsigned prec_m() const { return prec_m_; }
    const mpz_class& pn() const { return pn_; }

    std::size_t group_order() const { return group_order_; }
    std::size_t nmon() const { return monomials_.size(); }
    std::size_t rank() const { return group_order_ * monomials_.size(); }

    // group elements are mixed-radix indices over the order list
    std::size_t group_mul(std::size_t a, std::size_t b) const { return gtab_[a * group_order_ + b]; }
    std::size_t group_inv(std::size_t a) const { return ginv_[a]; }
    std::vector<unsigned> group_decode(std::size_t a) const;
    std::size_t group_encode(const std::vector<unsigned>& residues) const;

    const std::vector<unsigned>& monomial(std::size_t m) const { return monomials_[m]; }
    unsigned monomial_degree(std::size_t m) const { return mon_degree_[m]; }
    // -1 when the product falls beyond the degree cutoff
    long monomial_mul(std::size_t a, std::size_t b) const { return mtab_[a * nmon() + b]; }
    std::optional<std::size_t> monomial_index(const std::vector<unsigned>& exps) const;

    std::size_t basis_index(std::size_t g, std::size_t m) const { return g * nmon() + m; }
    std::size_t basis_group(std::size_t idx) const { return idx / nmon(); }
    std::size_t basis_monomial(std::size_t idx) const { return idx % nmon(); }

    // reduce a base scalar into canonical form; throws on p-divisible denominators in Exact mode
    mpq_class reduce_scalar(const mpq_class& x) const;

    bool operator==(const RingSpec& o) const;
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

  private:
    unsigned long prime_;
    mpz_class p_;
    std::vector<unsigned> orders_;
    unsigned vars_;
    RingMode mode_;
    unsigned prec_n_, prec_m_;
    mpz_class pn_;
    std::size_t group_order_;
    std::vector<std::vector<unsigned>> monomials_;
    std::vector<unsigned> mon_degree_;
    std::map<std::vector<unsigned>, std::size_t> mon_index_;
    std::vector<std::size_t> gtab_, ginv_;
    std::vector<long> mtab_;
};

// Element of R as a sparse table over basis indices (group index * nmon + monomial index).
class RingElem {
  public:
    RingElem() : spec_(nullptr) {}
    explicit RingElem(const RingSpec& spec) : spec_(&spec) {}

    static RingElem zero(const RingSpec& spec) { return RingElem(spec); }
    static RingElem one(const RingSpec& spec);
    static RingElem scalar(const RingSpec& spec, const mpq_class& v);
    static RingElem basis(const RingSpec& spec, std::size_t idx, const mpq_class& v = 1);
    // g^e for the i-th group generator
    static RingElem group_gen(const RingSpec& spec, std::size_t i, long e = 1);
    // T_i
    static RingElem var(const RingSpec& spec, std::size_t i);

    const RingSpec& spec() const { return *spec_; }
    bool attached() const { return spec_ != nullptr; }
    const std::map<std::uint64_t, mpq_class>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add_term(std::uint64_t idx, const mpq_class& v);
    mpq_class coeff(std::uint64_t idx) const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator-() const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator*(const mpq_class& s) const;
    bool operator==(const RingElem& o) const;
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    // total order used for canonical generator lists
    static int compare(const RingElem& a, const RingElem& b);

    std::string str() const;

  private:
    const RingSpec* spec_;
    std::map<std::uint64_t, mpq_class> c_;
    void check_compatible(const RingElem& o) const;
};

RingElem pow(const RingElem& a, unsigned long e);

// Ring homomorphisms the engine supports: augmentation, projection onto a
// quotient group ring (componentwise order division, trailing variables
// killed), and twisting by a character of the finite part.
class RingHom {
  public:
    enum class Kind { Augmentation, Projection, Twist };

    static RingHom augmentation(const RingSpec& source, const RingSpec& target);
    static RingHom projection(const RingSpec& source, const RingSpec& target);
    static RingHom twist(const RingSpec& spec, std::vector<mpq_class> character);

    Kind kind() const { return kind_; }
    const RingSpec& source() const { return *source_; }
    const RingSpec& target() const { return *target_; }

    RingElem apply(const RingElem& a) const;
    RingHom inverse_twist() const;

  private:
    RingHom(Kind k, const RingSpec& s, const RingSpec& t) : kind_(k), source_(&s), target_(&t) {}
    Kind kind_;
    const RingSpec* source_;
    const RingSpec* target_;
    std::vector<mpq_class> character_;
};

struct NzdResult {
    bool regular;
    RingElem witness;  // satisfies a * witness == 0 when regular is false
};

// multiplication-by-a injective on the base lattice (Exact: exact statement,
// Truncated: "regular to precision")
NzdResult is_nonzerodivisor(const RingElem& a);

// One-sided certificate that a is a non-zero-divisor of the untruncated ring:
// the group-algebra norm over the coefficient (polynomial) part is nonzero.
// In Exact mode this coincides with is_nonzerodivisor.
bool regular_certificate(const RingElem& a);

bool is_unit(const RingElem& a);
std::optional<RingElem> try_invert(const RingElem& a);

// precision loss caused by dividing through an element: (content valuation,
// lowest total degree among monomials of minimal valuation)
struct PrecLoss {
    long val;
    long deg;
};
PrecLoss precision_loss(const RingElem& a);

}  // namespace fitdet
