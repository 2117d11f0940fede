#pragma once
#include <optional>
#include <vector>

#include "fitdet/linalg.hpp"
#include "fitdet/rng.hpp"

namespace fitdet {

// Fractional ideal (1/den) * (R-span of gens). The denominator is a single
// certified non-zero-divisor (formal pair in truncated mode); gens are kept
// span-reduced (rows of the canonical basis of the numerator lattice).
class FracIdeal {
  public:
    static FracIdeal zero(const RingSpec& spec);
    static FracIdeal unit(const RingSpec& spec);
    static FracIdeal integral(const RingSpec& spec, std::vector<RingElem> gens);
    static FracIdeal fractional(const RingSpec& spec, std::vector<RingElem> gens, RingElem den,
                                Eff carried = Eff::exact());
    static FracIdeal principal(const RingSpec& spec, const RingElem& g);
    static FracIdeal principal_inverse(const RingSpec& spec, const RingElem& g);

    const RingSpec& spec() const { return *spec_; }
    const std::vector<RingElem>& gens() const { return gens_; }
    const RingElem& den() const { return den_; }
    const Eff& eff() const { return eff_; }
    bool is_zero() const { return gens_.empty(); }

    void cut_eff(const PrecLoss& loss) { eff_ = eff_.cut(loss); }
    void set_eff(const Eff& e) { eff_ = e; }

  private:
    FracIdeal() : spec_(nullptr) {}
    const RingSpec* spec_;
    std::vector<RingElem> gens_;
    RingElem den_;
    Eff eff_;
};

FracIdeal multiply(const FracIdeal& a, const FracIdeal& b);
FracIdeal pow_ideal(const FracIdeal& a, long e);

// verdicts are exact in Exact mode and necessary conditions at the combined
// effective precision in Truncated mode; throws "precision exhausted" below
// the usable floor
bool equals(const FracIdeal& a, const FracIdeal& b);
bool contains(const FracIdeal& a, const FracIdeal& b);
Eff verdict_eff(const FracIdeal& a, const FracIdeal& b);

bool is_unit_ideal(const FracIdeal& a);

// (R : I) computed by solving linear systems; throws when I J != R
FracIdeal inverse(const FracIdeal& a);

// numerator generator g with (1/den)(g) = I, searched among bounded random
// small combinations of the generators; nullopt when the budget runs out
std::optional<RingElem> principal_generator(const FracIdeal& a, std::uint64_t seed,
                                            unsigned budget = 200);

FracIdeal apply_hom(const RingHom& h, const FracIdeal& a);

// canonical rows of the numerator lattice (for reports)
BaseMat numerator_basis(const FracIdeal& a);

}  // namespace fitdet
