#pragma once
#include "fitdet/fpmod.hpp"
#include "fitdet/ideal.hpp"
#include "fitdet/rng.hpp"

namespace fitdet {

// initial Fitting ideal: the ngens x ngens minors of the presentation
FracIdeal fitt(const FPModule& m);

// certified non-zero-divisor annihilating the module (p^k in Exact mode, a
// searched annihilator element in Truncated mode); throws when none is found
RingElem choose_killer(const FPModule& m, const Eff& eff);

// one certified killer per generator: the resolution steps use P = + R/(c_i),
// which keeps denominators (and precision losses) small
RVec choose_killers_per_gen(const FPModule& m, const Eff& eff);

// effective-precision cost of one resolution step through this module
PrecLoss chain_step_loss(const FPModule& m, const RVec& killers);

// structural knobs for producing a second, independent resolution
struct ResolutionOptions {
    unsigned extra_exponent = 0;  // Exact mode: use p^(k + extra) instead of p^k
    bool pad_generator = false;   // add a redundant generator mapping to zero
};

// n-step shifted Fitting ideal via a resolution by quotient-power modules
FracIdeal shift_fitt(const FPModule& m, unsigned n, const ResolutionOptions& opts = {});

// SF variant: Fitt^{(-1)^n} once a pd <= 1 witness appears, peeled off one
// quotient-power step at a time; defined for all integers n
FracIdeal sf(const FPModule& m, long n, unsigned depth_cap = 8);

struct Lemma83Report {
    FracIdeal sf_side;
    FracIdeal fitt_side;
    bool equal;
    Eff eff;
};

Lemma83Report check_lemma83(const FPModule& m, unsigned n);

}  // namespace fitdet
