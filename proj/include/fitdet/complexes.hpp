#pragma once
#include <map>

#include "fitdet/fitting.hpp"

namespace fitdet {

// Bounded complex of finite free R-modules. diffs[i] is the differential from
// degree lo + i to degree lo + i + 1 (a ranks[i+1] x ranks[i] matrix).
struct PerfectComplex {
    const RingSpec* spec_ptr = nullptr;
    long lo = 0;
    std::vector<std::size_t> ranks;
    std::vector<RMatrix> diffs;

    const RingSpec& spec() const { return *spec_ptr; }
    long hi() const { return lo + static_cast<long>(ranks.size()) - 1; }
    bool empty() const { return ranks.empty(); }
    std::size_t rank_at(long degree) const;
    const RMatrix& diff_at(long degree) const;  // degree -> degree + 1
};

PerfectComplex make_complex(const RingSpec& spec, long lo, std::vector<std::size_t> ranks,
                            std::vector<RMatrix> diffs);
// [h] concentrated in degrees (top - 1, top)
PerfectComplex two_term_complex(const RingSpec& spec, const RMatrix& h, long top = 0);

// throws on d(i+1) d(i) != 0 with the offending degree in the message
void validate_complex(const PerfectComplex& f);

// translation F[n]: F[n]^i = F^{i+n}, differentials scaled by (-1)^n
PerfectComplex shift(const PerfectComplex& f, long n);

struct ChainMap {
    const PerfectComplex* from;
    const PerfectComplex* to;
    std::map<long, RMatrix> maps;  // degree -> rank_to(d) x rank_from(d)
};

// checked degreewise commutation with the differentials
PerfectComplex cone(const ChainMap& f);

FPModule cohomology(const PerfectComplex& f, long degree);

bool acyclic(const PerfectComplex& f, const Eff& eff);
bool torsion_complex(const PerfectComplex& f);

// Gaussian cancellation of unit entries in the differentials (homotopy
// equivalence; determinant and cohomology are unchanged)
PerfectComplex minimize_complex(PerfectComplex f);

PerfectComplex base_change(const RingHom& h, const PerfectComplex& f);

// free resolution of a module placed in degrees <= 0 with H^0 = M
PerfectComplex phi(const FPModule& m, unsigned depth_cap = 8);

// determinant ideal via the reduction to two-term subquotients
FracIdeal det_complex(const PerfectComplex& f);

struct K0Class {
    std::vector<std::pair<PerfectComplex, int>> parts;  // (complex, multiplicity)
};

FracIdeal k0_det(const K0Class& c);

// [F] as a signed combination of classes of modules with pd <= 1 witnesses
std::vector<std::pair<FPModule, int>> k0_reduce(const PerfectComplex& f);
FracIdeal k0_det_of_modules(const std::vector<std::pair<FPModule, int>>& parts);

// Euler factor f_v = (1 - sigma_v Nv^{-1}) / (1 - sigma_v) as a fractional
// ideal pair; requires sigma_v a unit, 1 - sigma_v certified regular to
// precision, and Nv prime to p
FracIdeal euler_factor(const RingElem& sigma_v, long nv);

}  // namespace fitdet
