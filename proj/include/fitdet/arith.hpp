#pragma once
#include <optional>
#include <string>

#include "fitdet/complexes.hpp"

namespace fitdet {

// Decomposition data of a place: generators of the decomposition subgroup as
// group-like ring elements, plus optional Frobenius and norm for Euler factors.
struct PlaceData {
    std::string label;
    std::vector<RingElem> decomposition;
    std::optional<RingElem> frobenius;
    std::optional<long> norm;
};

// Z_v = R / (d - 1 : d in decomposition generators)
FPModule z_module(const RingSpec& spec, const PlaceData& v);
FPModule z_sum(const RingSpec& spec, const std::vector<PlaceData>& places);

// trivial module Z_p = R / (augmentation ideal)
FPModule trivial_module(const RingSpec& spec);

struct Z0Result {
    FPModule module;
    RMatrix inclusion;  // into Z_A on its generators
};

// kernel of the augmentation Z_A -> Z_p, with the exact sequence materialized
Z0Result z0(const RingSpec& spec, const std::vector<PlaceData>& places);

// set-change ledgers for the L-ideal: removing a place via its Euler factor
// (eq100) and enlarging the ramification set (eq101)
FracIdeal ledger_apply_eq100(const FracIdeal& base, const std::vector<PlaceData>& extra);
FracIdeal ledger_apply_eq101(const FracIdeal& base, const std::vector<PlaceData>& added);

struct CheckReport {
    bool pass = false;
    bool skipped = false;
    std::string detail;
    Eff eff = Eff::exact();
};

// part 1: Fitt^[1](Z^0_{p}) = Fitt^[2](Z_p); part 2: adding a place of finite
// decomposition index does not change Fitt^[1](Z^0)
CheckReport check_lemma79_part1(const RingSpec& spec, const PlaceData& p_place);
CheckReport check_lemma79_part2(const RingSpec& spec, const PlaceData& p_place,
                                const std::vector<PlaceData>& kept_places);

// given the exact sequence 0 -> X -> H2 -> Z0 -> 0 (X computed as the kernel),
// verify Fitt(X) = Det^{-1}(shift(phi(H2), -2)) * Fitt^[1](Z0)
CheckReport check_cor41_shape(const FPModule& h2, const RMatrix& onto, const FPModule& z0mod);

// projection compatibility of the determinant under base change
CheckReport check_lemma46_projection(const PerfectComplex& f, const RingHom& h);

}  // namespace fitdet
