#pragma once
#include <optional>

#include "fitdet/linalg.hpp"

namespace fitdet {

// Finitely presented R-module: cokernel of the presentation matrix
// (rows = generators, columns = relations).
struct FPModule {
    const RingSpec* spec_ptr = nullptr;
    RMatrix rel;

    FPModule() = default;
    FPModule(const RingSpec& spec, RMatrix presentation)
        : spec_ptr(&spec), rel(std::move(presentation)) {}

    const RingSpec& spec() const { return *spec_ptr; }
    std::size_t ngens() const { return rel.rows(); }
    std::size_t nrels() const { return rel.cols(); }
};

FPModule zero_module(const RingSpec& spec);
FPModule free_module(const RingSpec& spec, std::size_t n);
// R/(gens...)
FPModule cyclic_quotient(const RingSpec& spec, const std::vector<RingElem>& ideal_gens);
// (R/c)^a
FPModule quotient_power(const RingSpec& spec, const RingElem& c, std::size_t a);

// base rows of the column span of the presentation on the base lattice
BaseMat relation_span(const FPModule& m);

// drop unit-pivot generators and zero relations
FPModule minimize(const FPModule& m);

FPModule direct_sum(const FPModule& a, const FPModule& b);
FPModule base_change(const RingHom& h, const FPModule& m);

// all generators vanish modulo relations (and the precision shadow)
bool is_zero_module(const FPModule& m, const Eff& eff);

bool is_torsion(const FPModule& m);

// smallest k with p^k M = 0; requires torsion in Exact mode
unsigned annihilator_exponent(const FPModule& m);

// square presentation with certified non-zero-divisor determinant, after
// bounded search; nullopt does not prove pd > 1
std::optional<RMatrix> pd_le_1_witness(const FPModule& m, const Eff& eff);

struct KernelResult {
    FPModule module;
    RMatrix inclusion;  // source gens x kernel gens
};

// kernel of the surjection coker(src) ->> coker(tgt) induced by f on
// generators; throws "not surjective" / "not a module map"
KernelResult kernel_of_surjection(const FPModule& src, const RMatrix& f, const FPModule& tgt,
                                  const Eff& eff);

}  // namespace fitdet
