#pragma once
#include <deque>

#include <json.hpp>

#include "fitdet/arith.hpp"

namespace fitdet {

using nlohmann::json;

// owns ring specs deserialized from files so references stay valid
struct IoContext {
    std::deque<RingSpec> specs;
    const RingSpec& intern(RingSpec s);
};

json scalar_to_json(const mpq_class& v);
mpq_class scalar_from_json(const json& j);

json spec_to_json(const RingSpec& spec);
const RingSpec& spec_from_json(IoContext& ctx, const json& j);

json elem_to_json(const RingElem& e);
RingElem elem_from_json(const RingSpec& spec, const json& j);

json matrix_to_json(const RMatrix& m);
RMatrix matrix_from_json(const RingSpec& spec, const json& j);

json module_to_json(const FPModule& m);
FPModule module_from_json(IoContext& ctx, const json& j);

json eff_to_json(const Eff& e);

// emits the canonical normal-form basis of the numerator, sorted
json ideal_to_json(const FracIdeal& a);
FracIdeal ideal_from_json(IoContext& ctx, const json& j);

json complex_to_json(const PerfectComplex& f);
PerfectComplex complex_from_json(IoContext& ctx, const json& j);

PlaceData place_from_json(const RingSpec& spec, const json& j);

}  // namespace fitdet
