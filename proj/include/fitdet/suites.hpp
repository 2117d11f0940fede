#pragma once
#include <string>

#include "fitdet/json_io.hpp"

namespace fitdet {

struct CaseResult {
    std::string id;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    Eff eff = Eff::exact();
};

struct SuiteResult {
    std::string name;
    std::vector<CaseResult> cases;
    bool pass() const;
    json to_json() const;
};

struct SuiteConfig {
    std::uint64_t seed = 7;
    unsigned cases = 0;  // 0 = suite default
    unsigned prec_n = 0, prec_m = 0;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);
json run_all(const SuiteConfig& cfg);

// deterministic random objects for the suites (shared with the tests)
RingElem random_small_elem(const RingSpec& spec, Rng& rng, long coeff_bound = 2);
RMatrix random_unimodular(const RingSpec& spec, std::size_t n, Rng& rng, unsigned ops = 6);
// U diag(p^{k_i}) V with k_i <= max_exp, at least one positive; optionally
// padded with redundant relations / a unit row extension
FPModule random_torsion_module(const RingSpec& spec, Rng& rng, std::size_t max_rank = 3,
                               unsigned max_exp = 3, bool pad = true);

}  // namespace fitdet
