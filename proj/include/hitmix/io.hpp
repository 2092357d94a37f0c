#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hitmix/chain.hpp"
#include "hitmix/constructors.hpp"
#include "hitmix/extremal.hpp"
#include "hitmix/verifiers.hpp"

namespace hitmix {

// Chain JSON: {"labels": [...]? , "P": [[...], ...]}. Loading applies
// validation, the irreducibility check and the stationary solve in order;
// pi is always recomputed, never read from the file.
nlohmann::json chain_to_json(const Chain& c);
Chain chain_from_json(const nlohmann::json& j);
Chain load_chain(std::istream& in);
Chain load_chain_file(const std::string& path);

// Spec JSON: {"alphas": [...], "lambdas": [...], "epsilon": e, "N": N}.
nlohmann::json spec_to_json(const HittableStepSpec& s);
HittableStepSpec spec_from_json(const nlohmann::json& j);

// CSV with header "alpha_threshold,value", one row per breakpoint,
// 17 significant digits.
std::string profile_to_csv(const HittingProfile& p);

nlohmann::json report_to_json(const InequalityReport& r);

}  // namespace hitmix
