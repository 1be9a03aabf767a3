#pragma once

#include "whfact/core.hpp"
#include "whfact/factorization.hpp"
#include "whfact/leftright.hpp"
#include "whfact/representation.hpp"
#include "whfact/riccati.hpp"
#include "whfact/solset.hpp"
#include "whfact/subspaces.hpp"
#include "whfact/toeplitz.hpp"

#include "json.hpp"

#include <string>
#include <variant>
#include <vector>

namespace whfact {

using Json = nlohmann::json;

// Matrices travel as {"rows": r, "cols": c, "data": [[re, im], ...]} with
// the entries flattened row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Representation files carry "kind": "stable" | "dichotomous"; dichotomous
// ones additionally "dim_minus" / "dim_plus".
Json representation_to_json(const StableRepresentation& rep);
Json representation_to_json(const DichotomousRealization& real);

using AnyRepresentation = std::variant<StableRepresentation, DichotomousRealization>;

// Throws std::runtime_error on malformed input.
AnyRepresentation representation_from_json(const Json& j);
AnyRepresentation load_representation(const std::string& path);

// Views of either kind, converting when necessary (conversions need
// alpha_minus resp. A_- invertible and, toward dichotomous, R(0) invertible).
StableRepresentation as_stable(const AnyRepresentation& any, const Tolerances& tol = {});
DichotomousRealization as_dichotomous(const AnyRepresentation& any, const Tolerances& tol = {});

Json verdict_to_json(const Verdict& verdict);
Json tolerances_to_json(const Tolerances& tol);
Json certificate_to_json(const RiccatiCertificate& cert);
Json realized_function_to_json(const RealizedFunction& fun);
Json factor_pair_to_json(const FactorPair& pair);
Json matching_to_json(const MatchingDecomposition& match);
Json leftright_report_to_json(const LeftRightReport& report);
Json classification_to_json(const SolutionClassification& cls);
Json solution_sets_to_json(const ScalarSolutionSets& sets);

// CSV with header "N,rcond,q_delta"; doubles printed with %.17g, absent
// q_delta as an empty cell.
std::string profile_to_csv(const std::vector<ToeplitzProfileEntry>& entries);

}  // namespace whfact
