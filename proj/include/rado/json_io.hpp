#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "rado/colouring.hpp"
#include "rado/hmodule.hpp"
#include "rado/matrix.hpp"
#include "rado/ring.hpp"
#include "rado/scalar.hpp"
#include "rado/search.hpp"
#include "rado/witness.hpp"

// JSON (de)serialization for every value that crosses the CLI boundary.
//
// Ring descriptors are compact strings: "Z", "Q", "fp:5", "mod:4", poly
// suffixes "[x]"/"[y]" ("Z[x][y]"), "frac:" applied to the remainder
// ("frac:fp:5[x]"), and "prodmod:<n>:<m1>,<m2>,..." where each <mi> is a
// multiplicity count or "inf".
//
// Scalars: integers and residues as decimal strings, rationals "p/q",
// polynomials as coefficient arrays ascending in degree, fractions as
// {"num","den"}, product elements as {"values","multiplicities"}.
//
// Every *_from_json validates shape first and reports violations as
// MalformedInput with a JSON-pointer path to the offending node.

namespace rado {

std::string ring_descriptor(const Ring& r);
Ring ring_from_descriptor(const std::string& text);

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Ring& r, const nlohmann::json& j, const std::string& path = "");

nlohmann::json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json witness_to_json(const PartitionWitness& w);
PartitionWitness witness_from_json(const Ring& ring, const nlohmann::json& j,
                                   const std::string& path = "");

nlohmann::json verdict_to_json(const Verdict& v);

nlohmann::json colouring_to_json(const Colouring& c);
Colouring colouring_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json certificate_to_json(const RefutationCertificate& c);
RefutationCertificate certificate_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json window_to_json(const SearchWindow& w);
SearchWindow window_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json search_report_to_json(const SearchReport& r, const Colouring& chi);

nlohmann::json finite_witness_to_json(const FiniteWitness& w);

nlohmann::json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json hmodule_report_to_json(const HModuleReport& h);

}  // namespace rado
