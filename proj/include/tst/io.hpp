#pragma once

#include "tst/numopt.hpp"
#include "tst/reduce_box.hpp"
#include "tst/reduce_tensor.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tst {

using Json = nlohmann::ordered_json;

// Every instance file is a JSON object with "version" and "kind".
inline constexpr int kFileVersion = 1;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Term list with dense exponent rows: [{"exponents": [..], "coeff": "p/q"}].
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int variable_count);

// Dense row-major rational strings.
Json form_to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const Json& j, int dimension);

Json bq4e_to_json(const Bq4eInstance& inst);
Bq4eInstance bq4e_from_json(const Json& j);

Json system_to_json(const QuadraticSystem& sys);
QuadraticSystem system_from_json(const Json& j);

Json quartic_to_json(const QuarticCertificateData& data);
QuarticCertificateData quartic_from_json(const Json& j);

Json tensor_to_json(const SymmetricTensor& t);
SymmetricTensor tensor_from_json(const Json& j);

Json threshold_to_json(const ThresholdInstance& inst);
ThresholdInstance threshold_from_json(const Json& j);

Json witness_to_json(const SphereWitness& w);
SphereWitness witness_from_json(const Json& j);

Json estimate_to_json(const MaxEstimate& e);

// File helpers. Loading checks version and, when expected_kind is
// non-empty, the kind tag.
void save_json(const std::string& path, const Json& j);
Json load_json(const std::string& path, const std::string& expected_kind = "");
std::string json_kind(const Json& j);

// FNV-1a 64 over the compact dump; stage digests in pipeline reports.
std::string digest(const Json& j);

}  // namespace tst
