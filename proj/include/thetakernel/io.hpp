#pragma once

// JSON serialization of Gram matrices, expansions, certificates and reports.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "thetakernel/bqf.hpp"
#include "thetakernel/qexp.hpp"
#include "thetakernel/thetaop.hpp"

namespace thetakernel {

using Json = nlohmann::ordered_json;

/// "n" or "n/d" in lowest terms.
std::string rational_to_string(const Rational& x);
Rational rational_from_string(const std::string& s);

Json gram_to_json(const GramMatrix& s);
/// {"size": m, "entries": [[...], ...]}; throws InputError on malformed input.
GramMatrix gram_from_json(const Json& j);
GramMatrix read_gram_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Json matrix_to_json(const IntMatrix& m);
Json matrix_to_json(const RationalMatrix& m);

/// Coefficients in canonical index order.
Json expansion_to_json(const QExpansion& f);
QExpansion expansion_from_json(const Json& j);

Json certificate_to_json(const KernelCertificate& c);

Json form_to_json(const BinaryForm& f);
Json classgroup_to_json(std::int64_t discriminant);

struct Report {
  std::string claim;
  std::string ref;
  Json parameters = Json::object();
  bool pass = false;
  std::int64_t bound = 0;
  std::optional<Json> witness;
  std::optional<std::int64_t> elapsed_ms;
};

Json report_to_json(const Report& r);

}  // namespace thetakernel
