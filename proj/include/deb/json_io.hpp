#pragma once

#include <string>

#include <json.hpp>

#include "deb/bounds.hpp"
#include "deb/codes.hpp"
#include "deb/innerprod.hpp"
#include "deb/levenshtein.hpp"
#include "deb/orthopoly.hpp"
#include "deb/poly.hpp"

namespace deb {

using Json = nlohmann::json;

void to_json(Json& j, const Poly& p);
void to_json(Json& j, const GegExpansion& g);
void to_json(Json& j, const DesignSpec& s);
void to_json(Json& j, const QuadratureRule& r);
void to_json(Json& j, const InnerProductRange& r);
void to_json(Json& j, const MarginReport& m);
void to_json(Json& j, const BoundReport& r);
void to_json(Json& j, const TestFunctionTable& t);
void to_json(Json& j, const InnerProductDistribution& d);

/// Deterministic text form: keys sorted, floats printed with 17 significant
/// digits, non-finite numbers written as null.
std::string dump_json(const Json& j, int indent = 2);

/// Same number formatting, for CSV cells.
std::string format_double(double x);

}  // namespace deb
