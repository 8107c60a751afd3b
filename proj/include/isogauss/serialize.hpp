#pragma once

#include "isogauss/cyclotomic.hpp"
#include "isogauss/quadform.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <string>

namespace isogauss {

using Json = nlohmann::ordered_json;

/// Big integers and rationals as decimal strings ("-3", "7/9").
Json to_json(const mpz_class& v);
Json to_json(const mpq_class& v);
/// Array of p-1 decimal strings.
Json to_json(const CycInt& v);
/// {"a": "...", "b": "..."}
Json to_json(const QuadValue& v);
/// {"n": .., "d": .., "disc": "sq" | "nonsq"}
Json to_json(const FormClass& c);
/// Nested integer arrays.
Json to_json(const SymMatrix& m);

/// Parses nested integer arrays such as [[1,0],[0,2]]; entries are reduced mod p.
/// Throws UsageError on malformed input.
SymMatrix parse_sym_matrix(const PrimeContext& ctx, const std::string& text);

} // namespace isogauss
