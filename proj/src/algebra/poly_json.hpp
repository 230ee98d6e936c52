#ifndef ESD_ALGEBRA_POLY_JSON_HPP
#define ESD_ALGEBRA_POLY_JSON_HPP

#include "algebra/fqpoly.hpp"
#include "algebra/ratpoly.hpp"

#include <json.hpp>

namespace esd {

// Polynomials serialize as JSON arrays of base-10 coefficient strings
// ("num/den" for rationals), constant term first.
nlohmann::json ratpoly_to_json(const RatPoly& f);
RatPoly ratpoly_from_json(const nlohmann::json& j);

nlohmann::json fqpoly_to_json(const FqPoly& f); // base-field coefficients only
FqPoly fqpoly_from_json(const FqCtxPtr& F, const nlohmann::json& j);

BigRat rat_from_string(const std::string& s);

} // namespace esd

#endif
