#include "algebra/poly_json.hpp"

#include <stdexcept>

namespace esd {

BigRat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational string");
    BigRat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

nlohmann::json ratpoly_to_json(const RatPoly& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : f.coeffs()) a.push_back(qstr(c));
    return a;
}

RatPoly ratpoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
    std::vector<BigRat> c;
    for (const auto& e : j) {
        if (e.is_string()) c.push_back(rat_from_string(e.get<std::string>()));
        else if (e.is_number_integer()) c.push_back(BigRat(e.get<long>()));
        else throw std::invalid_argument("polynomial coefficients must be strings");
    }
    return RatPoly(std::move(c));
}

nlohmann::json fqpoly_to_json(const FqPoly& f) {
    nlohmann::json a = nlohmann::json::array();
    for (long i = 0; i <= f.deg(); ++i) {
        if (f.field()->k() != 1) throw std::invalid_argument("fqpoly_to_json: base field only");
        a.push_back(std::to_string(f.coeff(i)[0]));
    }
    return a;
}

FqPoly fqpoly_from_json(const FqCtxPtr& F, const nlohmann::json& j) {
    RatPoly f = ratpoly_from_json(j);
    return FqPoly::from_ratpoly(F, f);
}

} // namespace esd
