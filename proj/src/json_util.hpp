#pragma once

#include <json.hpp>

#include "paes/rational.hpp"

namespace paes::report {

inline nlohmann::ordered_json rational_json(const Rational& r) {
    return nlohmann::ordered_json{{"num", r.num()}, {"den", r.den()}};
}

} // namespace paes::report
