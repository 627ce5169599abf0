#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ggc/gammaconv.hpp"
#include "ggc/monotone.hpp"

namespace ggc {

/// Malformed or invariant-violating model documents.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void to_json(nlohmann::json& j, const GammaComponent& c);
void to_json(nlohmann::json& j, const GammaConvolution& gc);
void to_json(nlohmann::json& j, const ThorinMeasure& tm);
void to_json(nlohmann::json& j, const CMReport& r);

/// {"components":[{"shape":β,"rate":b},...],"shift":a}; "shift" may be omitted (0).
GammaConvolution gamma_convolution_from_json(const nlohmann::json& j);
/// {"atoms":[{"location":t,"mass":u},...],"shift":a}
ThorinMeasure thorin_measure_from_json(const nlohmann::json& j);

GammaConvolution parse_gamma_convolution(std::string_view text);
GammaConvolution load_gamma_convolution(const std::string& path);

/// JSON text; doubles use the shortest form that round-trips exactly.
std::string dump(const nlohmann::json& j, int indent = 2);

}  // namespace ggc
