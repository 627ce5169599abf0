#include "ggc/serialization.hpp"

#include <fstream>
#include <sstream>

namespace ggc {

using nlohmann::json;

void to_json(json& j, const GammaComponent& c) { j = json{{"shape", c.shape}, {"rate", c.rate}}; }

void to_json(json& j, const GammaConvolution& gc) {
  j = json{{"components", gc.components}, {"shift", gc.shift}};
}

void to_json(json& j, const ThorinMeasure& tm) {
  json atoms = json::array();
  for (const auto& a : tm.atoms) atoms.push_back({{"location", a.location}, {"mass", a.mass}});
  j = json{{"atoms", atoms}, {"shift", tm.shift}};
}

void to_json(json& j, const CMReport& r) {
  j = json{
      {"max_order", r.max_order},
      {"grid_description",
       {{"window", {r.window.lo, r.window.hi}}, {"points", r.points}, {"spacing", r.spacing}}},
      {"worst_margin", r.worst_margin},
      {"worst_location",
       {{"order", r.worst_location.order},
        {"point", r.worst_location.point},
        {"step", r.worst_location.step}}},
      {"verdict", to_string(r.verdict)},
      {"tolerance_used", r.tolerance_used},
      {"noise_floor", r.noise_floor},
      {"persistent_violations", r.persistent_violations},
  };
  if (!r.label.empty()) j["label"] = r.label;
  if (!r.parts.empty()) j["parts"] = r.parts;
}

namespace {

double number_field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ValidationError(std::string(where) + ": field \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

double optional_shift(const json& j, const char* where) {
  return j.contains("shift") ? number_field(j, "shift", where) : 0.0;
}

}  // namespace

GammaConvolution gamma_convolution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("components") || !j.at("components").is_array()) {
    throw ValidationError("GammaConvolution: expected an object with a \"components\" array");
  }
  GammaConvolution gc;
  for (const auto& c : j.at("components")) {
    gc.components.push_back(
        {number_field(c, "shape", "GammaComponent"), number_field(c, "rate", "GammaComponent")});
  }
  gc.shift = optional_shift(j, "GammaConvolution");
  try {
    gc.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return gc;
}

ThorinMeasure thorin_measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw ValidationError("ThorinMeasure: expected an object with an \"atoms\" array");
  }
  ThorinMeasure tm;
  for (const auto& a : j.at("atoms")) {
    tm.atoms.push_back(
        {number_field(a, "location", "ThorinAtom"), number_field(a, "mass", "ThorinAtom")});
  }
  tm.shift = optional_shift(j, "ThorinMeasure");
  try {
    tm.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return tm;
}

GammaConvolution parse_gamma_convolution(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model document is not valid JSON: ") + e.what());
  }
  return gamma_convolution_from_json(j);
}

GammaConvolution load_gamma_convolution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_gamma_convolution(buf.str());
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

}  // namespace ggc
