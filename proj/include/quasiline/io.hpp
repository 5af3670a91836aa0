#pragma once

// JSON interchange for fans, divisors and model records. Integers that do not
// fit in 64 bits are written as decimal strings and accepted either way.

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "quasiline/divisor.hpp"
#include "quasiline/models.hpp"

namespace quasiline {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Json to_json(const Rational& q) {
  if (is_integral(q)) return to_json(Integer(numerator(q)));
  return to_string(q);
}

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
  }
  throw ParseError(where + ": expected an integer");
}

inline IntVector int_vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline Json fan_to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim;
  j["rays"] = Json::array();
  for (const auto& r : f.rays) j["rays"].push_back(to_json(r));
  j["cones"] = f.cones;
  return j;
}

/// Reads {dim, rays, cones}; the fan is not validated here.
inline Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("fan: expected an object");
  for (const char* key : {"dim", "rays", "cones"})
    if (!j.contains(key)) throw ParseError(std::string("fan: missing field '") + key + "'");
  if (!j["dim"].is_number_unsigned() || j["dim"].get<long long>() < 1) throw ParseError("fan.dim: expected a positive integer");
  Fan f;
  f.dim = j["dim"].get<std::size_t>();
  if (!j["rays"].is_array()) throw ParseError("fan.rays: expected a list");
  for (std::size_t i = 0; i < j["rays"].size(); ++i)
    f.rays.push_back(int_vector_from_json(j["rays"][i], "fan.rays[" + std::to_string(i) + "]"));
  if (!j["cones"].is_array()) throw ParseError("fan.cones: expected a list");
  for (std::size_t c = 0; c < j["cones"].size(); ++c) {
    const Json& cone = j["cones"][c];
    const std::string where = "fan.cones[" + std::to_string(c) + "]";
    if (!cone.is_array()) throw ParseError(where + ": expected a list of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& x : cone) {
      if (!x.is_number_unsigned()) throw ParseError(where + ": ray indices must be nonnegative integers");
      idx.push_back(x.get<std::size_t>());
    }
    std::sort(idx.begin(), idx.end());
    f.cones.push_back(idx);
  }
  return f;
}

/// Divisor document: {fan: {...}, values: [...]} with values index-aligned to rays.
inline SupportFunction divisor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fan") || !j.contains("values"))
    throw ParseError("divisor: expected an object with 'fan' and 'values'");
  Fan f = fan_from_json(j["fan"]);
  IntVector values = int_vector_from_json(j["values"], "divisor.values");
  if (values.size() != f.rays.size())
    throw ParseError("divisor.values: " + std::to_string(values.size()) + " values for " +
                     std::to_string(f.rays.size()) + " rays");
  return SupportFunction(std::move(f), std::move(values));
}

inline Json divisor_to_json(const SupportFunction& psi) {
  Json j;
  j["fan"] = fan_to_json(psi.fan);
  j["values"] = to_json(psi.values);
  return j;
}

inline Json record_to_json(const ModelRecord& r, bool with_provenance = true) {
  Json j;
  j["name"] = r.name;
  for (Field f : kAllFields) {
    if (!r.known(f)) continue;
    if (is_flag(f)) j[to_string(f)] = r.flag(f) == Tri::True;
    else j[to_string(f)] = *r.number(f);
  }
  if (with_provenance && !r.provenance.empty()) j["provenance"] = r.provenance;
  return j;
}

/// Unknown fields are omitted; null is accepted as unknown.
inline ModelRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("record: expected an object");
  ModelRecord r;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      if (!value.is_string()) throw ParseError("record.name: expected a string");
      r.name = value.get<std::string>();
      continue;
    }
    if (key == "provenance") {
      if (!value.is_object()) throw ParseError("record.provenance: expected an object");
      for (const auto& [k, v] : value.items()) {
        if (!v.is_string()) throw ParseError("record.provenance." + k + ": expected a string");
        r.provenance[k] = v.get<std::string>();
      }
      continue;
    }
    auto f = field_from_string(key);
    if (!f) throw ParseError("record: unknown field '" + key + "'");
    if (value.is_null()) continue;
    if (is_flag(*f)) {
      if (!value.is_boolean()) throw ParseError("record." + key + ": expected true or false");
      r.flag(*f) = tri(value.get<bool>());
    } else {
      if (!value.is_number_integer()) throw ParseError("record." + key + ": expected an integer");
      long long v = value.get<long long>();
      if (v < 1) throw ParseError("record." + key + ": expected a positive integer");
      r.number(*f) = v;
    }
  }
  return r;
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace quasiline
