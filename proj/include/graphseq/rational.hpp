#pragma once

// Exact rationals used for every reported ratio. Values are serialized as
// decimal strings; the double approximation is a convenience only.

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <cstdint>
#include <string>

namespace graphseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// {"num": "...", "den": "...", "approx": <double>}; "approx" is not authoritative.
inline nlohmann::json rational_json(const Rational& r) {
  return nlohmann::json{{"num", boost::multiprecision::numerator(r).str()},
                        {"den", boost::multiprecision::denominator(r).str()},
                        {"approx", to_double(r)}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  return Rational(BigInt(j.at("num").get<std::string>()),
                  BigInt(j.at("den").get<std::string>()));
}

}  // namespace graphseq
