#include "io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "config.hpp"

namespace padicheat::cli {

using nlohmann::json;

Vector parse_vector(unsigned p, std::size_t n, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " coordinates in \"" + text + "\"");
  return Vector::parse(p, parts);
}

std::string vector_text(const Vector& x) {
  std::string out;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) out += ';';
    out += x[i].str();
  }
  return out;
}

std::string vector_digits(const Vector& x, unsigned integer_digits) {
  const unsigned p = x.prime();
  std::string out;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (i) out += ';';
    const Scalar& s = x[i];
    const long v = s.valuation().value_or(0);
    const unsigned frac = v < 0 ? static_cast<unsigned>(-v) : 0;
    // s p^frac is integral; its residue mod p^{frac + integer_digits} holds all the digits we print
    const BigInt r = s.shifted(static_cast<long>(frac)).residue(frac + integer_digits);
    BigInt rest = r;
    std::vector<unsigned> digits;
    for (unsigned k = 0; k < frac + integer_digits; ++k) {
      digits.push_back(static_cast<unsigned>(rest % p));
      rest /= p;
    }
    std::string str;
    for (std::size_t k = digits.size(); k-- > 0;) {
      str += digits[k] < 10 ? std::string(1, static_cast<char>('0' + digits[k])) : "[" + std::to_string(digits[k]) + "]";
      if (k == frac && frac > 0) str += '.';
    }
    out += str;
  }
  return out;
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open"});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": not valid JSON: " + e.what()});
  }
}

}  // namespace

Coset coset_from_json(const json& j, unsigned p, std::size_t n) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw std::invalid_argument("a coset needs \"center\" and \"radius\"");
  for (const auto& [k, v] : j.items())
    if (k != "center" && k != "radius" && k != "value") throw std::invalid_argument("unknown field \"" + k + "\"");
  const auto& c = j.at("center");
  if (!c.is_array() || c.size() != n) throw std::invalid_argument("center must list " + std::to_string(n) + " coordinates");
  std::vector<std::string> coords;
  for (const auto& e : c) {
    if (e.is_string()) coords.push_back(e.get<std::string>());
    else if (e.is_number_integer()) coords.push_back(std::to_string(e.get<long long>()));
    else throw std::invalid_argument("coordinates are integers or rational strings like \"1/3\"");
  }
  if (!j.at("radius").is_number_integer()) throw std::invalid_argument("radius must be an integer exponent");
  return Coset(Vector::parse(p, coords), j.at("radius").get<long>());
}

json coset_to_json(const Coset& c) {
  json center = json::array();
  for (const auto& s : c.center().coords()) center.push_back(s.str());
  return {{"center", center}, {"radius", c.radius_exp()}};
}

LocallyConstantFn load_test_function(const std::string& path, unsigned p, std::size_t n) {
  const json doc = load_json(path);
  std::vector<std::string> issues;
  std::vector<Piece> pieces;
  if (!doc.is_object() || !doc.contains("pieces") || !doc["pieces"].is_array() || doc.size() != 1)
    throw ConfigError({path + ": expected an object with a single \"pieces\" array"});
  std::size_t idx = 0;
  for (const auto& e : doc["pieces"]) {
    const std::string where = path + ": pieces[" + std::to_string(idx++) + "]: ";
    try {
      const Coset c = coset_from_json(e, p, n);
      Complex value = 1.0;
      if (e.contains("value")) {
        const auto& v = e["value"];
        if (v.is_number()) value = v.get<double>();
        else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
          value = {v[0].get<double>(), v[1].get<double>()};
        else throw std::invalid_argument("value must be a number or [re, im]");
      }
      pieces.push_back({c, value});
    } catch (const std::exception& ex) {
      issues.push_back(where + ex.what());
    }
  }
  if (!issues.empty()) throw ConfigError(issues);
  try {
    return LocallyConstantFn::from_pieces(p, n, std::move(pieces));
  } catch (const std::exception& ex) {
    throw ConfigError({path + ": " + ex.what()});
  }
}

std::vector<Coset> load_cosets(const std::string& path, unsigned p, std::size_t n) {
  const json doc = load_json(path);
  if (!doc.is_object() || !doc.contains("cosets") || !doc["cosets"].is_array() || doc.size() != 1)
    throw ConfigError({path + ": expected an object with a single \"cosets\" array"});
  std::vector<std::string> issues;
  std::vector<Coset> out;
  std::size_t idx = 0;
  for (const auto& e : doc["cosets"]) {
    try {
      if (e.contains("value")) throw std::invalid_argument("unknown field \"value\"");
      out.push_back(coset_from_json(e, p, n));
    } catch (const std::exception& ex) {
      issues.push_back(path + ": cosets[" + std::to_string(idx) + "]: " + ex.what());
    }
    ++idx;
  }
  if (out.empty() && issues.empty()) issues.push_back(path + ": the coset list is empty");
  if (issues.empty() && !pairwise_disjoint(out)) issues.push_back(path + ": cosets overlap");
  if (!issues.empty()) throw ConfigError(issues);
  return out;
}

}  // namespace padicheat::cli
