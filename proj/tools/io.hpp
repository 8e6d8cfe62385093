#pragma once

#include <string>
#include <vector>

#include <json.hpp>
#include <padicheat/locally_constant.hpp>

namespace padicheat::cli {

/// "1/3,2" -> (1/3, 2) in Q_p^n.
Vector parse_vector(unsigned p, std::size_t n, const std::string& text);

/// Coordinates as exact rationals joined by ';', e.g. "1/3;2".
std::string vector_text(const Vector& x);

/// p-adic digits of x mod p^8 Z_p, most significant first, with a '.' before
/// the fractional digits; coordinates separated by ';'. Digits above 9 are
/// written in brackets.
std::string vector_digits(const Vector& x, unsigned integer_digits = 8);

/// Test-function file: {"pieces": [{"center": ["1/3", "0"], "radius": -1, "value": 0.5}, ...]}.
/// "value" is a number or [re, im]; pieces must be pairwise disjoint.
LocallyConstantFn load_test_function(const std::string& path, unsigned p, std::size_t n);

/// Coset-list file: {"cosets": [{"center": [...], "radius": r}, ...]}, pairwise disjoint.
std::vector<Coset> load_cosets(const std::string& path, unsigned p, std::size_t n);

Coset coset_from_json(const nlohmann::json& j, unsigned p, std::size_t n);
nlohmann::json coset_to_json(const Coset& c);

}  // namespace padicheat::cli
