#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace reliamis {

// All probabilities are exact rationals so that golden identities such as
// p^2 + pq hold as equalities, not approximations.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion of a decimal literal ("0.25", "9e-1") or a fraction
// ("3/8"). Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

// True when r has a finite decimal expansion (denominator of form 2^a 5^b).
bool has_finite_decimal(const Rat& r);

// Shortest exact decimal when one exists, otherwise "n/d".
std::string render_exact(const Rat& r);

// Decimal rendering rounded half-even to `places` digits after the point,
// with trailing zeros trimmed.
std::string render_decimal(const Rat& r, unsigned places = 12);

double to_double(const Rat& r);

}  // namespace reliamis
