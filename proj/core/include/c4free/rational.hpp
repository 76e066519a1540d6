#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace c4free {

/// Exact rational used for every density threshold (d(G) >= k and friends).
using Rational = boost::rational<std::int64_t>;

/// "p/q" in lowest terms; integers print as "p/1" so the format is uniform.
std::string to_string(const Rational& value);

/// Inverse of to_string; also accepts a bare integer.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value) noexcept;

/// Smallest integer >= value.
std::int64_t ceil(const Rational& value) noexcept;

}  // namespace c4free
