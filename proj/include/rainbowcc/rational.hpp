#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace rainbowcc {

using Rational = boost::rational<std::int64_t>;

}  // namespace rainbowcc

namespace boost {

// Boost's mixed rational/integer operator== calls itself once C++20 adds
// reversed candidates. Exact-match overloads win overload resolution and
// route through the rational/rational comparison instead.
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace rainbowcc {

/// "p/q", or "p" when the denominator is one.
std::string exact_string(const Rational& value);

/// Decimal rendering used on CLI summary lines. Terminating fractions print as
/// plain decimals ("0.25"); others print four places followed by the exact
/// form ("0.1389 (5/36)").
std::string display_string(const Rational& value);

double to_double(const Rational& value);

std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace rainbowcc
