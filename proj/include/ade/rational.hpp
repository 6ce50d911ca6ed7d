#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ade {

// Exact rational scalar used everywhere.  Arbitrary-precision so that
// Gaussian elimination and Neumann series never overflow.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline int sign_pow(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

} // namespace ade
