#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hrt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int binomial(long long n, long long k);

Int ipow(Int base, unsigned long exp);
Rat rat_pow(const Rat& x, unsigned long exp);

/// Largest t = a/2^bits with t^q <= x, for x >= 0 and q >= 1. Used to round
/// irrational roots downward so that inequality checks stay one-sided.
Rat root_lower(const Rat& x, unsigned q, unsigned bits = 48);

/// "p/q" in lowest terms ("3/4", "0/1", "-1/2").
std::string rat_str(const Rat& r);

/// Accepts "p/q" or a bare integer; throws SchemaError on anything else.
Rat rat_parse(const std::string& s);

}  // namespace hrt
