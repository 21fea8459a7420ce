#include "hrt/rational.hpp"

#include <cctype>

#include "hrt/errors.hpp"

namespace hrt {

Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

Int ipow(Int base, unsigned long exp) {
    Int result = 1;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

Rat rat_pow(const Rat& x, unsigned long exp) {
    return Rat(ipow(numerator(x), exp), ipow(denominator(x), exp));
}

Rat root_lower(const Rat& x, unsigned q, unsigned bits) {
    if (x < 0) throw std::invalid_argument("root_lower: negative argument");
    if (q == 0) throw std::invalid_argument("root_lower: zero exponent");
    if (x == 0) return Rat(0);
    if (x == 1) return Rat(1);
    // Binary search over a in [0, ceil] with t = a / 2^bits, t^q <= x.
    Int scale = ipow(Int(2), bits);
    Int lo = 0;
    Int hi = scale;
    if (x > 1) {
        // x^(1/q) <= x for x >= 1
        hi = (numerator(x) / denominator(x) + 1) * scale;
    }
    // invariant: (lo/scale)^q <= x < ((hi+1)/scale)^q
    while (lo < hi) {
        Int mid = lo + (hi - lo + 1) / 2;
        if (Rat(ipow(mid, q), ipow(scale, q)) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return Rat(lo, scale);
}

std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_parse(const std::string& s) {
    auto bad = [&]() { throw SchemaError("malformed rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        if (part.empty()) bad();
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) bad();
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) bad();
    };
    try {
        if (slash == std::string::npos) {
            check_int(s);
            return Rat(Int(s));
        }
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        Int d(den);
        if (d == 0) bad();
        return Rat(Int(num), d);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(0);  // unreachable
}

}  // namespace hrt
