#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "covmin/error.hpp"

namespace covmin {

// Expression templates are off so that `auto` never captures a lazy proxy.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

inline Int floor(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil(const Rat& r) { return -floor_div(-num(r), den(r)); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat make_rat(long long p, long long q = 1) {
    require(q != 0, Errc::InvalidInput, "zero denominator");
    return Rat(Int(p), Int(q));
}

inline std::size_t bit_size(const Int& a) {
    if (a == 0)
        return 0;
    return boost::multiprecision::msb(boost::multiprecision::abs(a)) + 1;
}

inline std::int64_t to_i64(const Int& a) {
    require(bit_size(a) < 63, Errc::BudgetExceeded, "integer does not fit in 64 bits");
    return a.convert_to<std::int64_t>();
}

using i128 = __int128;

inline Int from_i128(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    Int hi(static_cast<std::uint64_t>(u >> 64));
    Int lo(static_cast<std::uint64_t>(u));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

inline i128 to_i128(const Int& a) {
    require(bit_size(a) < 126, Errc::BudgetExceeded, "integer does not fit in 128 bits");
    Int m = a < 0 ? Int(-a) : a;
    Int mask = (Int(1) << 64) - 1;
    auto lo = static_cast<unsigned __int128>(Int(m & mask).convert_to<std::uint64_t>());
    auto hi = static_cast<unsigned __int128>(Int(m >> 64).convert_to<std::uint64_t>());
    auto v = static_cast<i128>((hi << 64) | lo);
    return a < 0 ? -v : v;
}

/// Exact text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rat& r) {
    if (is_integer(r))
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

namespace detail {
inline bool parse_int(std::string_view s, Int& out) {
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t k = start; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            return false;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    out = Int(digits);
    return true;
}
} // namespace detail

/// Parses "p" or "p/q". Decimal and exponent notation are rejected on purpose:
/// every input must be an exact rational.
inline Rat parse_rat(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (s.find_first_of(".eE") != std::string_view::npos)
        fail(Errc::InvalidInput, "floating-point literal '" + std::string(text) +
                                     "' rejected; write rationals as \"p/q\"");
    auto slash = s.find('/');
    Int p, q(1);
    bool ok = slash == std::string_view::npos
                  ? detail::parse_int(s, p)
                  : detail::parse_int(s.substr(0, slash), p) &&
                        detail::parse_int(s.substr(slash + 1), q);
    if (!ok)
        fail(Errc::InvalidInput, "malformed rational '" + std::string(text) + "'");
    if (q == 0)
        fail(Errc::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    return Rat(p, q);
}

} // namespace covmin
