#ifndef KEPOLY_RATIONAL_HPP
#define KEPOLY_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace kepoly {

using Rat = mpq_class;
using Int = mpz_class;

/// Parse "a", "-a" or "a/b" into an exact rational. Rejects anything else.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
            throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
    Rat q;
    try {
        q = Rat(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

/// num/den in canonical form (the raw two-argument mpq_class constructor does
/// not reduce).
inline Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Decimal approximation with 12 significant digits, for report output.
inline std::string rat_to_decimal(const Rat& q) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", q.get_d());
    return buf;
}

}  // namespace kepoly

#endif
