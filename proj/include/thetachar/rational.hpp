#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "thetachar/errors.hpp"

namespace thetachar {

/// Exact rational arithmetic. GMP keeps values canonical (reduced, positive
/// denominator) as long as every raw numerator/denominator construction goes
/// through rat(); mpq_class{n, d} alone does NOT canonicalize.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) fail(Errc::InvalidInput, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) fail(Errc::InvalidInput, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_int(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_int(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline long lcm_long(long a, long b) {
    Int g;
    mpz_lcm_ui(g.get_mpz_t(), Int(a).get_mpz_t(), static_cast<unsigned long>(b));
    if (!g.fits_slong_p()) fail(Errc::InvalidInput, "denominator lcm overflow");
    return g.get_si();
}

/// Smallest positive L with L*r integral for every r in v (1 for empty v).
long common_denominator(const std::vector<Rat>& v);

std::string to_string(const Rat& r);

using WVec = std::vector<Rat>; // weight in fundamental-weight coordinates

WVec operator+(const WVec& a, const WVec& b);
WVec operator-(const WVec& a, const WVec& b);
WVec operator*(const Rat& c, const WVec& a);
bool is_zero(const WVec& a);

} // namespace thetachar
