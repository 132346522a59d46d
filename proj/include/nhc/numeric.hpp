// Exact integer/rational arithmetic used throughout the library.
// Lattice coordinates are 64-bit; every derived product, determinant and
// length is computed in arbitrary precision so no intermediate can overflow.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nhc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor(a/b) for exact integers, b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Int ceil_rat(const Rat& q) { return ceil_div(rat_num(q), rat_den(q)); }

// Binomial coefficient C(n, k) evaluated as a polynomial in n (k fixed),
// so it is defined for every integer n: C(n,1) = n, C(n,2) = n(n-1)/2.
inline Int binom2(const Int& n) { return n * (n - 1) / 2; }

inline long long to_ll(const Int& v, const char* what = "value") {
    if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
        throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
    return static_cast<long long>(v);
}

} // namespace nhc
