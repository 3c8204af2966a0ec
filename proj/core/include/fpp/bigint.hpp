#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpp {

// Exact integer and rational arithmetic. Smith normal form and the
// pullback/discrepancy solvers must never round or overflow, so everything
// that can grow past machine range runs on cpp_int.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::int64_t to_i64(const BigInt& x) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("value does not fit in 64 bits");
    return static_cast<std::int64_t>(x);
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// Remainder in [0, |b|).
inline BigInt pos_mod(const BigInt& a, const BigInt& b) {
    BigInt r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

inline std::int64_t pos_mod_i64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

}  // namespace fpp
