#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pvi {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.14159265358979323846;

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
using Vec4 = std::array<T, 4>;

inline double max_abs(const Vec3<Complex>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

inline double max_abs_diff(const Vec3<Complex>& a, const Vec3<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
    std::string s = boost::multiprecision::numerator(v).str();
    const BigInt den = boost::multiprecision::denominator(v);
    if (den != 1) s += "/" + den.str();
    return s;
}

}  // namespace pvi
