#ifndef LBFD_RATIONAL_HPP
#define LBFD_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lbfd {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// gcd of two non-negative rationals a/b and c/d in lowest terms is
// gcd(a, c) / lcm(b, d); it divides both with integer quotient.
Rational rational_gcd(const Rational& a, const Rational& b);

double to_double(const Rational& r);

// "3", "-3", "3/4"
std::string rational_str(const Rational& r);

}  // namespace lbfd

#endif
