#include "lbfd/rational.hpp"

namespace lbfd {

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return b < 0 ? Rational(-b) : b;
  if (b == 0) return a < 0 ? Rational(-a) : a;
  Int an = numerator(a), ad = denominator(a);
  Int bn = numerator(b), bd = denominator(b);
  if (an < 0) an = -an;
  if (bn < 0) bn = -bn;
  Int g = gcd(an, bn);
  Int l = ad / gcd(ad, bd) * bd;
  return Rational(g, l);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

}  // namespace lbfd
