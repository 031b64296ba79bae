#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace hamtrio::symcore {

// Exact arbitrary-precision rational coefficients. The n=4 eliminations
// overflow any fixed-width integer type.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// gcd on rationals: gcd(a/b, c/d) = gcd(a, c) / lcm(b, d). Used for
// polynomial content extraction.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  return Rational(gcd(num(a), num(b)), lcm(den(a), den(b)));
}

// Deterministic random rationals with numerator/denominator in [-99, 99],
// denominator positive. Used by the numeric cross-check oracles.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    std::uniform_int_distribution<int> numd(-99, 99);
    std::uniform_int_distribution<int> dend(1, 99);
    return Rational(numd(rng_), dend(rng_));
  }

  // A value bounded away from zero, for points that must avoid poles.
  Rational next_nonzero() {
    for (;;) {
      Rational r = next();
      if (r != 0 && abs(r) >= Rational(1, 99)) return r;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline bool is_perfect_square(const Rational& r, Rational* root = nullptr) {
  if (r < 0) return false;
  using boost::multiprecision::sqrt;
  Integer n = num(r), d = den(r);
  Integer sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  if (root) *root = Rational(sn, sd);
  return true;
}

}  // namespace hamtrio::symcore
