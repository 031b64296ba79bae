#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/polynomial.hpp"

namespace hamtrio::symcore {

// Quotient of two polynomials in canonical form: gcd(num, den) = 1, den != 0,
// den monic in the graded-lex order. Equality is structural.
class RationalFunction {
 public:
  RationalFunction() = default;

  explicit RationalFunction(Polynomial num)
      : num_(std::move(num)), den_(Polynomial::one(num_.table())) {}

  RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero())
      throw DegeneracyError("division by the zero polynomial", "0");
    if (num.is_zero()) {
      num_ = std::move(num);
      den_ = Polynomial::one(num_.table());
      return;
    }
    if (!den.is_constant()) {
      Polynomial g = gcd(num, den);
      if (!g.is_constant()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
      }
    }
    Rational lc = den.leading_coeff();
    num_ = num * Rational(1 / lc);
    den_ = den * Rational(1 / lc);
  }

  static RationalFunction zero(const VarTablePtr& t) {
    return RationalFunction(Polynomial::zero(t));
  }
  static RationalFunction one(const VarTablePtr& t) {
    return RationalFunction(Polynomial::one(t));
  }
  static RationalFunction constant(const VarTablePtr& t, const Rational& c) {
    return RationalFunction(Polynomial::constant(t, c));
  }
  static RationalFunction var(const VarTablePtr& t, const std::string& name) {
    return RationalFunction(Polynomial::var(t, name));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const VarTablePtr& table() const { return num_.table(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  Rational constant_value() const {
    if (!is_constant()) throw InternalError("constant_value on non-constant");
    return num_.constant_value() / den_.constant_value();
  }

  Polynomial as_polynomial() const {
    if (!is_polynomial())
      throw InternalError("rational function is not polynomial: " + str());
    return num_ * Rational(1 / den_.constant_value());
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RationalFunction operator+(const RationalFunction& o) const {
    if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
    Polynomial g = gcd(den_, o.den_);
    if (g.is_constant())
      return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Polynomial da = divide_exact(den_, g), db = divide_exact(o.den_, g);
    return RationalFunction(num_ * db + o.num_ * da, den_ * db);
  }

  RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

  RationalFunction operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
  }

  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DegeneracyError("division by the zero polynomial", "0");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
  }

  RationalFunction operator*(const Rational& c) const {
    return RationalFunction(num_ * c, den_);
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction derivative(int id) const {
    if (is_polynomial()) return RationalFunction(num_.derivative(id), den_);
    return RationalFunction(num_.derivative(id) * den_ - num_ * den_.derivative(id),
                            den_ * den_);
  }

  RationalFunction subst(const std::map<int, Polynomial>& values) const {
    return RationalFunction(num_.subst(values), den_.subst(values));
  }

  double eval_double(const std::vector<double>& point) const {
    return num_.eval_double(point) / den_.eval_double(point);
  }

  Rational eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw DegeneracyError("evaluation at a pole", den_.str());
    return num_.eval(point) / d;
  }

  RationalFunction remap(const VarTablePtr& to) const {
    RationalFunction r;
    r.num_ = num_.remap(to);
    r.den_ = den_.remap(to);
    return r;
  }

  std::string str() const {
    if (is_polynomial()) return as_polynomial().str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  Polynomial num_, den_;
};

inline RationalFunction operator*(const Rational& c, const RationalFunction& f) {
  return f * c;
}

}  // namespace hamtrio::symcore
