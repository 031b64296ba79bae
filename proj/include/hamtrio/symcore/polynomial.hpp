#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/rational.hpp"
#include "hamtrio/symcore/vartable.hpp"

namespace hamtrio::symcore {

// Exponent vector over a fixed VarTable, with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : e_(static_cast<std::size_t>(nvars), 0u) {}

  static Monomial var(int nvars, int id, std::uint32_t exp = 1) {
    Monomial m(nvars);
    m.e_[static_cast<std::size_t>(id)] = exp;
    m.deg_ = exp;
    return m;
  }

  std::uint32_t exp(int id) const { return e_[static_cast<std::size_t>(id)]; }
  std::uint64_t degree() const { return deg_; }
  int nvars() const { return static_cast<int>(e_.size()); }
  bool is_one() const { return deg_ == 0; }

  void set_exp(int id, std::uint32_t v) {
    deg_ += v;
    deg_ -= e_[static_cast<std::size_t>(id)];
    e_[static_cast<std::size_t>(id)] = v;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  // this / o; requires o.divides(*this)
  Monomial operator/(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (o.e_[i] > r.e_[i]) throw InternalError("monomial division underflow");
      r.e_[i] -= o.e_[i];
    }
    r.deg_ = deg_ - o.deg_;
    return r;
  }

  // Graded lexicographic order: total degree first, ties broken scanning
  // from the greatest variable (pencil > params > field vars) downward.
  static int cmp(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
    for (std::size_t i = a.e_.size(); i-- > 0;) {
      if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }

 private:
  std::vector<std::uint32_t> e_;
  std::uint64_t deg_ = 0;
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::cmp(a, b) > 0;
  }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in strictly decreasing monomial order (leading term first);
// no zero coefficients are stored, so equality is structural.
class Polynomial {
 public:
  struct Term {
    Monomial m;
    Rational c;
  };

  Polynomial() = default;
  explicit Polynomial(VarTablePtr t) : table_(std::move(t)) {}

  static Polynomial zero(VarTablePtr t) { return Polynomial(std::move(t)); }

  static Polynomial constant(VarTablePtr t, Rational c) {
    Polynomial p(std::move(t));
    if (c != 0) p.terms_.push_back({Monomial(p.table_->size()), std::move(c)});
    return p;
  }

  static Polynomial one(VarTablePtr t) { return constant(std::move(t), 1); }

  static Polynomial var(VarTablePtr t, int id, std::uint32_t exp = 1) {
    Polynomial p(t);
    if (exp == 0) return one(t);
    p.terms_.push_back({Monomial::var(t->size(), id, exp), 1});
    return p;
  }

  static Polynomial var(const VarTablePtr& t, const std::string& name) {
    return var(t, t->id_of(name));
  }

  static Polynomial term(VarTablePtr t, Monomial m, Rational c) {
    Polynomial p(std::move(t));
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  const VarTablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
  }

  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw InternalError("constant_value on non-constant polynomial");
    return terms_[0].c;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_[0].m;
  }
  const Rational& leading_coeff() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_[0].c;
  }

  std::uint64_t total_degree() const { return terms_.empty() ? 0 : terms_[0].m.degree(); }

  std::uint32_t degree_in(int id) const {
    std::uint32_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.m.exp(id));
    return d;
  }

  bool depends_on(int id) const {
    for (auto& t : terms_)
      if (t.m.exp(id) > 0) return true;
    return false;
  }

  std::vector<int> variables() const {
    std::vector<int> out;
    for (int id = 0; id < table_->size(); ++id)
      if (depends_on(id)) out.push_back(id);
    return out;
  }

  bool has_field_vars() const {
    for (auto& t : terms_)
      for (int id = 0; id < table_->n_field(); ++id)
        if (t.m.exp(id) > 0) return true;
    return false;
  }

  // ---- arithmetic ----

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_table(o);
    Polynomial r(table_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = Monomial::cmp(terms_[i].m, o.terms_[j].m);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Rational s = terms_[i].c + o.terms_[j].c;
        if (s != 0) r.terms_.push_back({terms_[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_table(o);
    Polynomial r(table_);
    if (is_zero() || o.is_zero()) return r;
    std::map<Monomial, Rational, MonomialGreater> acc;
    for (auto& a : terms_) {
      for (auto& b : o.terms_) {
        Monomial m = a.m * b.m;
        Rational c = a.c * b.c;
        auto [it, fresh] = acc.emplace(std::move(m), c);
        if (!fresh) it->second += c;
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    return r;
  }

  Polynomial operator*(const Rational& c) const {
    Polynomial r(table_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(std::uint32_t e) const {
    Polynomial r = one(table_);
    Polynomial base = *this;
    while (e) {
      if (e & 1u) r = r * base;
      base = (e >>= 1u) ? base * base : base;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const {
    check_table(o);
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // ---- calculus / substitution / evaluation ----

  Polynomial derivative(int id) const {
    Polynomial r(table_);
    for (auto& t : terms_) {
      std::uint32_t e = t.m.exp(id);
      if (e == 0) continue;
      Monomial m = t.m;
      m.set_exp(id, e - 1);
      r.terms_.push_back({std::move(m), t.c * e});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
    return r;
  }

  // Substitute polynomials for a subset of the variables.
  Polynomial subst(const std::map<int, Polynomial>& values) const {
    Polynomial acc = zero(table_);
    std::map<int, std::vector<Polynomial>> powers;  // id -> [1, v, v^2, ...]
    for (auto& t : terms_) {
      Monomial rest(table_->size());
      Polynomial factor = one(table_);
      bool first = true;
      for (int id = 0; id < table_->size(); ++id) {
        std::uint32_t e = t.m.exp(id);
        if (e == 0) continue;
        auto it = values.find(id);
        if (it == values.end()) {
          rest.set_exp(id, e);
          continue;
        }
        auto& pw = powers[id];
        if (pw.empty()) pw.push_back(one(table_));
        while (pw.size() <= e) pw.push_back(pw.back() * it->second);
        factor = first && pw[e].is_constant() && pw[e].constant_value() == 1
                     ? factor
                     : factor * pw[e];
        first = false;
      }
      acc += term(table_, rest, t.c) * factor;
    }
    return acc;
  }

  // Evaluate at exact rational values for every variable.
  Rational eval(const std::vector<Rational>& point) const {
    Rational acc(0);
    for (auto& t : terms_) {
      Rational v = t.c;
      for (int id = 0; id < table_->size(); ++id) {
        std::uint32_t e = t.m.exp(id);
        for (std::uint32_t k = 0; k < e; ++k) v *= point[static_cast<std::size_t>(id)];
      }
      acc += v;
    }
    return acc;
  }

  double eval_double(const std::vector<double>& point) const {
    double acc = 0;
    for (auto& t : terms_) {
      double v = to_double(t.c);
      for (int id = 0; id < table_->size(); ++id) {
        std::uint32_t e = t.m.exp(id);
        if (e) v *= std::pow(point[static_cast<std::size_t>(id)], static_cast<double>(e));
      }
      acc += v;
    }
    return acc;
  }

  // Sum of |term| at a point; scale reference for relative comparisons.
  double eval_double_magnitude(const std::vector<double>& point) const {
    double acc = 0;
    for (auto& t : terms_) {
      double v = to_double(t.c);
      for (int id = 0; id < table_->size(); ++id) {
        std::uint32_t e = t.m.exp(id);
        if (e) v *= std::pow(point[static_cast<std::size_t>(id)], static_cast<double>(e));
      }
      acc += std::abs(v);
    }
    return acc;
  }

  // ---- content and normal forms ----

  // Positive rational c with integer coprime coefficients in *this / c.
  Rational content() const {
    Rational g(0);
    for (auto& t : terms_) g = rational_gcd(g, t.c);
    return g;  // 0 for the zero polynomial
  }

  // p / content, sign-adjusted so the leading coefficient is positive.
  Polynomial unit_normal() const {
    if (is_zero()) return *this;
    Rational c = content();
    if (leading_coeff() < 0) c = -c;
    return *this * Rational(1 / c);
  }

  // Same monomials map to same coefficients after scaling so the leading
  // coefficient is exactly 1.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * Rational(1 / leading_coeff());
  }

  // Coefficient polynomial of x^k where x = var id (collecting all terms).
  Polynomial coeff_of(int id, std::uint32_t k) const {
    Polynomial r(table_);
    for (auto& t : terms_) {
      if (t.m.exp(id) != k) continue;
      Monomial m = t.m;
      m.set_exp(id, 0);
      r.terms_.push_back({std::move(m), t.c});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
    return r;
  }

  // Move this polynomial to a table containing at least the same names.
  Polynomial remap(const VarTablePtr& to) const {
    if (table_.get() == to.get() || table_->same_universe(*to)) {
      Polynomial r = *this;
      r.table_ = to;
      return r;
    }
    std::vector<int> idmap(static_cast<std::size_t>(table_->size()));
    for (int id = 0; id < table_->size(); ++id) idmap[static_cast<std::size_t>(id)] = to->id_of(table_->name(id));
    Polynomial r(to);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
      Monomial m(to->size());
      for (int id = 0; id < table_->size(); ++id)
        if (t.m.exp(id)) m.set_exp(idmap[static_cast<std::size_t>(id)], t.m.exp(id));
      r.terms_.push_back({std::move(m), t.c});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
    return r;
  }

  // ---- printing ----

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
      Rational c = t.c;
      if (first) {
        if (c < 0) {
          os << "-";
          c = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      first = false;
      bool printed_coeff = false;
      if (c != 1 || t.m.is_one()) {
        os << c;
        printed_coeff = true;
      }
      bool first_var = true;
      for (int id = 0; id < table_->size(); ++id) {
        std::uint32_t e = t.m.exp(id);
        if (!e) continue;
        if (printed_coeff || !first_var) os << "*";
        os << table_->name(id);
        if (e > 1) os << "^" << e;
        first_var = false;
        printed_coeff = printed_coeff || true;
      }
    }
    return os.str();
  }

 private:
  void check_table(const Polynomial& o) const {
    if (table_.get() == o.table_.get()) return;
    if (!table_ || !o.table_ || !table_->same_universe(*o.table_))
      throw InternalError("polynomials from different variable tables");
  }

  VarTablePtr table_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

// ---- division / gcd machinery ----

// Exact multivariate division; throws InternalError if not divisible.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InternalError("division by zero polynomial");
  Polynomial q(a.table());
  Polynomial r = a;
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  while (!r.is_zero()) {
    if (!b.leading_monomial().divides(r.leading_monomial()))
      throw InternalError("inexact polynomial division");
    Monomial m = r.leading_monomial() / b.leading_monomial();
    Rational c = r.leading_coeff() / b.leading_coeff();
    Polynomial t = Polynomial::term(a.table(), m, c);
    q += t;
    r -= t * b;
  }
  return q;
}

inline bool divides(const Polynomial& b, const Polynomial& a, Polynomial* quot = nullptr) {
  if (b.is_zero()) return a.is_zero();
  if (b.is_constant()) {
    if (quot) *quot = a * Rational(1 / b.constant_value());
    return true;
  }
  Polynomial q(a.table());
  Polynomial r = a;
  while (!r.is_zero()) {
    if (!b.leading_monomial().divides(r.leading_monomial())) return false;
    Monomial m = r.leading_monomial() / b.leading_monomial();
    Rational c = r.leading_coeff() / b.leading_coeff();
    Polynomial t = Polynomial::term(a.table(), m, c);
    q += t;
    r -= t * b;
  }
  if (quot) *quot = q;
  return true;
}

namespace detail {

// Pseudo-remainder of a by b with respect to variable x.
inline Polynomial prem(Polynomial a, const Polynomial& b, int x) {
  std::uint32_t db = b.degree_in(x);
  Polynomial lb = b.coeff_of(x, db);
  auto t = a.table();
  while (!a.is_zero()) {
    std::uint32_t da = a.degree_in(x);
    if (da < db) break;
    Polynomial la = a.coeff_of(x, da);
    Polynomial shift = Polynomial::var(t, x, da - db);
    a = a * lb - la * shift * b;
  }
  return a;
}

inline Polynomial content_in(const Polynomial& p, int x);
inline Polynomial gcd_impl(Polynomial a, Polynomial b);

inline Polynomial primitive_in(const Polynomial& p, int x) {
  Polynomial c = content_in(p, x);
  return divide_exact(p, c);
}

// Content of p viewed as a univariate polynomial in x: gcd of coefficients.
inline Polynomial content_in(const Polynomial& p, int x) {
  Polynomial g(p.table());
  std::uint32_t d = p.degree_in(x);
  for (std::uint32_t k = 0; k <= d; ++k) {
    Polynomial c = p.coeff_of(x, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.unit_normal() : gcd_impl(g, c);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? Polynomial::one(p.table()) : g;
}

inline Polynomial gcd_impl(Polynomial a, Polynomial b) {
  if (a.is_zero()) return b.unit_normal();
  if (b.is_zero()) return a.unit_normal();
  if (a.is_constant() || b.is_constant()) return Polynomial::one(a.table());

  // Main variable: greatest id occurring in either operand.
  int x = -1;
  for (int id = a.table()->size(); id-- > 0;) {
    if (a.depends_on(id) || b.depends_on(id)) {
      x = id;
      break;
    }
  }
  if (x < 0) return Polynomial::one(a.table());
  if (!a.depends_on(x)) return gcd_impl(a, content_in(b, x));
  if (!b.depends_on(x)) return gcd_impl(b, content_in(a, x));

  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial cg = gcd_impl(ca, cb);
  Polynomial pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  // Primitive PRS.
  while (true) {
    Polynomial r = prem(pa, pb, x);
    if (r.is_zero()) break;
    r = primitive_in(r.unit_normal(), x);
    pa = std::move(pb);
    pb = std::move(r);
    if (!pb.depends_on(x)) return cg;  // coprime in x
  }
  return (cg * primitive_in(pb, x)).unit_normal();
}

}  // namespace detail

inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  return detail::gcd_impl(a, b);
}

// Square-free part: p / gcd(p, all partial derivatives).
inline Polynomial square_free_part(const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return p.unit_normal();
  Polynomial d = p;
  for (int id : p.variables()) {
    d = gcd(d, p.derivative(id));
    if (d.is_constant()) return p.unit_normal();
  }
  return divide_exact(p, d).unit_normal();
}

// Coefficients of each distinct field-variable monomial: eq == 0 identically
// in u iff every returned polynomial is zero. Returned in decreasing
// field-monomial order; pure-parameter polynomials map to the unit monomial.
inline std::vector<std::pair<Monomial, Polynomial>> split_by_field_vars_keyed(
    const Polynomial& eq) {
  auto t = eq.table();
  std::map<Monomial, Polynomial, MonomialGreater> groups;
  for (auto& term : eq.terms()) {
    Monomial umono(t->size());
    Monomial rest(t->size());
    for (int id = 0; id < t->size(); ++id) {
      std::uint32_t e = term.m.exp(id);
      if (!e) continue;
      (t->is_field(id) ? umono : rest).set_exp(id, e);
    }
    auto [it, fresh] = groups.emplace(std::move(umono), Polynomial::zero(t));
    it->second += Polynomial::term(t, std::move(rest), term.c);
  }
  std::vector<std::pair<Monomial, Polynomial>> out;
  out.reserve(groups.size());
  for (auto& [m, p] : groups)
    if (!p.is_zero()) out.emplace_back(m, p);
  return out;
}

inline std::vector<Polynomial> split_by_field_vars(const Polynomial& eq) {
  std::vector<Polynomial> out;
  for (auto& [m, p] : split_by_field_vars_keyed(eq)) out.push_back(p);
  if (out.empty()) out.push_back(Polynomial::zero(eq.table()));
  return out;
}

}  // namespace hamtrio::symcore
