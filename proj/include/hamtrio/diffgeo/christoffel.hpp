#pragma once

#include <utility>
#include <vector>

#include "hamtrio/diffgeo/metric.hpp"

namespace hamtrio::diffgeo {

using symcore::divide_exact;
using symcore::divides;

// Contravariant Christoffel symbols Gamma^{ij}_k (first two indices up,
// last one down). No symmetry is assumed; the operator conditions check it.
class Christoffel {
 public:
  Christoffel(int n, VarTablePtr table)
      : n_(n),
        table_(std::move(table)),
        comp_(static_cast<std::size_t>(n * n * n), RationalFunction::zero(table_)) {}

  int n() const { return n_; }
  const VarTablePtr& table() const { return table_; }

  RationalFunction& at(int i, int j, int k) {
    return comp_[idx(i, j, k)];
  }
  const RationalFunction& at(int i, int j, int k) const { return comp_[idx(i, j, k)]; }

  bool is_polynomial() const {
    for (auto& c : comp_)
      if (!c.is_polynomial()) return false;
    return true;
  }

  bool operator==(const Christoffel& o) const { return n_ == o.n_ && comp_ == o.comp_; }

 private:
  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  int n_;
  VarTablePtr table_;
  std::vector<RationalFunction> comp_;
};

// Construct a RationalFunction, trying cheap exact division before the
// general gcd-based normalization.
inline RationalFunction rf_quick(const Polynomial& num, const Polynomial& den) {
  if (num.is_zero()) return RationalFunction(num);
  Polynomial q(num.table());
  if (divides(den, num, &q)) return RationalFunction(std::move(q));
  return RationalFunction(num, den);
}

namespace detail {

// A metric in cleared-denominator form: g = num / den entrywise, together
// with det(num) and adjugate(num). The covariant inverse is
// g_{ij} = den * adj_{ij} / det.
struct ScaledMetric {
  Mat<Polynomial> num;
  Polynomial den;
  Polynomial det;
  Mat<Polynomial> adj;
  // covariant inverse = w / det with w = den * adj
  Mat<Polynomial> w;
};

inline ScaledMetric scale_metric(const Metric& g) {
  const int n = g.n();
  auto t = g.table();
  ScaledMetric s;
  s.den = Polynomial::one(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Polynomial& d = g(i, j).den();
      Polynomial cg = symcore::gcd(s.den, d);
      s.den = s.den * divide_exact(d, cg);
    }
  s.num = Mat<Polynomial>(n, n, Polynomial::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.num(i, j) = g(i, j).num() * divide_exact(s.den, g(i, j).den());
  s.det = symcore::det(s.num);
  if (s.det.is_zero()) {
    RationalFunction full_det = symcore::det(g.entries());
    throw DegeneracyError("metric is symbolically degenerate", full_det.str());
  }
  s.adj = symcore::adjugate(s.num);
  s.w = Mat<Polynomial>(n, n, Polynomial::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.w(i, j) = s.den * s.adj(i, j);
  return s;
}

// Christoffel symbols in cleared form: components num / den with a shared
// scalar denominator.
struct ScaledChristoffel {
  int n = 0;
  std::vector<Polynomial> num;  // [(i*n + j)*n + k]
  Polynomial den;

  const Polynomial& at(int i, int j, int k) const {
    return num[static_cast<std::size_t>((i * n + j) * n + k)];
  }
  Polynomial& at(int i, int j, int k) {
    return num[static_cast<std::size_t>((i * n + j) * n + k)];
  }
};

inline ScaledChristoffel scale_christoffel(const Christoffel& gamma) {
  const int n = gamma.n();
  auto t = gamma.table();
  ScaledChristoffel s;
  s.n = n;
  s.den = Polynomial::one(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Polynomial& d = gamma.at(i, j, k).den();
        Polynomial cg = symcore::gcd(s.den, d);
        s.den = s.den * divide_exact(d, cg);
      }
  s.num.assign(static_cast<std::size_t>(n * n * n), Polynomial::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        s.at(i, j, k) =
            gamma.at(i, j, k).num() * divide_exact(s.den, gamma.at(i, j, k).den());
  return s;
}

// Covariant Levi-Civita symbols Lambda^j_{sk} of the inverse metric, in
// cleared form: Lambda = num / (2 * den_g * det^2).
struct CovariantSymbols {
  int n = 0;
  std::vector<Polynomial> num;  // [(j*n + s)*n + k]
  Polynomial den;

  const Polynomial& at(int j, int s, int k) const {
    return num[static_cast<std::size_t>((j * n + s) * n + k)];
  }
  Polynomial& at(int j, int s, int k) {
    return num[static_cast<std::size_t>((j * n + s) * n + k)];
  }
};

inline CovariantSymbols levi_civita_covariant(const ScaledMetric& g, int n,
                                              const VarTablePtr& t) {
  // X[s][l][k] = d_s w_{lk} * det - w_{lk} * d_s det
  std::vector<Polynomial> X(static_cast<std::size_t>(n * n * n), Polynomial::zero(t));
  auto xat = [&](int s, int l, int k) -> Polynomial& {
    return X[static_cast<std::size_t>((s * n + l) * n + k)];
  };
  std::vector<Polynomial> ddet;
  for (int s = 0; s < n; ++s) ddet.push_back(g.det.derivative(s));
  for (int s = 0; s < n; ++s)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        xat(s, l, k) = g.w(l, k).derivative(s) * g.det - g.w(l, k) * ddet[static_cast<std::size_t>(s)];

  CovariantSymbols cov;
  cov.n = n;
  cov.den = Rational(2) * g.den * g.det * g.det;
  cov.num.assign(static_cast<std::size_t>(n * n * n), Polynomial::zero(t));
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < n; ++k) {
        Polynomial acc = Polynomial::zero(t);
        for (int l = 0; l < n; ++l) {
          if (g.num(j, l).is_zero()) continue;
          acc += g.num(j, l) * (xat(s, l, k) + xat(k, l, s) - xat(l, s, k));
        }
        cov.at(j, s, k) = std::move(acc);
      }
  return cov;
}

}  // namespace detail

// Levi-Civita contravariant Christoffel symbols of a contravariant metric:
// Gamma^{ij}_k = -g^{is} Lambda^j_{sk} with Lambda the covariant symbols of
// the inverse metric.
inline Christoffel levi_civita(const Metric& g) {
  if (g.variance() != Variance::Contravariant)
    throw InputError("levi_civita expects a contravariant metric");
  const int n = g.n();
  auto t = g.table();
  detail::ScaledMetric s = detail::scale_metric(g);
  detail::CovariantSymbols cov = detail::levi_civita_covariant(s, n, t);
  Christoffel out(n, t);
  Polynomial den = s.den * cov.den;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Polynomial acc = Polynomial::zero(t);
        for (int v = 0; v < n; ++v) {
          if (s.num(i, v).is_zero()) continue;
          acc += s.num(i, v) * cov.at(j, v, k);
        }
        out.at(i, j, k) = rf_quick(-acc, den);
      }
  return out;
}

}  // namespace hamtrio::diffgeo
