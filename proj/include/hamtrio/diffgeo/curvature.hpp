#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hamtrio/diffgeo/christoffel.hpp"

namespace hamtrio::diffgeo {

// Curvature tensor R^{ij}_{kh} of a contravariant metric with given
// contravariant Christoffel symbols. Components are kept over one shared
// polynomial denominator; normalization happens on access.
//
// Sign convention: fixed so that the canonical two-component family with
// quadratic leading coefficients has R^{12}_{12} = -c0 when the tail is
// -(c0/2) Id. (The cross checks against the non-local four-component
// solution confirm the same orientation.)
class CurvatureTensor {
 public:
  CurvatureTensor(int n, VarTablePtr t)
      : n_(n),
        table_(std::move(t)),
        num_(static_cast<std::size_t>(n * n * n * n), Polynomial::zero(table_)),
        den_(Polynomial::one(table_)) {}

  int n() const { return n_; }
  const VarTablePtr& table() const { return table_; }
  Polynomial& raw(int i, int j, int k, int h) { return num_[idx(i, j, k, h)]; }
  const Polynomial& raw(int i, int j, int k, int h) const { return num_[idx(i, j, k, h)]; }
  const Polynomial& raw_den() const { return den_; }
  void set_den(Polynomial d) { den_ = std::move(d); }

  bool is_zero() const {
    for (auto& p : num_)
      if (!p.is_zero()) return false;
    return true;
  }

  // Normalized component R^{ij}_{kh} (1-based indices).
  RationalFunction component(int i, int j, int k, int h) const {
    return rf_quick(raw(i - 1, j - 1, k - 1, h - 1), den_);
  }

 private:
  std::size_t idx(int i, int j, int k, int h) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + h);
  }
  int n_;
  VarTablePtr table_;
  std::vector<Polynomial> num_;
  Polynomial den_;
};

namespace detail {

// Covariant symbols derived from explicit contravariant ones:
// Lambda^j_{sk} = -g_{st} Gamma^{tj}_k, in cleared form num / (det * gden).
inline CovariantSymbols covariant_from(const ScaledMetric& g,
                                       const ScaledChristoffel& gamma, int n,
                                       const VarTablePtr& t) {
  CovariantSymbols cov;
  cov.n = n;
  cov.den = g.det * gamma.den;
  cov.num.assign(static_cast<std::size_t>(n * n * n), Polynomial::zero(t));
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < n; ++k) {
        Polynomial acc = Polynomial::zero(t);
        for (int tt = 0; tt < n; ++tt) {
          if (g.w(s, tt).is_zero()) continue;
          acc += g.w(s, tt) * gamma.at(tt, j, k);
        }
        cov.at(j, s, k) = -acc;
      }
  return cov;
}

// Riemann tensor R^k_{psl} from covariant symbols (cleared over den^2):
//   R^k_{psl} = d_l Lam^k_{sp} - d_s Lam^k_{lp}
//             + Lam^k_{lm} Lam^m_{sp} - Lam^k_{sm} Lam^m_{lp}
struct MixedRiemann {
  int n = 0;
  std::vector<Polynomial> num;  // [((k*n + p)*n + s)*n + l]
  Polynomial den;
  const Polynomial& at(int k, int p, int s, int l) const {
    return num[static_cast<std::size_t>(((k * n + p) * n + s) * n + l)];
  }
  Polynomial& at(int k, int p, int s, int l) {
    return num[static_cast<std::size_t>(((k * n + p) * n + s) * n + l)];
  }
};

inline MixedRiemann mixed_riemann(const CovariantSymbols& cov, const VarTablePtr& t) {
  const int n = cov.n;
  MixedRiemann r;
  r.n = n;
  r.den = cov.den * cov.den;
  r.num.assign(static_cast<std::size_t>(n * n * n * n), Polynomial::zero(t));
  std::vector<Polynomial> dden;
  for (int s = 0; s < n; ++s) dden.push_back(cov.den.derivative(s));
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p)
      for (int s = 0; s < n; ++s)
        for (int l = s + 1; l < n; ++l) {
          // d_l (num/den) - d_s (num/den), cleared over den^2
          Polynomial dterm = (cov.at(k, s, p).derivative(l) * cov.den -
                              cov.at(k, s, p) * dden[static_cast<std::size_t>(l)]) -
                             (cov.at(k, l, p).derivative(s) * cov.den -
                              cov.at(k, l, p) * dden[static_cast<std::size_t>(s)]);
          Polynomial quad = Polynomial::zero(t);
          for (int m = 0; m < n; ++m)
            quad += cov.at(k, l, m) * cov.at(m, s, p) - cov.at(k, s, m) * cov.at(m, l, p);
          Polynomial val = dterm + quad;
          r.at(k, p, s, l) = val;
          r.at(k, p, l, s) = -val;
        }
  return r;
}

}  // namespace detail

// R^{ij}_{kh} = g^{ip} R^j_{pkh}, computed exactly.
inline CurvatureTensor curvature(const Metric& g, const Christoffel& gamma) {
  if (g.variance() != Variance::Contravariant)
    throw InputError("curvature expects a contravariant metric");
  const int n = g.n();
  auto t = g.table();
  detail::ScaledMetric s = detail::scale_metric(g);
  detail::ScaledChristoffel sg = detail::scale_christoffel(gamma);
  detail::CovariantSymbols cov = detail::covariant_from(s, sg, n, t);
  detail::MixedRiemann mr = detail::mixed_riemann(cov, t);
  CurvatureTensor out(n, t);
  out.set_den(s.den * mr.den);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          Polynomial acc = Polynomial::zero(t);
          for (int p = 0; p < n; ++p) {
            if (s.num(i, p).is_zero()) continue;
            acc += s.num(i, p) * mr.at(j, p, k, h);
          }
          out.raw(i, j, k, h) = std::move(acc);
        }
  return out;
}

struct FlatnessResult {
  bool flat = true;
  int i = 0, j = 0, k = 0, h = 0;  // 1-based witness indices when !flat
  RationalFunction witness;
};

// True iff the curvature of the Levi-Civita connection vanishes identically.
inline FlatnessResult is_flat(const Metric& g) {
  Christoffel gamma = levi_civita(g);
  CurvatureTensor r = curvature(g, gamma);
  FlatnessResult res;
  res.witness = RationalFunction::zero(g.table());
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h)
          if (!r.raw(i, j, k, h).is_zero()) {
            res.flat = false;
            res.i = i + 1;
            res.j = j + 1;
            res.k = k + 1;
            res.h = h + 1;
            res.witness = r.component(i + 1, j + 1, k + 1, h + 1);
            return res;
          }
  return res;
}

}  // namespace hamtrio::diffgeo
