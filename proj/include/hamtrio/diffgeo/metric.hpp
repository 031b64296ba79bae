#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/matrix.hpp"
#include "hamtrio/symcore/rational_function.hpp"

namespace hamtrio::diffgeo {

using symcore::Mat;
using symcore::Polynomial;
using symcore::Rational;
using symcore::RationalFunction;
using symcore::VarTablePtr;

enum class Variance { Contravariant, Covariant };

// Symmetric n x n matrix of rational functions on the manifold of dependent
// variables.
class Metric {
 public:
  Metric(Variance variance, Mat<RationalFunction> entries)
      : variance_(variance), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
      throw InputError("metric matrix must be square");
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (entries_(i, j) != entries_(j, i))
          throw InputError("metric matrix must be symmetric at entry (" +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }

  int n() const { return entries_.rows(); }
  Variance variance() const { return variance_; }
  const Mat<RationalFunction>& entries() const { return entries_; }
  const RationalFunction& operator()(int i, int j) const { return entries_(i, j); }
  const VarTablePtr& table() const { return entries_(0, 0).table(); }

  bool is_polynomial() const {
    for (int i = 0; i < n(); ++i)
      for (int j = i; j < n(); ++j)
        if (!entries_(i, j).is_polynomial()) return false;
    return true;
  }

  bool operator==(const Metric& o) const {
    return variance_ == o.variance_ && entries_ == o.entries_;
  }

 private:
  Variance variance_;
  Mat<RationalFunction> entries_;
};

// Constant skew-symmetric non-degenerate matrix; the leading coefficient of
// the second-order operator eta d_x^2. eta_inv satisfies eta * eta_inv = I.
class SkewForm {
 public:
  explicit SkewForm(Mat<Rational> eta) : eta_(std::move(eta)) {
    if (eta_.rows() != eta_.cols()) throw InputError("skew form must be square");
    const int m = eta_.rows();
    if (m % 2 != 0)
      throw InputError("skew form dimension must be even (odd skew matrices are degenerate)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (eta_(i, j) != -eta_(j, i))
          throw InputError("matrix is not skew-symmetric at entry (" +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    Rational d = det(eta_);
    if (d == 0) throw InputError("skew form is degenerate");
    // Rational inverse via Gauss-Jordan.
    eta_inv_ = invert(eta_);
  }

  int n() const { return eta_.rows(); }
  const Mat<Rational>& eta() const { return eta_; }
  const Mat<Rational>& eta_inv() const { return eta_inv_; }
  Rational upper(int i, int j) const { return eta_(i, j); }      // eta^{ij}
  Rational lower(int i, int j) const { return eta_inv_(i, j); }  // eta_{ij}

  bool operator==(const SkewForm& o) const { return eta_ == o.eta_; }

  // Standard block form diag(J, J, ...) with J = [[0, 1], [-1, 0]].
  static SkewForm standard(int n) {
    Mat<Rational> e(n, n, Rational(0));
    for (int b = 0; b + 1 < n; b += 2) {
      e(b, b + 1) = 1;
      e(b + 1, b) = -1;
    }
    return SkewForm(std::move(e));
  }

 private:
  static Mat<Rational> invert(Mat<Rational> a) {
    const int m = a.rows();
    Mat<Rational> inv(m, m, Rational(0));
    for (int i = 0; i < m; ++i) inv(i, i) = 1;
    for (int c = 0; c < m; ++c) {
      int p = -1;
      for (int r = c; r < m; ++r)
        if (a(r, c) != 0) {
          p = r;
          break;
        }
      if (p < 0) throw InputError("skew form is degenerate");
      if (p != c)
        for (int j = 0; j < m; ++j) {
          std::swap(a(p, j), a(c, j));
          std::swap(inv(p, j), inv(c, j));
        }
      Rational s = 1 / a(c, c);
      for (int j = 0; j < m; ++j) {
        a(c, j) *= s;
        inv(c, j) *= s;
      }
      for (int r = 0; r < m; ++r) {
        if (r == c || a(r, c) == 0) continue;
        Rational f = a(r, c);
        for (int j = 0; j < m; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  Mat<Rational> eta_;
  Mat<Rational> eta_inv_;
};

// g_bar_{ab} = eta_{ia} eta_{jb} g^{ij}: index lowering with the skew form.
inline Metric lower_with_eta(const Metric& g, const SkewForm& eta) {
  if (g.variance() != Variance::Contravariant)
    throw InputError("lower_with_eta expects a contravariant metric");
  if (g.n() != eta.n()) throw InputError("dimension mismatch between metric and skew form");
  const int n = g.n();
  auto t = g.table();
  Mat<RationalFunction> out(n, n, RationalFunction::zero(t));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      RationalFunction s = RationalFunction::zero(t);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rational c = eta.lower(i, a) * eta.lower(j, b);
          if (c == 0) continue;
          s += g(i, j) * c;
        }
      out(a, b) = s;
      out(b, a) = std::move(s);
    }
  return Metric(Variance::Covariant, std::move(out));
}

// Inverse of lower_with_eta: g^{ij} = eta^{ai} eta^{bj} g_bar_{ab}.
inline Metric raise_with_eta(const Metric& gbar, const SkewForm& eta) {
  if (gbar.variance() != Variance::Covariant)
    throw InputError("raise_with_eta expects a covariant metric");
  if (gbar.n() != eta.n()) throw InputError("dimension mismatch between metric and skew form");
  const int n = gbar.n();
  auto t = gbar.table();
  Mat<RationalFunction> out(n, n, RationalFunction::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RationalFunction s = RationalFunction::zero(t);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Rational c = eta.upper(a, i) * eta.upper(b, j);
          if (c == 0) continue;
          s += gbar(a, b) * c;
        }
      out(i, j) = s;
      out(j, i) = std::move(s);
    }
  return Metric(Variance::Contravariant, std::move(out));
}

struct MongeResult {
  bool is_monge = true;
  int i = 0, j = 0, k = 0;   // 1-based violating triple when !is_monge
  Polynomial residual;       // the nonzero cyclic sum
};

// Cyclic derivative condition g_{ij,k} + g_{ki,j} + g_{jk,i} = 0.
inline MongeResult monge_check(const Metric& gbar) {
  if (gbar.variance() != Variance::Covariant)
    throw InputError("monge_check expects a covariant metric");
  if (!gbar.is_polynomial())
    throw InputError("monge_check requires polynomial metric entries");
  const int n = gbar.n();
  MongeResult res;
  res.residual = Polynomial::zero(gbar.table());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Polynomial s = gbar(i, j).as_polynomial().derivative(k) +
                       gbar(k, i).as_polynomial().derivative(j) +
                       gbar(j, k).as_polynomial().derivative(i);
        if (!s.is_zero()) {
          res.is_monge = false;
          res.i = i + 1;
          res.j = j + 1;
          res.k = k + 1;
          res.residual = std::move(s);
          return res;
        }
      }
  return res;
}

}  // namespace hamtrio::diffgeo
