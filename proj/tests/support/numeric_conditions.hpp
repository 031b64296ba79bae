#pragma once

// Independent double-precision evaluation of the operator conditions.
// The symbolic kernel reports residuals as identically zero; these helpers
// recompute each residual numerically from evaluated ingredient tensors so
// a bug in the exact arithmetic cannot hide behind its own cancellation.

#include <vector>

#include "hamtrio/hamops/operators.hpp"
#include "support/test_support.hpp"

namespace testsupport {

using hamtrio::hamops::FirstOrderOperator;
using hamtrio::diffgeo::SkewForm;

struct EvaluatedOperator {
  int n = 0;
  DMat g;                      // g^{ij}
  DMat ginv;                   // covariant inverse
  std::vector<double> gamma;   // [(i n + j) n + k]
  std::vector<double> dgamma;  // [((i n + j) n + k) n + s] symbolic d evaluated
  std::vector<double> dg;      // [(i n + j) n + k] symbolic d evaluated
  DMat w;

  double G(int i, int j, int k) const {
    return gamma[static_cast<std::size_t>((i * n + j) * n + k)];
  }
  double dG(int i, int j, int k, int s) const {
    return dgamma[static_cast<std::size_t>(((i * n + j) * n + k) * n + s)];
  }
  double dGij(int i, int j, int k) const {
    return dg[static_cast<std::size_t>((i * n + j) * n + k)];
  }
};

inline EvaluatedOperator evaluate_operator(const FirstOrderOperator& op,
                                           const std::vector<double>& pt) {
  EvaluatedOperator e;
  e.n = op.n();
  const int n = e.n;
  e.g = eval_metric(op.g(), pt);
  e.ginv = invert(e.g);
  e.gamma.resize(static_cast<std::size_t>(n * n * n));
  e.dgamma.resize(static_cast<std::size_t>(n * n * n * n));
  e.dg.resize(static_cast<std::size_t>(n * n * n));
  e.w = dmat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      e.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          op.tail()(i, j).eval_double(pt);
      for (int k = 0; k < n; ++k) {
        e.gamma[static_cast<std::size_t>((i * n + j) * n + k)] =
            op.gamma().at(i, j, k).eval_double(pt);
        e.dg[static_cast<std::size_t>((i * n + j) * n + k)] =
            op.g()(i, j).derivative(k).eval_double(pt);
        for (int s = 0; s < n; ++s)
          e.dgamma[static_cast<std::size_t>(((i * n + j) * n + k) * n + s)] =
              op.gamma().at(i, j, k).derivative(s).eval_double(pt);
      }
    }
  return e;
}

// Largest residual of g^{is} Gamma^{jk}_s - g^{js} Gamma^{ik}_s, with scale.
inline std::pair<double, double> num_connection_symmetry(const EvaluatedOperator& e) {
  double worst = 0, scale = 1;
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j)
      for (int k = 0; k < e.n; ++k) {
        double acc = 0;
        for (int s = 0; s < e.n; ++s) {
          double a = e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] * e.G(j, k, s);
          double b = e.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] * e.G(i, k, s);
          acc += a - b;
          scale = std::max({scale, std::abs(a), std::abs(b)});
        }
        worst = std::max(worst, std::abs(acc));
      }
  return {worst, scale};
}

inline std::pair<double, double> num_metric_compatibility(const EvaluatedOperator& e) {
  double worst = 0, scale = 1;
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j)
      for (int k = 0; k < e.n; ++k) {
        double acc = e.dGij(i, j, k) - e.G(i, j, k) - e.G(j, i, k);
        scale = std::max({scale, std::abs(e.dGij(i, j, k)), std::abs(e.G(i, j, k))});
        worst = std::max(worst, std::abs(acc));
      }
  return {worst, scale};
}

inline std::pair<double, double> num_tail_metric_symmetry(const EvaluatedOperator& e) {
  double worst = 0, scale = 1;
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j) {
      double acc = 0;
      for (int s = 0; s < e.n; ++s) {
        double a = e.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] *
                   e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
        double b = e.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] *
                   e.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
        acc += a - b;
        scale = std::max({scale, std::abs(a), std::abs(b)});
      }
      worst = std::max(worst, std::abs(acc));
    }
  return {worst, scale};
}

// Covariant symbols from the numeric inverse: Lam^j_{sk} = -ginv_{st} G^{tj}_k.
inline std::vector<double> num_covariant(const EvaluatedOperator& e) {
  const int n = e.n;
  std::vector<double> lam(static_cast<std::size_t>(n * n * n), 0.0);
  for (int j = 0; j < n; ++j)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < n; ++k) {
        double acc = 0;
        for (int t = 0; t < n; ++t)
          acc += e.ginv[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] * e.G(t, j, k);
        lam[static_cast<std::size_t>((j * n + s) * n + k)] = -acc;
      }
  return lam;
}

inline std::pair<double, double> num_tail_covariant_symmetry(const EvaluatedOperator& e) {
  const int n = e.n;
  std::vector<double> lam = num_covariant(e);
  auto L = [&](int j, int s, int k) {
    return lam[static_cast<std::size_t>((j * n + s) * n + k)];
  };
  double worst = 0, scale = 1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double acc = 0;
        for (int s = 0; s < n; ++s) {
          double t1 = L(j, i, s) * e.w[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)];
          double t2 = L(s, i, k) * e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
          double t3 = L(j, k, s) * e.w[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
          double t4 = L(s, k, i) * e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
          acc += t1 - t2 - t3 + t4;
          scale = std::max({scale, std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
        }
        worst = std::max(worst, std::abs(acc));
      }
  return {worst, scale};
}

// R^{ij}_{kh} (finite differences) against the tail pattern.
inline std::pair<double, double> num_curvature_tail_balance(
    const FirstOrderOperator& op, const EvaluatedOperator& e,
    const std::vector<double>& pt) {
  const int n = e.n;
  std::vector<double> r = fd_curvature(op.g(), op.gamma(), pt, 1e-4);
  double worst = 0, scale = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          double pattern = 0;
          if (j == h) pattern += e.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          if (i == h) pattern -= e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (j == k) pattern -= e.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)];
          if (i == k) pattern += e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)];
          double rv = r[static_cast<std::size_t>(((i * n + j) * n + k) * n + h)];
          scale = std::max({scale, std::abs(rv), std::abs(pattern)});
          worst = std::max(worst, std::abs(rv - pattern));
        }
  return {worst, scale};
}

inline std::pair<double, double> num_tail_eta_symmetry(const EvaluatedOperator& e,
                                                       const SkewForm& eta) {
  double worst = 0, scale = 1;
  for (int i = 0; i < e.n; ++i)
    for (int k = 0; k < e.n; ++k) {
      double acc = 0;
      for (int l = 0; l < e.n; ++l) {
        double a = e.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                   hamtrio::symcore::to_double(eta.upper(l, k));
        double b = e.w[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                   hamtrio::symcore::to_double(eta.upper(l, i));
        acc += a + b;
        scale = std::max({scale, std::abs(a), std::abs(b)});
      }
      worst = std::max(worst, std::abs(acc));
    }
  return {worst, scale};
}

inline std::pair<double, double> num_gamma_eta_cocycle(const EvaluatedOperator& e,
                                                       const SkewForm& eta) {
  double worst = 0, scale = 1;
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j)
      for (int k = 0; k < e.n; ++k) {
        double acc = 0;
        for (int l = 0; l < e.n; ++l) {
          double a = e.G(i, j, l) * hamtrio::symcore::to_double(eta.upper(l, k));
          double b = e.G(k, j, l) * hamtrio::symcore::to_double(eta.upper(l, i));
          acc += a + b;
          scale = std::max({scale, std::abs(a), std::abs(b)});
        }
        worst = std::max(worst, std::abs(acc));
      }
  return {worst, scale};
}

inline std::pair<double, double> num_gamma_eta_cyclic(const EvaluatedOperator& e,
                                                      const SkewForm& eta) {
  double worst = 0, scale = 1;
  for (int k = 0; k < e.n; ++k)
    for (int i = 0; i < e.n; ++i)
      for (int j = 0; j < e.n; ++j) {
        double acc = 0;
        for (int l = 0; l < e.n; ++l) {
          double a = e.G(k, i, l) * hamtrio::symcore::to_double(eta.upper(l, j));
          double b = e.G(i, j, l) * hamtrio::symcore::to_double(eta.upper(l, k));
          double c = e.G(j, k, l) * hamtrio::symcore::to_double(eta.upper(l, i));
          acc += a + b + c;
          scale = std::max({scale, std::abs(a), std::abs(b), std::abs(c)});
        }
        worst = std::max(worst, std::abs(acc));
      }
  return {worst, scale};
}

inline std::pair<double, double> num_gamma_associativity(const EvaluatedOperator& e) {
  double worst = 0, scale = 1;
  for (int p = 0; p < e.n; ++p)
    for (int i = 0; i < e.n; ++i)
      for (int j = 0; j < e.n; ++j)
        for (int r = 0; r < e.n; ++r) {
          double acc = 0;
          for (int s = 0; s < e.n; ++s) {
            double a = e.G(s, j, p) * e.G(i, r, s);
            double b = e.G(s, r, p) * e.G(i, j, s);
            acc += a - b;
            scale = std::max({scale, std::abs(a), std::abs(b)});
          }
          worst = std::max(worst, std::abs(acc));
        }
  return {worst, scale};
}

inline std::pair<double, double> num_gamma_gradient_tail(const EvaluatedOperator& e) {
  double worst = 0, scale = 1;
  for (int k = 0; k < e.n; ++k)
    for (int j = 0; j < e.n; ++j)
      for (int l = 0; l < e.n; ++l)
        for (int s = 0; s < e.n; ++s) {
          double acc = e.dG(k, j, l, s);
          if (j == s) acc += e.w[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
          if (k == l) acc += e.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
          scale = std::max({scale, std::abs(e.dG(k, j, l, s))});
          worst = std::max(worst, std::abs(acc));
        }
  return {worst, scale};
}

// Every condition that a symbolic pass declared identically zero, evaluated
// numerically. Algebraic contractions must agree to 1e-9 relative; the
// curvature balance uses finite differences and gets 1e-6.
// Conditioning guard for FD-based checks: the product of the largest
// metric and inverse-metric entries bounds the error amplification.
inline bool well_conditioned(const FirstOrderOperator& op, const std::vector<double>& pt,
                             double bound = 60.0) {
  DMat g = eval_metric(op.g(), pt);
  DMat gi = invert(g);
  double mg = 0, mgi = 0;
  for (auto& row : g)
    for (double v : row) mg = std::max(mg, std::abs(v));
  for (auto& row : gi)
    for (double v : row) mgi = std::max(mgi, std::abs(v));
  return mg * mgi < bound && mg < 1e3;
}

inline void check_operator_numerically(const FirstOrderOperator& op,
                                       const SkewForm* eta,
                                       const std::vector<double>& pt,
                                       const std::function<void(bool)>& assert_fn) {
  EvaluatedOperator e = evaluate_operator(op, pt);
  auto ok9 = [&](std::pair<double, double> ws) {
    assert_fn(ws.first <= 1e-9 * std::max(1.0, ws.second));
  };
  ok9(num_connection_symmetry(e));
  ok9(num_metric_compatibility(e));
  ok9(num_tail_metric_symmetry(e));
  ok9(num_tail_covariant_symmetry(e));
  auto cb = num_curvature_tail_balance(op, e, pt);
  assert_fn(cb.first <= 1e-6 * std::max(1.0, cb.second));
  if (eta) {
    ok9(num_tail_eta_symmetry(e, *eta));
    ok9(num_gamma_eta_cocycle(e, *eta));
    ok9(num_gamma_eta_cyclic(e, *eta));
    ok9(num_gamma_associativity(e));
    ok9(num_gamma_gradient_tail(e));
  }
}

}  // namespace testsupport
