#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamtrio/diffgeo/curvature.hpp"
#include "hamtrio/hamops/operators.hpp"
#include "hamtrio/hamops/report.hpp"

namespace hamtrio::hamops {

using diffgeo::rf_quick;

namespace detail {

using diffgeo::detail::ScaledChristoffel;
using diffgeo::detail::ScaledMetric;

struct ScaledTail {
  Mat<Polynomial> num;
  Polynomial den;
};

inline ScaledTail scale_tail(const Mat<RationalFunction>& w) {
  const int n = w.rows();
  auto t = w(0, 0).table();
  ScaledTail s;
  s.den = symcore::Polynomial::one(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Polynomial& d = w(i, j).den();
      Polynomial g = symcore::gcd(s.den, d);
      s.den = s.den * symcore::divide_exact(d, g);
    }
  s.num = Mat<Polynomial>(n, n, Polynomial::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s.num(i, j) = w(i, j).num() * symcore::divide_exact(s.den, w(i, j).den());
  return s;
}

// Cleared-denominator data for one operator.
struct OpScaled {
  int n = 0;
  symcore::VarTablePtr t;
  ScaledMetric g;
  ScaledChristoffel gam;
  ScaledTail w;
};

inline OpScaled scale_operator(const FirstOrderOperator& op) {
  OpScaled s;
  s.n = op.n();
  s.t = op.table();
  s.g = diffgeo::detail::scale_metric(op.g());
  s.gam = diffgeo::detail::scale_christoffel(op.gamma());
  s.w = scale_tail(op.tail());
  return s;
}

// Covariant symbols -g_{st} Gamma^{tj}_k of the operator's connection.
inline diffgeo::detail::CovariantSymbols covariant_symbols(const OpScaled& s) {
  return diffgeo::detail::covariant_from(s.g, s.gam, s.n, s.t);
}

struct ConditionScan {
  ConditionResult result;
  const Polynomial* den = nullptr;

  explicit ConditionScan(std::string name) { result.name = std::move(name); }

  // Record the first nonzero residual (indices are 1-based).
  void observe(const Polynomial& residual, const Polynomial& denom,
               std::initializer_list<int> idx) {
    if (!result.passed || residual.is_zero()) return;
    result.passed = false;
    result.indices.assign(idx.begin(), idx.end());
    result.residual = rf_quick(residual, denom).str();
  }
};

}  // namespace detail

// g^{is} Gamma^{jk}_s = g^{js} Gamma^{ik}_s
inline ConditionResult check_connection_symmetry(const detail::OpScaled& s) {
  detail::ConditionScan scan("connection_symmetry");
  Polynomial den = s.g.den * s.gam.den;
  for (int i = 0; i < s.n && scan.result.passed; ++i)
    for (int j = i + 1; j < s.n && scan.result.passed; ++j)
      for (int k = 0; k < s.n && scan.result.passed; ++k) {
        Polynomial acc = Polynomial::zero(s.t);
        for (int v = 0; v < s.n; ++v)
          acc += s.g.num(i, v) * s.gam.at(j, k, v) - s.g.num(j, v) * s.gam.at(i, k, v);
        scan.observe(acc, den, {i + 1, j + 1, k + 1});
      }
  return scan.result;
}

// d_k g^{ij} = Gamma^{ij}_k + Gamma^{ji}_k
inline ConditionResult check_metric_compatibility(const detail::OpScaled& s) {
  detail::ConditionScan scan("metric_compatibility");
  Polynomial den = s.g.den * s.g.den * s.gam.den;
  for (int i = 0; i < s.n && scan.result.passed; ++i)
    for (int j = i; j < s.n && scan.result.passed; ++j)
      for (int k = 0; k < s.n && scan.result.passed; ++k) {
        Polynomial dg = s.g.num(i, j).derivative(k) * s.g.den -
                        s.g.num(i, j) * s.g.den.derivative(k);
        Polynomial acc = s.gam.den * dg -
                         s.g.den * s.g.den * (s.gam.at(i, j, k) + s.gam.at(j, i, k));
        scan.observe(acc, den, {i + 1, j + 1, k + 1});
      }
  return scan.result;
}

// g^{is} w^j_s = g^{js} w^i_s
inline ConditionResult check_tail_metric_symmetry(const detail::OpScaled& s) {
  detail::ConditionScan scan("tail_metric_symmetry");
  Polynomial den = s.g.den * s.w.den;
  for (int i = 0; i < s.n && scan.result.passed; ++i)
    for (int j = i + 1; j < s.n && scan.result.passed; ++j) {
      Polynomial acc = Polynomial::zero(s.t);
      for (int v = 0; v < s.n; ++v)
        acc += s.g.num(i, v) * s.w.num(j, v) - s.g.num(j, v) * s.w.num(i, v);
      scan.observe(acc, den, {i + 1, j + 1});
    }
  return scan.result;
}

// nabla_i w^j_k = nabla_k w^j_i for the Levi-Civita connection of g.
inline ConditionResult check_tail_covariant_symmetry(
    const detail::OpScaled& s, const diffgeo::detail::CovariantSymbols& cov) {
  detail::ConditionScan scan("tail_covariant_symmetry");
  Polynomial den = cov.den * s.w.den;
  for (int j = 0; j < s.n && scan.result.passed; ++j)
    for (int i = 0; i < s.n && scan.result.passed; ++i)
      for (int k = i + 1; k < s.n && scan.result.passed; ++k) {
        Polynomial acc = Polynomial::zero(s.t);
        for (int v = 0; v < s.n; ++v) {
          acc += cov.at(j, i, v) * s.w.num(v, k) - cov.at(v, i, k) * s.w.num(j, v);
          acc -= cov.at(j, k, v) * s.w.num(v, i) - cov.at(v, k, i) * s.w.num(j, v);
        }
        scan.observe(acc, den, {i + 1, j + 1, k + 1});
      }
  return scan.result;
}

// R^{ij}_{kh} = w^i_k d^j_h - w^j_k d^i_h - w^i_h d^j_k + w^j_h d^i_k
inline ConditionResult check_curvature_tail_balance(const detail::OpScaled& s,
                                                    const diffgeo::CurvatureTensor& r) {
  detail::ConditionScan scan("curvature_tail_balance");
  Polynomial den = r.raw_den() * s.w.den;
  auto wn = [&](int i, int j) -> const Polynomial& { return s.w.num(i, j); };
  for (int i = 0; i < s.n && scan.result.passed; ++i)
    for (int j = 0; j < s.n && scan.result.passed; ++j)
      for (int k = 0; k < s.n && scan.result.passed; ++k)
        for (int h = 0; h < s.n && scan.result.passed; ++h) {
          Polynomial pattern = Polynomial::zero(s.t);
          if (j == h) pattern += wn(i, k);
          if (i == h) pattern -= wn(j, k);
          if (j == k) pattern -= wn(i, h);
          if (i == k) pattern += wn(j, h);
          Polynomial acc = r.raw(i, j, k, h) * s.w.den - r.raw_den() * pattern;
          scan.observe(acc, den, {i + 1, j + 1, k + 1, h + 1});
        }
  return scan.result;
}

// w^i_l eta^{lk} + w^k_l eta^{li} = 0
inline ConditionResult check_tail_eta_symmetry(const detail::OpScaled& s,
                                               const SkewForm& eta) {
  detail::ConditionScan scan("tail_eta_symmetry");
  for (int i = 0; i < s.n && scan.result.passed; ++i)
    for (int k = i; k < s.n && scan.result.passed; ++k) {
      Polynomial acc = Polynomial::zero(s.t);
      for (int l = 0; l < s.n; ++l)
        acc += s.w.num(i, l) * eta.upper(l, k) + s.w.num(k, l) * eta.upper(l, i);
      scan.observe(acc, s.w.den, {i + 1, k + 1});
    }
  return scan.result;
}

// Gamma^{ij}_l eta^{lk} + Gamma^{kj}_l eta^{li} = 0
inline ConditionResult check_gamma_eta_cocycle(const detail::ScaledChristoffel& gam,
                                               const SkewForm& eta,
                                               const symcore::VarTablePtr& t) {
  detail::ConditionScan scan("gamma_eta_cocycle");
  const int n = gam.n;
  for (int i = 0; i < n && scan.result.passed; ++i)
    for (int j = 0; j < n && scan.result.passed; ++j)
      for (int k = i; k < n && scan.result.passed; ++k) {
        Polynomial acc = Polynomial::zero(t);
        for (int l = 0; l < n; ++l)
          acc += gam.at(i, j, l) * eta.upper(l, k) + gam.at(k, j, l) * eta.upper(l, i);
        scan.observe(acc, gam.den, {i + 1, j + 1, k + 1});
      }
  return scan.result;
}

// Gamma^{ki}_l eta^{lj} + Gamma^{ij}_l eta^{lk} + Gamma^{jk}_l eta^{li} = 0
inline ConditionResult check_gamma_eta_cyclic(const detail::ScaledChristoffel& gam,
                                              const SkewForm& eta,
                                              const symcore::VarTablePtr& t) {
  detail::ConditionScan scan("gamma_eta_cyclic");
  const int n = gam.n;
  for (int k = 0; k < n && scan.result.passed; ++k)
    for (int i = 0; i < n && scan.result.passed; ++i)
      for (int j = 0; j < n && scan.result.passed; ++j) {
        Polynomial acc = Polynomial::zero(t);
        for (int l = 0; l < n; ++l)
          acc += gam.at(k, i, l) * eta.upper(l, j) + gam.at(i, j, l) * eta.upper(l, k) +
                 gam.at(j, k, l) * eta.upper(l, i);
        scan.observe(acc, gam.den, {k + 1, i + 1, j + 1});
      }
  return scan.result;
}

// Gamma^{sj}_p Gamma^{ir}_s = Gamma^{sr}_p Gamma^{ij}_s
inline ConditionResult check_gamma_associativity(const detail::ScaledChristoffel& gam,
                                                 const symcore::VarTablePtr& t) {
  detail::ConditionScan scan("gamma_associativity");
  const int n = gam.n;
  Polynomial den = gam.den * gam.den;
  for (int p = 0; p < n && scan.result.passed; ++p)
    for (int i = 0; i < n && scan.result.passed; ++i)
      for (int j = 0; j < n && scan.result.passed; ++j)
        for (int r = j + 1; r < n && scan.result.passed; ++r) {
          Polynomial acc = Polynomial::zero(t);
          for (int v = 0; v < n; ++v)
            acc += gam.at(v, j, p) * gam.at(i, r, v) - gam.at(v, r, p) * gam.at(i, j, v);
          scan.observe(acc, den, {p + 1, i + 1, j + 1, r + 1});
        }
  return scan.result;
}

// d Gamma^{kj}_l / d u^s = -delta^j_s w^k_l - w^j_s delta^k_l
inline ConditionResult check_gamma_gradient_tail(const detail::OpScaled& s) {
  detail::ConditionScan scan("gamma_gradient_tail");
  Polynomial den = s.gam.den * s.gam.den * s.w.den;
  for (int k = 0; k < s.n && scan.result.passed; ++k)
    for (int j = 0; j < s.n && scan.result.passed; ++j)
      for (int l = 0; l < s.n && scan.result.passed; ++l)
        for (int v = 0; v < s.n && scan.result.passed; ++v) {
          Polynomial dgam = s.gam.at(k, j, l).derivative(v) * s.gam.den -
                            s.gam.at(k, j, l) * s.gam.den.derivative(v);
          Polynomial acc = dgam * s.w.den;
          Polynomial gg = s.gam.den * s.gam.den;
          if (j == v) acc += gg * s.w.num(k, l);
          if (k == l) acc += gg * s.w.num(j, v);
          scan.observe(acc, den, {k + 1, j + 1, l + 1, v + 1});
        }
  return scan.result;
}

// The affine structure Gamma^{kj}_l = -w^k_l u^j - w^j_s u^s delta^k_l + b^{kj}_l:
// checks that the extracted b is constant in the field variables.
inline ConditionResult check_gamma_affine_structure(const FirstOrderOperator& op,
                                                    Christoffel* b_out = nullptr) {
  detail::ConditionScan scan("gamma_affine_structure");
  const int n = op.n();
  auto t = op.table();
  Christoffel b(n, t);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        RationalFunction v = op.gamma().at(k, j, l) +
                             op.tail()(k, l) * RationalFunction::var(t, t->name(j));
        if (k == l)
          for (int sidx = 0; sidx < n; ++sidx)
            v += op.tail()(j, sidx) * RationalFunction::var(t, t->name(sidx));
        b.at(k, j, l) = v;
        if (!scan.result.passed) continue;
        for (int u = 0; u < n; ++u) {
          RationalFunction d = v.derivative(u);
          if (!d.is_zero()) {
            scan.observe(d.num(), d.den(), {k + 1, j + 1, l + 1});
            break;
          }
        }
      }
  if (b_out) *b_out = std::move(b);
  return scan.result;
}

// Christoffel symbols from constant b^{ij}_k and tail w:
// Gamma^{kj}_l = -w^k_l u^j - w^j_s u^s delta^k_l + b^{kj}_l.
inline Christoffel gamma_from_bw(const Christoffel& b, const Mat<RationalFunction>& w) {
  const int n = b.n();
  auto t = b.table();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        if (b.at(i, j, k).num().has_field_vars() || b.at(i, j, k).den().has_field_vars())
          throw InputError("b constants must not contain field variables");
      if (w(i, j).num().has_field_vars() || w(i, j).den().has_field_vars())
        throw InputError("tail entries must not contain field variables");
    }
  Christoffel out(n, t);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        RationalFunction v = b.at(k, j, l);
        v -= w(k, l) * RationalFunction::var(t, t->name(j));
        if (k == l)
          for (int sidx = 0; sidx < n; ++sidx)
            v -= w(j, sidx) * RationalFunction::var(t, t->name(sidx));
        out.at(k, j, l) = std::move(v);
      }
  return out;
}

// All five Hamiltonianity conditions for a localizable first-order operator.
inline ConditionReport hamiltonian_check(const FirstOrderOperator& op,
                                         std::string subject = "hamiltonian_check") {
  detail::OpScaled s = detail::scale_operator(op);
  ConditionReport rep;
  rep.subject = std::move(subject);
  rep.conditions.push_back(check_connection_symmetry(s));
  rep.conditions.push_back(check_metric_compatibility(s));
  rep.conditions.push_back(check_tail_metric_symmetry(s));
  auto cov = detail::covariant_symbols(s);
  rep.conditions.push_back(check_tail_covariant_symmetry(s, cov));
  diffgeo::CurvatureTensor r = diffgeo::curvature(op.g(), op.gamma());
  rep.conditions.push_back(check_curvature_tail_balance(s, r));
  return rep;
}

enum class Precondition { Warn, Enforce };

// Theorem conditions for compatibility of a first-order operator with
// R_2 = eta d_x^2. The operator's own Hamiltonianity is a precondition:
// by default a failure is recorded as a warning so that partial data can
// still be diagnosed.
inline ConditionReport compat_with_R2(const FirstOrderOperator& op,
                                      const SecondOrderConstantOperator& r2,
                                      Precondition mode = Precondition::Warn,
                                      std::string subject = "compat_with_R2") {
  if (op.n() != r2.n()) throw InputError("dimension mismatch between operators");
  ConditionReport rep;
  rep.subject = std::move(subject);
  ConditionReport pre = hamiltonian_check(op);
  if (!pre.overall()) {
    if (mode == Precondition::Enforce)
      throw InputError("operator fails hamiltonian_check; rerun with warnings to diagnose");
    rep.not_hamiltonian = true;
    for (auto& c : pre.conditions)
      if (!c.passed)
        rep.warnings.push_back("not Hamiltonian: " + c.name + " fails with residual " +
                               c.residual);
  }
  detail::OpScaled s = detail::scale_operator(op);
  const SkewForm& eta = r2.eta;
  rep.conditions.push_back(check_tail_eta_symmetry(s, eta));
  rep.conditions.push_back(check_gamma_eta_cocycle(s.gam, eta, s.t));
  rep.conditions.push_back(check_gamma_eta_cyclic(s.gam, eta, s.t));
  rep.conditions.push_back(check_gamma_associativity(s.gam, s.t));
  rep.conditions.push_back(check_gamma_gradient_tail(s));
  rep.conditions.push_back(check_gamma_affine_structure(op));
  return rep;
}

// Cyclic Frobenius algebra axioms for the product with structure constants
// Gamma^{ij}_k and the pairing eta.
inline ConditionReport cf_algebra_check(const Christoffel& gamma, const SkewForm& eta,
                                        std::string subject = "cf_algebra_check") {
  if (gamma.n() != eta.n()) throw InputError("dimension mismatch");
  ConditionReport rep;
  rep.subject = std::move(subject);
  detail::ScaledChristoffel s = diffgeo::detail::scale_christoffel(gamma);
  rep.conditions.push_back(check_gamma_eta_cocycle(s, eta, gamma.table()));
  rep.conditions.push_back(check_gamma_eta_cyclic(s, eta, gamma.table()));
  rep.conditions.push_back(check_gamma_associativity(s, gamma.table()));
  return rep;
}

}  // namespace hamtrio::hamops
