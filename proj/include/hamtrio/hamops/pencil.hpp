#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamtrio/hamops/checks.hpp"

namespace hamtrio::hamops {

namespace detail {

inline Metric remap_metric(const Metric& g, const symcore::VarTablePtr& to) {
  Mat<RationalFunction> e(g.n(), g.n(), RationalFunction::zero(to));
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) e(i, j) = g(i, j).remap(to);
  return Metric(g.variance(), std::move(e));
}

inline Christoffel remap_christoffel(const Christoffel& c, const symcore::VarTablePtr& to) {
  Christoffel out(c.n(), to);
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j)
      for (int k = 0; k < c.n(); ++k) out.at(i, j, k) = c.at(i, j, k).remap(to);
  return out;
}

inline Mat<RationalFunction> remap_mat(const Mat<RationalFunction>& m,
                                       const symcore::VarTablePtr& to) {
  Mat<RationalFunction> out(m.rows(), m.cols(), RationalFunction::zero(to));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).remap(to);
  return out;
}

}  // namespace detail

inline const char* kPencilVar = "lambda";

// The formal pencil (g_P + lambda g_Q, Gamma_P + lambda Gamma_Q,
// w_P + lambda w_Q) over a table extended by the pencil variable.
inline FirstOrderOperator make_pencil(const FirstOrderOperator& p,
                                      const FirstOrderOperator& q) {
  if (p.n() != q.n()) throw InputError("pencil of operators of different dimension");
  if (p.table()->field_vars() != q.table()->field_vars())
    throw InputError("pencil operands use different field variables");
  if (p.table()->declared(kPencilVar) || q.table()->declared(kPencilVar))
    throw InputError("'lambda' is reserved for the pencil variable");
  auto merged = p.table()->extended(q.table()->params(), std::string(kPencilVar));
  RationalFunction lam = RationalFunction::var(merged, kPencilVar);

  Metric gp = detail::remap_metric(p.g(), merged);
  Metric gq = detail::remap_metric(q.g(), merged);
  Mat<RationalFunction> ge(p.n(), p.n(), RationalFunction::zero(merged));
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j) ge(i, j) = gp(i, j) + lam * gq(i, j);

  Christoffel cp = detail::remap_christoffel(p.gamma(), merged);
  Christoffel cq = detail::remap_christoffel(q.gamma(), merged);
  Christoffel ce(p.n(), merged);
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j)
      for (int k = 0; k < p.n(); ++k)
        ce.at(i, j, k) = cp.at(i, j, k) + lam * cq.at(i, j, k);

  Mat<RationalFunction> wp = detail::remap_mat(p.tail(), merged);
  Mat<RationalFunction> wq = detail::remap_mat(q.tail(), merged);
  Mat<RationalFunction> we(p.n(), p.n(), RationalFunction::zero(merged));
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j) we(i, j) = wp(i, j) + lam * wq(i, j);

  return FirstOrderOperator(Metric(Variance::Contravariant, std::move(ge)),
                            std::move(ce), std::move(we));
}

// Compatibility of two first-order operators, expressed through pencil
// Hamiltonianity: the pencil with a symbolic parameter passes every
// Hamiltonianity condition identically iff the Schouten bracket of the two
// operators vanishes (bilinearity of the bracket for this operator class).
inline ConditionReport pencil_compat(const FirstOrderOperator& p,
                                     const FirstOrderOperator& q,
                                     std::string subject = "pencil_compat") {
  FirstOrderOperator pencil = make_pencil(p, q);
  try {
    diffgeo::detail::scale_metric(pencil.g());
  } catch (const DegeneracyError&) {
    throw DegeneracyError(
        "degenerate pencil: det(g_P + lambda g_Q) vanishes identically", "0");
  }
  return hamiltonian_check(pencil, std::move(subject));
}

// Full verification of a trio (P, Q, R_2): both operators Hamiltonian, both
// compatible with R_2, and mutually compatible.
inline ConditionReport trio_verify(const FirstOrderOperator& p,
                                   const FirstOrderOperator& q,
                                   const SecondOrderConstantOperator& r) {
  if (p.n() != q.n() || p.n() != r.n())
    throw InputError("trio members have mismatched dimensions");
  ConditionReport rep;
  rep.subject = "trio_verify";
  rep.append(hamiltonian_check(p), "P.hamiltonian");
  rep.append(hamiltonian_check(q), "Q.hamiltonian");
  rep.append(compat_with_R2(p, r), "P_R2");
  rep.append(compat_with_R2(q, r), "Q_R2");
  rep.append(pencil_compat(p, q), "P_Q_pencil");
  return rep;
}

}  // namespace hamtrio::hamops
