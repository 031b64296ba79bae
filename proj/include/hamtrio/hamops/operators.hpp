#pragma once

#include <optional>
#include <string>
#include <utility>

#include "hamtrio/diffgeo/christoffel.hpp"
#include "hamtrio/diffgeo/metric.hpp"

namespace hamtrio::hamops {

using diffgeo::Christoffel;
using diffgeo::Metric;
using diffgeo::SkewForm;
using diffgeo::Variance;
using symcore::Mat;
using symcore::Polynomial;
using symcore::Rational;
using symcore::RationalFunction;
using symcore::VarTablePtr;

// First-order homogeneous operator of localizable shape:
//   g^{ij} d_x + Gamma^{ij}_k u^k_x
//     + w^i_k u^k_x d_x^{-1} u^j_x + u^i_x d_x^{-1} w^j_k u^k_x.
// The tail matrix w is constant in the field variables (it may carry
// symbolic parameters); a zero tail means the operator is local.
class FirstOrderOperator {
 public:
  FirstOrderOperator(Metric g, std::optional<Christoffel> gamma,
                     Mat<RationalFunction> tail)
      : g_(std::move(g)), gamma_(std::move(gamma)), tail_(std::move(tail)) {
    if (g_.variance() != Variance::Contravariant)
      throw InputError("operator metric must be contravariant");
    const int n = g_.n();
    if (tail_.rows() != n || tail_.cols() != n)
      throw InputError("tail matrix dimension mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (tail_(i, j).num().has_field_vars() || tail_(i, j).den().has_field_vars())
          throw InputError("tail entries must be constant in the field variables");
      }
    if (gamma_ && gamma_->n() != n)
      throw InputError("christoffel dimension mismatch");
  }

  static FirstOrderOperator local(Metric g, std::optional<Christoffel> gamma = {}) {
    int n = g.n();
    auto t = g.table();
    return FirstOrderOperator(std::move(g), std::move(gamma),
                              Mat<RationalFunction>(n, n, RationalFunction::zero(t)));
  }

  int n() const { return g_.n(); }
  const Metric& g() const { return g_; }
  const Mat<RationalFunction>& tail() const { return tail_; }
  bool gamma_is_derived() const { return !gamma_.has_value(); }
  const VarTablePtr& table() const { return g_.table(); }

  bool is_local() const {
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j)
        if (!tail_(i, j).is_zero()) return false;
    return true;
  }

  // Explicit symbols if present, else the Levi-Civita symbols of g.
  const Christoffel& gamma() const {
    if (!gamma_) gamma_.emplace(diffgeo::levi_civita(g_));
    return *gamma_;
  }

 private:
  Metric g_;
  mutable std::optional<Christoffel> gamma_;
  Mat<RationalFunction> tail_;
};

// R_2 = eta^{ij} d_x^2 with eta constant skew non-degenerate.
struct SecondOrderConstantOperator {
  SkewForm eta;
  int n() const { return eta.n(); }
};

}  // namespace hamtrio::hamops
